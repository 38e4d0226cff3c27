#include <doctest.h>

#include <set>

#include "gkm/errors.hpp"
#include "gkm/gkmgraph.hpp"

using namespace gkm;

namespace {

std::string label_between(const LabeledGraph& g, const std::string& a, const std::string& b) {
  auto ia = g.index_of(SignedPermutation::parse(a)), ib = g.index_of(SignedPermutation::parse(b));
  REQUIRE(ia);
  REQUIRE(ib);
  auto e = g.edge_between(*ia, *ib);
  if (!e) return "";
  return g.edges()[*e].label.to_string();
}

}  // namespace

TEST_CASE("regularity of the classical graphs") {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto a = build_A(n), b = build_B(n), c = build_C(n);
    for (std::size_t v = 0; v < a->vertex_count(); ++v) CHECK(a->degree(v) == n * (n - 1) / 2);
    for (std::size_t v = 0; v < b->vertex_count(); ++v) CHECK(b->degree(v) == n * n);
    for (std::size_t v = 0; v < c->vertex_count(); ++v) CHECK(c->degree(v) == n * n);
    if (n < 2) continue;
    for (auto d : {build_D(n), build_D_minus(n)})
      for (std::size_t v = 0; v < d->vertex_count(); ++v) CHECK(d->degree(v) == n * (n - 1));
  }
}

TEST_CASE("A3 edge labels of the hexagon picture") {
  auto g = build_A(3);
  CHECK(g->edges().size() == 9);
  CHECK(label_between(*g, "123", "132") == "t2-t3");
  CHECK(label_between(*g, "132", "312") == "t1-t3");
  CHECK(label_between(*g, "312", "321") == "t1-t2");
  CHECK(label_between(*g, "123", "213") == "t1-t2");
  CHECK(label_between(*g, "123", "321") == "t1-t3");
  CHECK(label_between(*g, "123", "312").empty());
}

TEST_CASE("labels are w(alpha) up to sign") {
  for (auto g : {build_B(2), build_C(3), build_D(3), build_D_minus(3)}) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : g->edges()) {
      const auto& w = g->vertex(e.a);
      const auto& v = g->vertex(e.b);
      // w^{-1} v is the reflection in w^{-1}(label), a root of the family
      auto r = compose(w.inverse(), v);
      LinearForm alpha = apply_to_form(w.inverse(), e.label);
      auto roots = root_system(g->family() == Family::Dminus ? Family::D : g->family(), g->rank());
      CHECK(std::find(roots.begin(), roots.end(), alpha) != roots.end());
      CHECK(OrthogonalMap::reflection(alpha).as_signed_permutation() == r);
      CHECK(e.label.canonical() == e.label);
      CHECK(seen.insert({e.a, e.b}).second);
    }
  }
}

TEST_CASE("rank one graphs") {
  auto c1 = build_C(1);
  REQUIRE(c1->edges().size() == 1);
  CHECK(c1->edges()[0].label.to_string() == "2t1");
  auto b1 = build_B(1);
  CHECK(b1->edges()[0].label.to_string() == "t1");
  CHECK(build_A(1)->vertex_count() == 1);
  CHECK_THROWS_AS(build_D(1), UsageError);
  CHECK_THROWS_AS(build_graph(Family::Custom, 2), UsageError);
}

TEST_CASE("degenerate restriction targets") {
  auto a0 = build_graph_allow_degenerate(Family::A, 0);
  CHECK(a0->vertex_count() == 1);
  CHECK(a0->n_vars() == 0);
  auto d1 = build_graph_allow_degenerate(Family::D, 1);
  CHECK(d1->vertex(0).images() == std::vector<int>{1});
  auto dm1 = build_graph_allow_degenerate(Family::Dminus, 1);
  CHECK(dm1->vertex(0).images() == std::vector<int>{-1});
}

TEST_CASE("custom roots reproduce the classical graphs") {
  auto g = build_from_roots(parse_roots("1,-1,0;0,1,-1;1,0,-1"));
  auto a = build_A(3);
  CHECK(g->family() == Family::Custom);
  REQUIRE(g->vertex_count() == a->vertex_count());
  CHECK(g->edges() == a->edges());
  auto c = build_from_roots(parse_roots("2,0;0,2;1,1;1,-1"));
  CHECK(c->edges() == build_C(2)->edges());
  CHECK_THROWS_AS(parse_roots("1,x"), UsageError);
  CHECK_THROWS_AS(parse_roots("1,0;1"), UsageError);
  // Orthogonal roots that are not signed-permutation reflections.
  auto odd = build_from_roots(parse_roots("1,2;2,-1"));
  CHECK(odd->vertex_count() == 4);
  CHECK_FALSE(odd->has_permutation_vertices());
  CHECK(odd->vertex_names()[0] == "g0");
  // The reflections in t1 and t1+t2+t3 generate an infinite group.
  CHECK_THROWS_AS(build_from_roots(parse_roots("1,1,1;1,0,0"), 500), ResourceError);
}

TEST_CASE("negation and vertex permutation") {
  auto g = build_B(2);
  auto n = negate_labels(g);
  for (std::size_t e = 0; e < g->edges().size(); ++e) CHECK(n->edges()[e].label == -g->edges()[e].label);
  std::vector<std::size_t> order(g->vertex_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
  auto p = permute_vertices(g, order);
  CHECK(p->vertex(0) == g->vertex(order[0]));
  CHECK(p->edges().size() == g->edges().size());
  for (const auto& e : g->edges()) {
    auto a = p->index_of(g->vertex(e.a)), b = p->index_of(g->vertex(e.b));
    REQUIRE(a);
    REQUIRE(b);
    auto pe = p->edge_between(*a, *b);
    REQUIRE(pe);
    CHECK(p->edges()[*pe].label == e.label);
  }
}

TEST_CASE("serialization is deterministic") {
  auto g = build_A(3);
  std::string dot = to_dot(*g);
  CHECK(dot == to_dot(*build_A(3)));
  CHECK(dot.find("t2-t3") != std::string::npos);
  auto j = to_json(*g);
  CHECK(j["vertices"].size() == 6);
  CHECK(j["edges"].size() == 9);
  CHECK(j["family"] == "A");
}
