#include <doctest.h>

#include <random>

#include "gkm/errors.hpp"
#include "gkm/presentation.hpp"
#include "helpers.hpp"

using namespace gkm;

namespace {

/// Random abstract polynomial of weighted degree k in the family's generators.
Polynomial random_abstract(std::mt19937& rng, Family f, std::size_t n, unsigned k, Ring ring = Ring::Int) {
  auto monos = generator_monomials(f, n, k, GeneratorSet{});
  std::uniform_int_distribution<int> coef(-2, 2);
  std::bernoulli_distribution keep(0.4);
  Polynomial a(ring, 3 * n);
  for (const auto& m : monos)
    if (keep(rng)) a.add_term(m, Coefficient(coef(rng)));
  return a;
}

std::vector<long long> indices(const PresentationCertificate& c) {
  std::vector<long long> out;
  for (const auto& d : c.per_degree) out.push_back(d.index.infinite ? -1 : d.index.value.get_si());
  return out;
}

}  // namespace

TEST_CASE("abstract generators and weights") {
  CHECK(generator_names(2) == std::vector<std::string>{"tau1", "tau2", "t1", "t2", "f1", "f2"});
  Polynomial a = abstract_f(Ring::Int, 3, 2) * abstract_tau(Ring::Int, 3, 1);
  CHECK(weighted_degree(a, 3) == 3u);
  CHECK_FALSE(weighted_degree(a + abstract_t(Ring::Int, 3, 1), 3).has_value());
  CHECK(abstract_to_string(a, 3) == "tau1*f2");
  CHECK(f_generators(Family::B, 3) == std::vector<std::size_t>{1, 2, 3});
  CHECK(f_generators(Family::D, 3) == std::vector<std::size_t>{1, 2});
  CHECK(f_generators(Family::C, 3).empty());
}

TEST_CASE("evaluation matches the generator classes and is multiplicative") {
  auto g = build_B(2);
  CHECK(evaluate(abstract_tau(Ring::Int, 2, 2), g, Ring::Int).same_values(class_tau(g, 2)));
  CHECK(evaluate(abstract_f(Ring::Int, 2, 1), g, Ring::Int).same_values(class_f(g, 1)));
  CHECK(evaluate(abstract_t(Ring::Int, 2, 1), g, Ring::Int).same_values(class_t(g, 1)));
  std::mt19937 rng(4);
  for (auto [f, n] : std::vector<std::pair<Family, std::size_t>>{
           {Family::A, 3}, {Family::B, 2}, {Family::C, 2}, {Family::D, 3}, {Family::Dminus, 2}}) {
    auto gg = build_graph(f, n);
    for (int trial = 0; trial < 5; ++trial) {
      Polynomial a = random_abstract(rng, f, n, 1), b = random_abstract(rng, f, n, 2);
      CHECK(evaluate(a * b, gg, Ring::Int, 3).same_values(mul(evaluate(a, gg, Ring::Int, 1),
                                                               evaluate(b, gg, Ring::Int, 2))));
      CHECK(is_member(evaluate(a * b, gg, Ring::Int, 3)));
    }
  }
  CHECK_THROWS_AS(evaluate(abstract_f(Ring::Int, 3, 1), build_A(3), Ring::Int), UsageError);
  CHECK_THROWS_AS(evaluate(abstract_f(Ring::Int, 3, 3), build_D(3), Ring::Int), UsageError);
  CHECK_THROWS_AS(evaluate(abstract_tau(Ring::Int, 3, 1) + abstract_f(Ring::Int, 3, 2), build_B(3), Ring::Int),
                  UsageError);
}

TEST_CASE("relations vanish on every classical graph") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& r : verify_relations(presentation_for(Family::A, n), build_A(n))) CHECK(r.pass);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (Family f : {Family::B, Family::C}) {
      auto pres = presentation_for(f, n);
      for (const auto& r : verify_relations(pres, build_graph(f, n))) CHECK(r.pass);
    }
    if (n < 2) continue;
    for (Family f : {Family::D, Family::Dminus}) {
      auto pres = presentation_for(f, n);
      for (const auto& r : verify_relations(pres, build_graph(f, n))) CHECK(r.pass);
    }
  }
  auto b3 = presentation_for(Family::B, 3);
  CHECK(b3.relations.size() == 6);
  CHECK(presentation_for(Family::C, 2).ring == Ring::Dyadic);
}

TEST_CASE("literal f_n = 0 on the odd coset breaks the quadratic relation") {
  auto g = build_D_minus(2);
  auto pres = presentation_for(Family::Dminus, 2, DminusConvention::LiteralZero);
  bool any_fail = false;
  for (const auto& r : verify_relations(pres, g)) any_fail = any_fail || !r.pass;
  CHECK(any_fail);
  const Relation* quad = nullptr;
  for (const auto& r : pres.relations)
    if (r.name == "quadratic k=1") quad = &r;
  REQUIRE(quad);
  auto value = evaluate(quad->poly, g, Ring::Int, quad->degree);
  auto v = g->index_of(SignedPermutation({-1, 2}));
  REQUIRE(v);
  const Ring R = Ring::Int;
  CHECK(value.values[*v] == testutil::t(R, 2, 1) * testutil::t(R, 2, 2));
}

TEST_CASE("presentation certificates") {
  CHECK(verify_presentation(Family::A, 3, 4, Ring::Int).verified);
  CHECK(verify_presentation(Family::B, 2, 4, Ring::Int).verified);
  CHECK(verify_presentation(Family::D, 2, 4, Ring::Int).verified);
  CHECK(verify_presentation(Family::Dminus, 2, 4, Ring::Int).verified);
  CHECK(verify_presentation(Family::C, 2, 4, Ring::Dyadic).verified);
  auto c2 = verify_presentation(Family::C, 2, 4, Ring::Int);
  CHECK_FALSE(c2.verified);
  CHECK(indices(c2) == std::vector<long long>{1, 1, 1, 2, 8});
  auto j = c2.to_json();
  CHECK(j["K"] == 4);
  CHECK(j["per_degree"][3]["index"] == 2);
  CHECK(j["per_degree"][3]["index_two_exponent"] == 1);
  CHECK(indices(verify_presentation(Family::C, 1, 3, Ring::Int)) == std::vector<long long>{1, 1, 1, 1});
}

TEST_CASE("certificates do not depend on label signs or vertex order") {
  for (auto g : {build_A(2), build_B(1), build_C(1), build_D(2), build_C(2)}) {
    const Ring ring = Ring::Int;
    auto base = verify_presentation(g, 3, ring);
    auto neg = verify_presentation(negate_labels(g), 3, ring);
    std::vector<std::size_t> order(g->vertex_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
    auto perm = verify_presentation(permute_vertices(g, order), 3, ring);
    CHECK(indices(neg) == indices(base));
    CHECK(indices(perm) == indices(base));
    CHECK(neg.verified == base.verified);
    CHECK(perm.verified == base.verified);
  }
}

TEST_CASE("bounded monomial span checks") {
  for (unsigned k = 0; k <= 4; ++k) {
    for (std::size_t n = 1; n <= 3; ++n) CHECK(bounded_monomial_span_check(Family::A, n, k).pass);
    for (std::size_t n = 1; n <= 2; ++n) {
      CHECK(bounded_monomial_span_check(Family::C, n, k).pass);
      CHECK(bounded_monomial_span_check(Family::B, n, k).pass);
    }
    CHECK(bounded_monomial_span_check(Family::D, 2, k).pass);
  }
  auto a = bounded_monomial_span_check(Family::A, 3, 2);
  CHECK(a.ring == Ring::Int);
  CHECK(a.restricted_rank == 14);
  auto b = bounded_monomial_span_check(Family::B, 2, 2);
  CHECK(b.ring == Ring::Mod2);
  // The uncorrected caps on tau_1..tau_{n-1} only reach (2n-1)!! per t-degree.
  auto lit = bounded_monomial_span_check(Family::C, 2, 3, BoundVariant::Literal);
  CHECK_FALSE(lit.pass);
  CHECK(lit.restricted_rank == 9);
  CHECK(lit.full_rank == 16);
}

TEST_CASE("reduce: spot values") {
  auto a3 = build_A(3);
  auto c = reduce(class_t(a3, 1));
  CHECK(c.output == abstract_t(Ring::Int, 3, 1));
  CHECK(c.round_trip);
  auto a2 = build_A(2);
  auto tau = reduce(class_tau(a2, 1));
  CHECK(tau.round_trip);
  CHECK(evaluate(tau.output, a2, Ring::Int, 1).same_values(class_tau(a2, 1)));
  CHECK(reduce(zero_class(a3, 2, Ring::Int)).output.is_zero());
  CHECK(reduce(class_tau(build_C(2), 1)).output.ring() == Ring::Dyadic);
}

TEST_CASE("reduce round-trips on every basis class") {
  struct Scope {
    Family f;
    std::size_t n;
    unsigned K;
  };
  for (auto s : std::vector<Scope>{{Family::A, 2, 3},
                                   {Family::A, 3, 3},
                                   {Family::B, 1, 3},
                                   {Family::B, 2, 3},
                                   {Family::C, 1, 3},
                                   {Family::C, 2, 3},
                                   {Family::D, 2, 3},
                                   {Family::Dminus, 2, 3}}) {
    auto g = build_graph(s.f, s.n);
    for (unsigned k = 0; k <= s.K; ++k) {
      Ring ring = s.f == Family::C ? Ring::Dyadic : Ring::Int;
      for (const auto& h : graded_basis(g, k, ring).basis_classes()) {
        auto cert = reduce(h);
        CHECK(cert.round_trip);
        if (s.f == Family::A) {
          for (const auto& [m, coef] : cert.output.terms())
            for (std::size_t i = 1; i <= s.n; ++i) CHECK(m.exps[f_index(s.n, i)] == 0);
        }
      }
    }
  }
}

TEST_CASE("reduce round-trips on random generator polynomials") {
  std::mt19937 rng(99);
  for (auto [f, n] : std::vector<std::pair<Family, std::size_t>>{
           {Family::A, 3}, {Family::B, 2}, {Family::C, 2}, {Family::D, 3}, {Family::Dminus, 3}, {Family::B, 3}}) {
    auto g = build_graph(f, n);
    for (int trial = 0; trial < 6; ++trial) {
      unsigned k = 1 + trial % 3;
      auto h = evaluate(random_abstract(rng, f, n, k), g, Ring::Int, k);
      CHECK(reduce(h).round_trip);
    }
  }
}

TEST_CASE("reduce works on relabeled graphs") {
  auto g = negate_labels(build_B(2));
  for (const auto& h : graded_basis(g, 2, Ring::Int).basis_classes()) CHECK(reduce(h).round_trip);
  auto d = build_D(2);
  std::vector<std::size_t> order(d->vertex_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
  auto p = permute_vertices(d, order);
  for (const auto& h : graded_basis(p, 2, Ring::Int).basis_classes()) CHECK(reduce(h).round_trip);
}

TEST_CASE("reduce rejects non-members and too-small rings") {
  auto g = build_C(1);
  const Ring R = Ring::Int;
  auto bad = make_class(g, 1, R, {testutil::t(R, 1, 1), Polynomial(R, 1)});
  CHECK_THROWS_AS(reduce(bad), UsageError);
  CHECK_THROWS_AS(reduce(c2_counterexample(), Ring::Int), ReductionFailure);
  CHECK_THROWS_AS(reduce(class_tau(build_A(2), 1), Ring::Mod2), UsageError);
}

TEST_CASE("the C2 counterexample") {
  auto rep = c2_counterexample_report();
  CHECK(rep.member_over_int);
  CHECK(rep.equals_half_product);
  CHECK(rep.outside_int_span);
  CHECK(rep.double_inside_int_span);
  CHECK(rep.index_at_k3.value == 2);
  const Ring R = Ring::Int;
  auto t1 = testutil::t(R, 2, 1), t2 = testutil::t(R, 2, 2);
  const auto& g = *rep.h.graph;
  CHECK(rep.h.values[*g.index_of(SignedPermutation({1, -2}))] == (t2 * (t1 - t2) * (t1 + t2)).scaled(-2));
  CHECK(rep.h.values[*g.index_of(SignedPermutation({-1, -2}))] == (t2 * t2 * (t1 + t2)).scaled(2));
  CHECK(rep.h.values[*g.index_of(SignedPermutation({2, 1}))].is_zero());
  auto cert = reduce(c2_counterexample(), Ring::Dyadic);
  CHECK(cert.round_trip);
  bool has_half = false;
  for (const auto& [m, c] : cert.output.terms()) has_half = has_half || c.pow2() > 0;
  CHECK(has_half);
}

TEST_CASE("reduction certificate json") {
  auto cert = reduce(class_tau(build_B(2), 2));
  auto j = cert.to_json();
  CHECK(j["round_trip"] == true);
  CHECK(j.contains("trace"));
  CHECK_FALSE(cert.to_json(false).contains("trace"));
  CHECK(polynomial_from_json(j["output_polynomial"]) == cert.output);
}
