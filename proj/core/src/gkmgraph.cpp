#include "gkm/gkmgraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "gkm/errors.hpp"

namespace gkm {

LabeledGraph::LabeledGraph(Family family, std::size_t rank, std::size_t n_vars, std::vector<std::string> names,
                           std::vector<SignedPermutation> perms, std::vector<Edge> edges)
    : family_(family),
      rank_(rank),
      n_vars_(n_vars),
      names_(std::move(names)),
      perms_(std::move(perms)),
      edges_(std::move(edges)),
      adj_(names_.size()) {
  if (!perms_.empty() && perms_.size() != names_.size())
    throw UsageError("LabeledGraph: vertex names and permutations disagree");
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (!by_name_.emplace(names_[i], i).second) throw UsageError("LabeledGraph: duplicate vertex " + names_[i]);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.a >= ed.b || ed.b >= names_.size()) throw UsageError("LabeledGraph: bad edge endpoints");
    if (ed.label.n_vars() != n_vars_ || ed.label.is_zero()) throw UsageError("LabeledGraph: bad edge label");
    if (!by_pair_.emplace(std::make_pair(ed.a, ed.b), e).second) throw UsageError("LabeledGraph: duplicate edge");
    adj_[ed.a].emplace_back(ed.b, e);
    adj_[ed.b].emplace_back(ed.a, e);
  }
}

std::optional<std::size_t> LabeledGraph::index_of(const SignedPermutation& w) const {
  if (perms_.empty()) return std::nullopt;
  auto it = std::lower_bound(perms_.begin(), perms_.end(), w);
  if (it != perms_.end() && *it == w) return static_cast<std::size_t>(it - perms_.begin());
  // Vertex order may have been permuted; fall back to the name index.
  return index_of_name(w.to_string());
}

std::optional<std::size_t> LabeledGraph::index_of_name(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> LabeledGraph::edge_between(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  auto it = by_pair_.find({a, b});
  if (it == by_pair_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<std::string> names_of(const std::vector<SignedPermutation>& perms) {
  std::vector<std::string> names;
  names.reserve(perms.size());
  for (const auto& p : perms) names.push_back(p.to_string());
  return names;
}

// Edges w -- w*sigma for the given right multipliers, labeled canonical(w(alpha)).
GraphPtr classical(Family family, std::size_t n, std::vector<SignedPermutation> verts) {
  struct Move {
    SignedPermutation sigma;
    LinearForm root;
  };
  std::vector<Move> moves;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      std::vector<long long> d(n, 0), s(n, 0);
      d[i - 1] = 1, d[j - 1] = -1;
      s[i - 1] = 1, s[j - 1] = 1;
      moves.push_back({SignedPermutation::transposition(n, int(i), int(j)), LinearForm(d)});
      if (family != Family::A)
        moves.push_back({SignedPermutation::signed_transposition(n, int(i), int(j)), LinearForm(s)});
    }
  if (family == Family::B || family == Family::C)
    for (std::size_t i = 1; i <= n; ++i)
      moves.push_back({SignedPermutation::sign_change(n, int(i)),
                       LinearForm::basis(n, i - 1, family == Family::B ? 1 : 2)});

  std::vector<Edge> edges;
  for (std::size_t a = 0; a < verts.size(); ++a)
    for (const auto& m : moves) {
      SignedPermutation w2 = compose(verts[a], m.sigma);
      auto it = std::lower_bound(verts.begin(), verts.end(), w2);
      if (it == verts.end() || *it != w2) throw InternalError("classical graph: vertex set not closed");
      std::size_t b = static_cast<std::size_t>(it - verts.begin());
      if (a < b) edges.push_back({a, b, apply_to_form(verts[a], m.root).canonical()});
    }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  auto names = names_of(verts);
  return std::make_shared<const LabeledGraph>(family, n, n, std::move(names), std::move(verts), std::move(edges));
}

void require_rank(std::size_t n, std::size_t min, const char* what) {
  if (n < min)
    throw UsageError(std::string(what) + " requires n >= " + std::to_string(min) + ", got " + std::to_string(n));
}

}  // namespace

GraphPtr build_A(std::size_t n) {
  require_rank(n, 1, "build_A");
  return classical(Family::A, n, enumerate(GroupFamily::A, n));
}

GraphPtr build_B(std::size_t n) {
  require_rank(n, 1, "build_B");
  return classical(Family::B, n, enumerate(GroupFamily::BC, n));
}

GraphPtr build_C(std::size_t n) {
  require_rank(n, 1, "build_C");
  return classical(Family::C, n, enumerate(GroupFamily::BC, n));
}

GraphPtr build_D(std::size_t n) {
  require_rank(n, 2, "build_D");
  return classical(Family::D, n, enumerate(GroupFamily::Dplus, n));
}

GraphPtr build_D_minus(std::size_t n) {
  require_rank(n, 2, "build_D_minus");
  return classical(Family::Dminus, n, enumerate(GroupFamily::Dminus, n));
}

GraphPtr build_graph(Family family, std::size_t n) {
  switch (family) {
    case Family::A: return build_A(n);
    case Family::B: return build_B(n);
    case Family::C: return build_C(n);
    case Family::D: return build_D(n);
    case Family::Dminus: return build_D_minus(n);
    case Family::Custom: break;
  }
  throw UsageError("build_graph: custom graphs need a root list");
}

GraphPtr build_graph_allow_degenerate(Family family, std::size_t n) {
  if (n == 0 && (family == Family::A || family == Family::B || family == Family::C))
    return std::make_shared<const LabeledGraph>(family, 0, 0, std::vector<std::string>{""},
                                                std::vector<SignedPermutation>{SignedPermutation()},
                                                std::vector<Edge>{});
  if (n == 1 && (family == Family::D || family == Family::Dminus)) {
    SignedPermutation w(std::vector<int>{family == Family::D ? 1 : -1});
    return std::make_shared<const LabeledGraph>(family, 1, 1, std::vector<std::string>{w.to_string()},
                                                std::vector<SignedPermutation>{w}, std::vector<Edge>{});
  }
  return build_graph(family, n);
}

GraphPtr build_from_roots(const std::vector<LinearForm>& roots, std::size_t max_order) {
  if (roots.empty()) throw UsageError("build_from_roots: empty root list");
  const std::size_t n = roots.front().n_vars();
  std::vector<LinearForm> positive;
  std::set<LinearForm> seen;
  for (const auto& r : roots) {
    if (r.n_vars() != n || r.is_zero()) throw UsageError("build_from_roots: roots must be nonzero and of equal arity");
    if (seen.insert(r.canonical()).second) positive.push_back(r.canonical());
  }
  std::vector<OrthogonalMap> group = generate_from_reflections(positive, max_order);

  std::vector<SignedPermutation> perms;
  for (const auto& g : group) {
    auto p = g.as_signed_permutation();
    if (!p) {
      perms.clear();
      break;
    }
    perms.push_back(*p);
  }
  std::vector<std::string> names;
  if (!perms.empty()) {
    // Canonical vertex order, matching the classical builders.
    std::vector<std::size_t> order(group.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return perms[x] < perms[y]; });
    std::vector<OrthogonalMap> g2;
    std::vector<SignedPermutation> p2;
    for (std::size_t i : order) {
      g2.push_back(group[i]);
      p2.push_back(perms[i]);
    }
    group = std::move(g2);
    perms = std::move(p2);
    names = names_of(perms);
  } else {
    for (std::size_t i = 0; i < group.size(); ++i) names.push_back("g" + std::to_string(i));
  }

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < group.size(); ++i) index.emplace(group[i].key(), i);
  std::vector<OrthogonalMap> refl;
  for (const auto& r : positive) refl.push_back(OrthogonalMap::reflection(r));

  std::vector<Edge> edges;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < group.size(); ++a)
    for (std::size_t r = 0; r < positive.size(); ++r) {
      auto it = index.find((group[a] * refl[r]).key());
      if (it == index.end()) throw InternalError("build_from_roots: group not closed");
      std::size_t b = it->second;
      if (a >= b || !pairs.insert({a, b}).second) continue;
      auto label = group[a].apply(positive[r]);
      if (!label) throw UsageError("build_from_roots: w(alpha) is not integral for vertex " + names[a]);
      edges.push_back({a, b, label->canonical()});
    }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return std::make_shared<const LabeledGraph>(Family::Custom, n, n, std::move(names), std::move(perms),
                                              std::move(edges));
}

std::vector<LinearForm> parse_roots(const std::string& text) {
  std::vector<LinearForm> roots;
  std::stringstream all(text);
  std::string chunk;
  while (std::getline(all, chunk, ';')) {
    std::vector<long long> c;
    std::stringstream one(chunk);
    std::string tok;
    while (std::getline(one, tok, ',')) {
      try {
        std::size_t used = 0;
        c.push_back(std::stoll(tok, &used));
        if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw UsageError("bad root entry '" + tok + "'");
      }
    }
    if (c.empty()) continue;
    if (!roots.empty() && c.size() != roots.front().n_vars()) throw UsageError("roots of different arity");
    roots.emplace_back(std::move(c));
  }
  if (roots.empty()) throw UsageError("no roots given");
  return roots;
}

GraphPtr negate_labels(const GraphPtr& g) {
  std::vector<Edge> edges = g->edges();
  for (auto& e : edges) e.label = -e.label;
  return std::make_shared<const LabeledGraph>(g->family(), g->rank(), g->n_vars(), g->vertex_names(),
                                              g->vertices(), std::move(edges));
}

GraphPtr permute_vertices(const GraphPtr& g, const std::vector<std::size_t>& order) {
  const std::size_t nv = g->vertex_count();
  if (order.size() != nv) throw UsageError("permute_vertices: order has wrong length");
  std::vector<std::size_t> where(nv, nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (order[i] >= nv || where[order[i]] != nv) throw UsageError("permute_vertices: not a permutation");
    where[order[i]] = i;
  }
  std::vector<std::string> names;
  std::vector<SignedPermutation> perms;
  for (std::size_t i : order) {
    names.push_back(g->vertex_names()[i]);
    if (!g->vertices().empty()) perms.push_back(g->vertex(i));
  }
  std::vector<Edge> edges;
  for (const auto& e : g->edges()) {
    std::size_t a = where[e.a], b = where[e.b];
    if (a > b) std::swap(a, b);
    edges.push_back({a, b, e.label});
  }
  return std::make_shared<const LabeledGraph>(g->family(), g->rank(), g->n_vars(), std::move(names),
                                              std::move(perms), std::move(edges));
}

std::string to_dot(const LabeledGraph& g) {
  std::ostringstream out;
  out << "graph \"" << family_name(g.family()) << g.rank() << "\" {\n";
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    out << "  v" << i << " [label=\"" << g.vertex_names()[i] << "\"];\n";
  for (const auto& e : g.edges())
    out << "  v" << e.a << " -- v" << e.b << " [label=\"" << e.label.to_string() << "\"];\n";
  out << "}\n";
  return out.str();
}

nlohmann::json to_json(const LabeledGraph& g) {
  nlohmann::json j;
  j["family"] = std::string(family_name(g.family()));
  j["n"] = g.rank();
  j["n_vars"] = g.n_vars();
  nlohmann::json verts = nlohmann::json::array();
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    if (g.has_permutation_vertices())
      verts.push_back(g.vertex(i).images());
    else
      verts.push_back(g.vertex_names()[i]);
  }
  j["vertices"] = std::move(verts);
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"a", e.a}, {"b", e.b}, {"label", e.label.coefficients()}});
  j["edges"] = std::move(edges);
  return j;
}

}  // namespace gkm
