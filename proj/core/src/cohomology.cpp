#include "gkm/cohomology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gkm/errors.hpp"

namespace gkm {

// ---------------------------------------------------------------------------
// Classes

bool CohomologyClass::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const Polynomial& p) { return p.is_zero(); });
}

bool CohomologyClass::same_values(const CohomologyClass& other) const {
  return graph == other.graph && k == other.k && ring == other.ring && values == other.values;
}

CohomologyClass make_class(GraphPtr graph, unsigned k, Ring ring, std::vector<Polynomial> values) {
  if (!graph) throw UsageError("class without a graph");
  if (values.size() != graph->vertex_count()) throw UsageError("class needs one value per vertex");
  for (const auto& p : values) {
    if (p.ring() != ring) throw UsageError("class value has the wrong coefficient ring");
    if (p.n_vars() != graph->n_vars()) throw UsageError("class value has the wrong number of variables");
    if (!p.is_homogeneous(k)) throw UsageError("class value is not homogeneous of degree " + std::to_string(k));
  }
  CohomologyClass h;
  h.graph = std::move(graph);
  h.k = k;
  h.ring = ring;
  h.values = std::move(values);
  return h;
}

CohomologyClass zero_class(GraphPtr graph, unsigned k, Ring ring) {
  std::vector<Polynomial> v(graph->vertex_count(), Polynomial(ring, graph->n_vars()));
  auto h = make_class(std::move(graph), k, ring, std::move(v));
  h.verified_member = true;
  return h;
}

namespace {

void check_same_graph(const CohomologyClass& a, const CohomologyClass& b) {
  if (a.graph != b.graph) throw UsageError("classes live on different graphs");
  if (a.ring != b.ring) throw UsageError("classes have different coefficient rings");
}

}  // namespace

CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b) {
  check_same_graph(a, b);
  if (a.k != b.k) throw UsageError("adding classes of different degree");
  CohomologyClass r = a;
  for (std::size_t v = 0; v < r.values.size(); ++v) r.values[v] += b.values[v];
  r.verified_member = a.verified_member && b.verified_member;
  return r;
}

CohomologyClass sub(const CohomologyClass& a, const CohomologyClass& b) {
  check_same_graph(a, b);
  if (a.k != b.k) throw UsageError("subtracting classes of different degree");
  CohomologyClass r = a;
  for (std::size_t v = 0; v < r.values.size(); ++v) r.values[v] -= b.values[v];
  r.verified_member = a.verified_member && b.verified_member;
  return r;
}

CohomologyClass mul(const CohomologyClass& a, const CohomologyClass& b) {
  check_same_graph(a, b);
  CohomologyClass r = a;
  r.k = a.k + b.k;
  for (std::size_t v = 0; v < r.values.size(); ++v) r.values[v] = mul(a.values[v], b.values[v]);
  r.verified_member = a.verified_member && b.verified_member;
  return r;
}

CohomologyClass scaled(const CohomologyClass& a, const Coefficient& c) {
  CohomologyClass r = a;
  for (auto& p : r.values) p = p.scaled(c);
  return r;
}

CohomologyClass to_ring(const CohomologyClass& a, Ring ring) {
  CohomologyClass r = a;
  r.ring = ring;
  for (auto& p : r.values) p = p.to_ring(ring);
  // Membership over Int implies membership over the other rings.
  r.verified_member = a.verified_member && (a.ring == ring || a.ring == Ring::Int);
  return r;
}

namespace {

Polynomial t_var(Ring ring, std::size_t n_vars, int signed_index) {
  std::size_t i = static_cast<std::size_t>(std::abs(signed_index)) - 1;
  Polynomial p = Polynomial::variable(ring, n_vars, i);
  return signed_index > 0 ? p : -p;
}

void require_permutation_graph(const GraphPtr& g, const char* what) {
  if (!g->has_permutation_vertices())
    throw UsageError(std::string(what) + " needs a graph whose vertices are signed permutations");
}

// e_i(tau)(w) - e_i(t) over Int.
Polynomial e_tau_minus_e_t(const LabeledGraph& g, std::size_t v, std::size_t i) {
  const std::size_t n = g.n_vars();
  std::vector<Polynomial> tau, t;
  for (std::size_t j = 1; j <= g.rank(); ++j) {
    tau.push_back(t_var(Ring::Int, n, g.vertex(v)(static_cast<int>(j))));
    t.push_back(Polynomial::variable(Ring::Int, n, j - 1));
  }
  return elementary_symmetric(static_cast<int>(i), tau, Ring::Int, n) -
         elementary_symmetric(static_cast<int>(i), t, Ring::Int, n);
}

Polynomial halve_exactly(const Polynomial& p, const char* what) {
  Polynomial r(Ring::Int, p.n_vars());
  for (const auto& [m, c] : p.terms()) {
    if (mpz_odd_p(c.numerator().get_mpz_t())) throw InternalError(std::string(what) + ": value is not even");
    mpz_class h = c.numerator() / 2;
    r.add_term(m, Coefficient(h));
  }
  return r;
}

}  // namespace

CohomologyClass class_t(const GraphPtr& g, std::size_t i, Ring ring) {
  if (i < 1 || i > g->n_vars()) throw UsageError("class_t: index out of range");
  std::vector<Polynomial> v(g->vertex_count(), Polynomial::variable(ring, g->n_vars(), i - 1));
  auto h = make_class(g, 1, ring, std::move(v));
  return require_member(std::move(h));
}

CohomologyClass class_tau(const GraphPtr& g, std::size_t i, Ring ring) {
  require_permutation_graph(g, "class_tau");
  if (i < 1 || i > g->rank()) throw UsageError("class_tau: index out of range");
  std::vector<Polynomial> v;
  v.reserve(g->vertex_count());
  for (std::size_t w = 0; w < g->vertex_count(); ++w)
    v.push_back(t_var(ring, g->n_vars(), g->vertex(w)(static_cast<int>(i))));
  return require_member(make_class(g, 1, ring, std::move(v)));
}

CohomologyClass class_f(const GraphPtr& g, std::size_t i, Ring ring) {
  require_permutation_graph(g, "class_f");
  Family f = g->family();
  if (f != Family::B && f != Family::D && f != Family::Dminus)
    throw UsageError("class_f: defined on B, D and Dminus graphs only");
  if (i < 1 || i > g->rank()) throw UsageError("class_f: index out of range");
  std::vector<Polynomial> v;
  v.reserve(g->vertex_count());
  for (std::size_t w = 0; w < g->vertex_count(); ++w)
    v.push_back(halve_exactly(e_tau_minus_e_t(*g, w, i), "class_f").to_ring(ring));
  return require_member(make_class(g, static_cast<unsigned>(i), ring, std::move(v)));
}

CohomologyClass class_P(const GraphPtr& g, Ring ring) {
  require_permutation_graph(g, "class_P");
  if (g->family() != Family::D && g->family() != Family::Dminus)
    throw UsageError("class_P: defined on D and Dminus graphs only");
  const std::size_t n = g->rank();
  if (n < 2) throw UsageError("class_P: needs n >= 2");
  const std::size_t nv = g->n_vars();
  const Polynomial tn = Polynomial::variable(Ring::Int, nv, n - 1);

  std::vector<CohomologyClass> fs;
  for (std::size_t k = 1; k < n; ++k) fs.push_back(class_f(g, k, Ring::Int));
  Polynomial prod_t(Ring::Int, nv);
  if (g->family() == Family::Dminus) {
    prod_t = Polynomial::constant(Ring::Int, nv, 1);
    for (std::size_t j = 0; j + 1 < n; ++j) prod_t = prod_t * Polynomial::variable(Ring::Int, nv, j);
  }

  std::vector<Polynomial> values;
  for (std::size_t w = 0; w < g->vertex_count(); ++w) {
    Polynomial rhs = prod_t;
    for (std::size_t k = 1; k < n; ++k) {
      Polynomial term = fs[k - 1].values[w] * tn.pow(static_cast<unsigned>(n - 1 - k));
      if ((n - 1 - k) % 2) term = -term;
      rhs += term;
    }
    Polynomial prod = Polynomial::constant(Ring::Int, nv, 1);
    for (std::size_t k = 1; k <= n; ++k) prod = prod * (t_var(Ring::Int, nv, g->vertex(w)(static_cast<int>(k))) - tn);
    auto lhs = divide_exact_by_linear(prod, LinearForm::basis(nv, n - 1, 2));
    if (!lhs || -*lhs != rhs) throw InternalError("class_P: the two formulas disagree at " + g->vertex_names()[w]);
    values.push_back(rhs.to_ring(ring));
  }
  return require_member(make_class(g, static_cast<unsigned>(n - 1), ring, std::move(values)));
}

std::optional<std::size_t> first_violation(const CohomologyClass& h) {
  const auto& edges = h.graph->edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    Polynomial d = h.values[edges[e].a] - h.values[edges[e].b];
    if (d.is_zero()) continue;
    if (!divide_exact_by_linear(d, edges[e].label)) return e;
  }
  return std::nullopt;
}

bool is_member(const CohomologyClass& h) { return !first_violation(h).has_value(); }

CohomologyClass require_member(CohomologyClass h) {
  if (auto e = first_violation(h)) {
    const Edge& ed = h.graph->edges()[*e];
    throw UsageError("not a graph-cohomology class: label " + ed.label.to_string() + " does not divide the difference on edge {" +
                     h.graph->vertex_names()[ed.a] + "} -- {" + h.graph->vertex_names()[ed.b] + "}");
  }
  h.verified_member = true;
  return h;
}

nlohmann::json to_json(const CohomologyClass& h) {
  nlohmann::json j;
  j["family"] = std::string(family_name(h.graph->family()));
  j["n"] = h.graph->rank();
  j["degree"] = 2 * h.k;
  j["ring"] = std::string(ring_name(h.ring));
  nlohmann::json values = nlohmann::json::object();
  for (std::size_t v = 0; v < h.values.size(); ++v) values[h.graph->vertex_names()[v]] = to_json(h.values[v]);
  j["values"] = std::move(values);
  return j;
}

CohomologyClass class_from_json(const nlohmann::json& j, const GraphPtr& g) {
  try {
    const long degree = j.at("degree").get<long>();
    if (degree < 0 || degree % 2) throw UsageError("class degree must be even and nonnegative");
    const unsigned k = static_cast<unsigned>(degree / 2);
    const Ring ring = parse_ring(j.at("ring").get<std::string>());
    std::vector<std::optional<Polynomial>> slots(g->vertex_count());
    for (const auto& [key, value] : j.at("values").items()) {
      std::optional<std::size_t> idx = g->index_of_name(key);
      if (!idx && g->has_permutation_vertices()) idx = g->index_of(SignedPermutation::parse(key));
      if (!idx) throw UsageError("class refers to unknown vertex '" + key + "'");
      Polynomial p = polynomial_from_json(value);
      if (p.ring() != ring) p = p.to_ring(ring);
      slots[*idx] = std::move(p);
    }
    std::vector<Polynomial> values;
    for (std::size_t v = 0; v < slots.size(); ++v) {
      if (!slots[v]) throw UsageError("class has no value at vertex '" + g->vertex_names()[v] + "'");
      values.push_back(std::move(*slots[v]));
    }
    return make_class(g, k, ring, std::move(values));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed class JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Graded pieces

std::vector<mpz_class> class_coordinates(const CohomologyClass& h, const std::vector<Monomial>& monomials,
                                         unsigned* pow2) {
  const std::size_t m = monomials.size();
  std::map<Monomial, std::size_t, GradedLexGreater> pos;
  for (std::size_t i = 0; i < m; ++i) pos.emplace(monomials[i], i);
  unsigned shift = 0;
  for (const auto& p : h.values)
    for (const auto& [mono, c] : p.terms()) shift = std::max(shift, c.pow2());
  std::vector<mpz_class> x(h.values.size() * m);
  for (std::size_t v = 0; v < h.values.size(); ++v)
    for (const auto& [mono, c] : h.values[v].terms()) {
      auto it = pos.find(mono);
      if (it == pos.end()) throw UsageError("class value has a monomial outside the coordinate basis");
      mpz_class num = c.numerator();
      mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), shift - c.pow2());
      x[v * m + it->second] = num;
    }
  if (pow2)
    *pow2 = shift;
  else if (shift)
    throw UsageError("class has non-integral coefficients");
  return x;
}

CohomologyClass class_from_coordinates(const GraphPtr& g, unsigned k, Ring ring,
                                       const std::vector<Monomial>& monomials, std::span<const mpz_class> x) {
  const std::size_t m = monomials.size();
  std::vector<Polynomial> values;
  for (std::size_t v = 0; v < g->vertex_count(); ++v) {
    Polynomial p(ring, g->n_vars());
    for (std::size_t i = 0; i < m; ++i)
      if (x[v * m + i] != 0) p.add_term(monomials[i], Coefficient::normalized(ring, x[v * m + i]));
    values.push_back(std::move(p));
  }
  return make_class(g, k, ring, std::move(values));
}

std::vector<CohomologyClass> GradedPiece::basis_classes() const {
  std::vector<CohomologyClass> out;
  IntMatrix b = ring == Ring::Mod2 ? space.basis() : lattice.basis();
  for (std::size_t r = 0; r < b.rows(); ++r) {
    auto h = class_from_coordinates(graph, k, ring, monomials, b.row(r));
    h.verified_member = false;
    out.push_back(std::move(h));
  }
  return out;
}

bool GradedPiece::contains(const CohomologyClass& h) const {
  if (h.graph != graph) throw UsageError("class lives on a different graph");
  if (h.k != k) return h.is_zero();
  if (ring == Ring::Mod2) {
    auto x = class_coordinates(to_ring(h, Ring::Mod2), monomials);
    return space.contains(x);
  }
  unsigned shift = 0;
  auto x = class_coordinates(h, monomials, &shift);
  if (shift && ring == Ring::Int) return false;
  return lattice.contains(x);
}

nlohmann::json GradedPiece::to_json() const {
  nlohmann::json j;
  j["family"] = std::string(family_name(graph->family()));
  j["n"] = graph->rank();
  j["degree"] = 2 * k;
  j["ring"] = std::string(ring_name(ring));
  j["rank"] = rank();
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& h : basis_classes()) basis.push_back(gkm::to_json(h));
  j["basis"] = std::move(basis);
  return j;
}

namespace {

struct MonomialIndex {
  std::vector<Monomial> upper;  // degree k
  std::vector<Monomial> lower;  // degree k-1
  std::map<Monomial, std::size_t, GradedLexGreater> pos;
};

MonomialIndex index_monomials(std::size_t n_vars, unsigned k) {
  MonomialIndex mi;
  mi.upper = monomials_of_degree(n_vars, k);
  if (k > 0) mi.lower = monomials_of_degree(n_vars, k - 1);
  for (std::size_t i = 0; i < mi.upper.size(); ++i) mi.pos.emplace(mi.upper[i], i);
  return mi;
}

// Matrix of Sym^{k-1} -> Sym^k, g -> label * g, in the monomial bases.
IntMatrix multiplication_matrix(const LinearForm& label, const MonomialIndex& mi) {
  IntMatrix m(mi.upper.size(), mi.lower.size());
  for (std::size_t c = 0; c < mi.lower.size(); ++c)
    for (std::size_t j = 0; j < label.n_vars(); ++j) {
      if (label[j] == 0) continue;
      Monomial up = mi.lower[c];
      up.exps[j] += 1;
      m(mi.pos.at(up), c) += static_cast<long>(label[j]);
    }
  return m;
}

// Rows u with the constraint u . d == 0 (modulus 0) or u . d == 0 mod modulus,
// describing d in the image of the multiplication map.
struct ImageConstraints {
  IntMatrix rows;
  std::vector<mpz_class> moduli;
};

ImageConstraints image_constraints(const LinearForm& label, const MonomialIndex& mi) {
  IntMatrix mm = multiplication_matrix(label, mi);
  ImageConstraints ic{IntMatrix(0, mi.upper.size()), {}};
  if (mi.lower.empty()) {
    ic.rows = IntMatrix::identity(mi.upper.size());
    ic.moduli.assign(mi.upper.size(), 0);
    return ic;
  }
  SmithResult snf = smith_normal_form(mm);
  for (std::size_t i = 0; i < mi.upper.size(); ++i) {
    mpz_class d = i < snf.diag.size() ? snf.diag[i] : mpz_class(0);
    if (d == 1) continue;
    ic.rows.append_row(snf.u.row(i));
    ic.moduli.push_back(d);
  }
  return ic;
}

void check_columns(std::size_t cols, const BasisOptions& opts) {
  if (cols > opts.max_columns)
    throw ResourceError("graded piece needs " + std::to_string(cols) + " columns, cap is " +
                        std::to_string(opts.max_columns));
}

Lattice project_first(const Lattice& l, std::size_t count) {
  std::vector<std::size_t> coords(count);
  for (std::size_t i = 0; i < count; ++i) coords[i] = i;
  return project_lattice(l, coords);
}

F2Space project_first(const F2Space& s, std::size_t count) {
  IntMatrix b = s.basis();
  IntMatrix p(b.rows(), count);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < count; ++c) p(r, c) = b(r, c);
  return F2Space::from_generators(p);
}

Lattice solve_reduced_int(const LabeledGraph& g, const MonomialIndex& mi, const BasisOptions& opts) {
  const std::size_t m = mi.upper.size();
  const std::size_t X = g.vertex_count() * m;
  std::map<LinearForm, ImageConstraints> cache;
  std::size_t aux = 0;
  for (const auto& e : g.edges()) {
    auto it = cache.find(e.label);
    if (it == cache.end()) it = cache.emplace(e.label, image_constraints(e.label, mi)).first;
    for (const auto& d : it->second.moduli)
      if (d != 0) ++aux;
  }
  check_columns(X + aux, opts);
  IntMatrix c(0, X + aux);
  std::vector<mpz_class> row(X + aux);
  std::size_t next_aux = X;
  for (const auto& e : g.edges()) {
    const ImageConstraints& ic = cache.at(e.label);
    for (std::size_t i = 0; i < ic.rows.rows(); ++i) {
      std::fill(row.begin(), row.end(), mpz_class(0));
      for (std::size_t j = 0; j < m; ++j) {
        row[e.a * m + j] = ic.rows(i, j);
        row[e.b * m + j] = -ic.rows(i, j);
      }
      if (ic.moduli[i] != 0) row[next_aux++] = -ic.moduli[i];
      c.append_row(row);
    }
  }
  if (c.rows() == 0) return Lattice::full(X);
  return project_first(kernel_basis(c), X);
}

Lattice solve_witness_int(const LabeledGraph& g, const MonomialIndex& mi, const BasisOptions& opts) {
  const std::size_t m = mi.upper.size(), ml = mi.lower.size();
  const std::size_t X = g.vertex_count() * m;
  const std::size_t cols = X + g.edges().size() * ml;
  check_columns(cols, opts);
  IntMatrix c(g.edges().size() * m, cols);
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& ed = g.edges()[e];
    IntMatrix mm = multiplication_matrix(ed.label, mi);
    for (std::size_t r = 0; r < m; ++r) {
      std::size_t row = e * m + r;
      c(row, ed.a * m + r) = 1;
      c(row, ed.b * m + r) = -1;
      for (std::size_t j = 0; j < ml; ++j) c(row, X + e * ml + j) = -mm(r, j);
    }
  }
  if (c.rows() == 0) return Lattice::full(X);
  return project_first(kernel_basis(c), X);
}

F2Space solve_mod2(const LabeledGraph& g, const MonomialIndex& mi, const BasisOptions& opts) {
  const std::size_t m = mi.upper.size(), ml = mi.lower.size();
  const std::size_t X = g.vertex_count() * m;
  if (opts.method == BasisMethod::Witness) {
    const std::size_t cols = X + g.edges().size() * ml;
    check_columns(cols, opts);
    IntMatrix c(g.edges().size() * m, cols);
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      const Edge& ed = g.edges()[e];
      IntMatrix mm = multiplication_matrix(ed.label, mi);
      for (std::size_t r = 0; r < m; ++r) {
        std::size_t row = e * m + r;
        c(row, ed.a * m + r) = 1;
        c(row, ed.b * m + r) = 1;
        for (std::size_t j = 0; j < ml; ++j) c(row, X + e * ml + j) = mm(r, j);
      }
    }
    return project_first(f2_kernel(c), X);
  }
  check_columns(X, opts);
  // Annihilator of the image mod 2, once per label.
  std::map<LinearForm, IntMatrix> cache;
  IntMatrix c(0, X);
  std::vector<mpz_class> row(X);
  for (const auto& e : g.edges()) {
    auto it = cache.find(e.label);
    if (it == cache.end()) {
      IntMatrix ann = ml ? f2_kernel(multiplication_matrix(e.label, mi).transposed()).basis() : IntMatrix::identity(m);
      it = cache.emplace(e.label, std::move(ann)).first;
    }
    const IntMatrix& ann = it->second;
    for (std::size_t i = 0; i < ann.rows(); ++i) {
      std::fill(row.begin(), row.end(), mpz_class(0));
      for (std::size_t j = 0; j < m; ++j) {
        row[e.a * m + j] = ann(i, j);
        row[e.b * m + j] = ann(i, j);
      }
      c.append_row(row);
    }
  }
  if (c.rows() == 0) return F2Space::from_generators(IntMatrix::identity(X));
  return f2_kernel(c);
}

}  // namespace

GradedPiece graded_basis(const GraphPtr& g, unsigned k, Ring ring, const BasisOptions& opts) {
  GradedPiece piece;
  piece.graph = g;
  piece.k = k;
  piece.ring = ring;
  MonomialIndex mi = index_monomials(g->n_vars(), k);
  piece.monomials = mi.upper;
  const std::size_t X = g->vertex_count() * mi.upper.size();
  piece.lattice = Lattice(X);
  piece.space = F2Space(X);
  if (X == 0) return piece;
  if (ring == Ring::Mod2) {
    piece.space = solve_mod2(*g, mi, opts);
    return piece;
  }
  Lattice l = opts.method == BasisMethod::Witness ? solve_witness_int(*g, mi, opts) : solve_reduced_int(*g, mi, opts);
  piece.lattice = ring == Ring::Dyadic ? saturate_at_2(l) : std::move(l);
  return piece;
}

// ---------------------------------------------------------------------------
// Hilbert series

std::string HilbertSeries::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(d[i]);
  }
  return s;
}

HilbertSeries hilbert_computed(const GraphPtr& g, unsigned K, Ring ring, const BasisOptions& opts) {
  HilbertSeries h;
  for (unsigned k = 0; k <= K; ++k) h.d.push_back(static_cast<long long>(graded_basis(g, k, ring, opts).rank()));
  return h;
}

HilbertSeries hilbert_closed_form(Family family, std::size_t n, unsigned K) {
  if (n == 0) throw UsageError("hilbert_closed_form: n must be positive");
  // Numerator as a polynomial in u, truncated at u^K.
  std::vector<long long> num(K + 1, 0);
  num[0] = 1;
  auto times_one_minus = [&](std::size_t e) {
    for (std::size_t i = K + 1; i-- > e;) num[i] -= num[i - e];
  };
  switch (family) {
    case Family::A:
      for (std::size_t i = 1; i <= n; ++i) times_one_minus(i);
      break;
    case Family::B:
    case Family::C:
      for (std::size_t i = 1; i <= n; ++i) times_one_minus(2 * i);
      break;
    case Family::D:
    case Family::Dminus:
      if (n < 2) throw UsageError("hilbert_closed_form: D needs n >= 2");
      times_one_minus(n);
      for (std::size_t i = 1; i < n; ++i) times_one_minus(2 * i);
      break;
    case Family::Custom:
      throw UsageError("hilbert_closed_form: no closed form for custom graphs");
  }
  // 1/(1-u)^{2n}: coefficient of u^j is C(j + 2n - 1, 2n - 1).
  const std::size_t r = 2 * n;
  std::vector<long long> inv(K + 1);
  for (std::size_t j = 0; j <= K; ++j) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), j + r - 1, r - 1);
    inv[j] = c.get_si();
  }
  HilbertSeries h;
  for (std::size_t k = 0; k <= K; ++k) {
    long long s = 0;
    for (std::size_t i = 0; i <= k; ++i) s += num[i] * inv[k - i];
    h.d.push_back(s);
  }
  return h;
}

HilbertSeries hilbert_recurrence_A(std::size_t n, unsigned K) {
  if (n == 0) throw UsageError("hilbert_recurrence_A: n must be positive");
  std::vector<long long> prev(K + 2, 1);  // d_1
  for (std::size_t m = 2; m <= n; ++m) {
    std::vector<long long> cur(K + 2, 0);
    for (std::size_t k = 0; k <= K + 1; ++k) {
      std::size_t qmax = std::min(k + 1, m);
      for (std::size_t q = 1; q <= qmax; ++q)
        for (std::size_t r = 0; r + q <= k + 1; ++r) cur[k] += r < prev.size() ? prev[r] : 0;
    }
    prev = std::move(cur);
  }
  prev.resize(K + 1);
  return HilbertSeries{prev};
}

HilbertSeries hilbert_recurrence_A_consolidated(std::size_t n, unsigned K) {
  if (n == 0) throw UsageError("hilbert_recurrence_A_consolidated: n must be positive");
  std::vector<long long> prev(K + 2, 1);
  for (std::size_t m = 2; m <= n; ++m) {
    std::vector<long long> cur(K + 2, 0);
    auto d = [&](long long idx) -> long long { return idx < 0 ? 0 : prev[static_cast<std::size_t>(idx)]; };
    for (std::size_t k = 0; k <= K + 1; ++k) {
      const long long kk = static_cast<long long>(k);
      const long long mm = static_cast<long long>(m);
      for (long long i = 1; i <= mm; ++i) cur[k] += i * d(kk + 1 - i);
      if (kk >= mm)
        for (long long i = mm + 1; i <= kk + 1; ++i) cur[k] += mm * d(kk + 1 - i);
    }
    prev = std::move(cur);
  }
  prev.resize(K + 1);
  return HilbertSeries{prev};
}

// ---------------------------------------------------------------------------
// Restriction

Family restricted_family(Family f, int sign) {
  switch (f) {
    case Family::A:
    case Family::B:
    case Family::C: return f;
    case Family::D: return sign > 0 ? Family::D : Family::Dminus;
    case Family::Dminus: return sign > 0 ? Family::Dminus : Family::D;
    case Family::Custom: break;
  }
  throw UsageError("restriction is defined for the classical families only");
}

Restriction make_restriction(const GraphPtr& big, std::size_t q, int sign) {
  const std::size_t n = big->rank();
  if (big->family() == Family::Custom) throw UsageError("restriction is defined for the classical families only");
  if (n == 0 || q < 1 || q > n) throw UsageError("restriction: position out of range");
  if (sign != 1 && sign != -1) throw UsageError("restriction: sign must be +1 or -1");
  if (sign < 0 && big->family() == Family::A) throw UsageError("restriction: type A has no negative selector");
  if ((big->family() == Family::D || big->family() == Family::Dminus) && n < 2)
    throw UsageError("restriction: D needs n >= 2");
  Restriction r;
  r.big = big;
  r.q = q;
  r.sign = sign;
  r.small = build_graph_allow_degenerate(restricted_family(big->family(), sign), n - 1);
  for (std::size_t j = 1; j < n; ++j) r.position_map.push_back(j < q ? j : j + 1);
  for (std::size_t v = 0; v < r.small->vertex_count(); ++v) {
    std::vector<int> img = r.small->vertex(v).images();
    img.insert(img.begin() + static_cast<std::ptrdiff_t>(q - 1), sign * static_cast<int>(n));
    auto idx = big->index_of(SignedPermutation(img));
    if (!idx) throw InternalError("restriction: lifted vertex missing from the big graph");
    r.to_big.push_back(*idx);
  }
  return r;
}

RestrictedClass restrict_to_subgraph(const CohomologyClass& h, std::size_t q, int sign) {
  RestrictedClass rc{make_restriction(h.graph, q, sign), {}};
  const std::size_t n = h.graph->n_vars();
  std::vector<std::vector<Polynomial>> slice_values(h.k + 1);
  for (std::size_t sv = 0; sv < rc.data.to_big.size(); ++sv) {
    auto parts = expand_in_variable(h.values[rc.data.to_big[sv]], n - 1);
    for (unsigned r = 0; r <= h.k; ++r) {
      Polynomial p = r < parts.size() ? parts[r] : Polynomial(h.ring, n);
      slice_values[r].push_back(drop_variable(p, n - 1));
    }
  }
  for (unsigned r = 0; r <= h.k; ++r)
    rc.slices.push_back(make_class(rc.data.small, h.k - r, h.ring, std::move(slice_values[r])));
  return rc;
}

namespace {

Polynomial embed(const Polynomial& p, std::size_t target_vars) {
  std::vector<std::size_t> idx(p.n_vars());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return remap_variables(p, target_vars, idx);
}

}  // namespace

std::vector<Polynomial> transform_f_across_restriction(const Restriction& r, std::size_t i, FDirection dir) {
  const GraphPtr& big = r.big;
  const GraphPtr& small = r.small;
  const std::size_t n = big->rank();
  const std::size_t nv = big->n_vars();
  const Ring ring = Ring::Int;
  const Polynomial tn = Polynomial::variable(ring, nv, n - 1);
  const std::size_t top_limit = dir == FDirection::TopToSmall ? n - 1 : n;
  if (i < 1 || i > top_limit) throw UsageError("transform_f_across_restriction: index out of range");

  // e_j(t_1..t_{n-1}) in the big variables.
  std::vector<Polynomial> tprime;
  for (std::size_t j = 0; j + 1 < n; ++j) tprime.push_back(Polynomial::variable(ring, nv, j));
  std::vector<Polynomial> et = elementary_symmetric_all(tprime, ring, nv);
  auto e_small = [&](std::size_t j) { return j < et.size() ? et[j] : Polynomial(ring, nv); };

  // f classes: big f_1..f_n, small f'_1..f'_{n-1}; f_0 = f'_0 = 0.
  std::vector<std::vector<Polynomial>> fbig(n + 1), fsmall(n + 1);
  for (std::size_t j = 1; j <= n; ++j) fbig[j] = class_f(big, j).values;
  for (std::size_t j = 1; j < n; ++j)
    for (const auto& p : class_f(small, j).values) fsmall[j].push_back(embed(p, nv));
  auto f_at = [&](const std::vector<std::vector<Polynomial>>& fs, std::size_t j,
                  std::size_t v) -> Polynomial {
    if (j == 0 || j >= fs.size() || fs[j].empty()) return Polynomial(ring, nv);
    return fs[j][v];
  };

  std::vector<Polynomial> out;
  for (std::size_t sv = 0; sv < r.to_big.size(); ++sv) {
    const std::size_t bv = r.to_big[sv];
    Polynomial value(ring, nv), direct(ring, nv);
    if (dir == FDirection::TopToSmall) {
      for (std::size_t j = 0; j < i; ++j) {
        Polynomial term = f_at(fbig, i - j, bv) * tn.pow(static_cast<unsigned>(j));
        if (r.sign > 0 && j % 2) term = -term;
        value += term;
      }
      if (r.sign < 0)
        for (std::size_t j = 1; j <= i; ++j) value += e_small(i - j) * tn.pow(static_cast<unsigned>(j));
      direct = f_at(fsmall, i, sv);
    } else {
      value = f_at(fsmall, i, sv);
      if (r.sign > 0)
        value += tn * f_at(fsmall, i - 1, sv);
      else
        value -= tn * (f_at(fsmall, i - 1, sv) + e_small(i - 1));
      direct = f_at(fbig, i, bv);
    }
    if (value != direct)
      throw InternalError("f rewriting across the restriction fails at vertex " + big->vertex_names()[bv]);
    out.push_back(std::move(value));
  }
  return out;
}

}  // namespace gkm
