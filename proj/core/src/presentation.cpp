#include "gkm/presentation.hpp"

#include <algorithm>
#include <climits>
#include <future>
#include <map>
#include <thread>
#include <tuple>

#include "gkm/errors.hpp"

namespace gkm {

std::size_t tau_index(std::size_t, std::size_t i) { return i - 1; }
std::size_t t_index(std::size_t n, std::size_t i) { return n + i - 1; }
std::size_t f_index(std::size_t n, std::size_t i) { return 2 * n + i - 1; }

std::vector<std::string> generator_names(std::size_t n) {
  std::vector<std::string> names;
  for (const char* stem : {"tau", "t", "f"})
    for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

Polynomial abstract_tau(Ring ring, std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw UsageError("tau index out of range");
  return Polynomial::variable(ring, 3 * n, tau_index(n, i));
}

Polynomial abstract_t(Ring ring, std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw UsageError("t index out of range");
  return Polynomial::variable(ring, 3 * n, t_index(n, i));
}

Polynomial abstract_f(Ring ring, std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw UsageError("f index out of range");
  return Polynomial::variable(ring, 3 * n, f_index(n, i));
}

std::string abstract_to_string(const Polynomial& a, std::size_t n) {
  auto names = generator_names(n);
  return a.to_string(names);
}

namespace {

unsigned weight_of(const Monomial& m, std::size_t n) {
  unsigned w = 0;
  for (std::size_t i = 0; i < 2 * n; ++i) w += m.exps[i];
  for (std::size_t i = 1; i <= n; ++i) w += static_cast<unsigned>(i) * m.exps[f_index(n, i)];
  return w;
}

}  // namespace

std::optional<unsigned> weighted_degree(const Polynomial& a, std::size_t n) {
  std::optional<unsigned> d;
  for (const auto& [m, c] : a.terms()) {
    unsigned w = weight_of(m, n);
    if (d && *d != w) return std::nullopt;
    d = w;
  }
  return d;
}

std::vector<std::size_t> f_generators(Family family, std::size_t n) {
  std::vector<std::size_t> out;
  std::size_t top = 0;
  if (family == Family::B) top = n;
  if (family == Family::D || family == Family::Dminus) top = n ? n - 1 : 0;
  for (std::size_t i = 1; i <= top; ++i) out.push_back(i);
  return out;
}

namespace {

// Generator values tau, t, f at every vertex, in the target ring.
struct GeneratorValues {
  std::vector<std::vector<Polynomial>> at;  // at[v][abstract variable]
  std::vector<bool> allowed;
};

GeneratorValues generator_values(const GraphPtr& g, Ring ring) {
  if (!g->has_permutation_vertices()) throw UsageError("generators need a graph with signed-permutation vertices");
  const std::size_t n = g->rank(), nv = g->n_vars();
  GeneratorValues gv;
  gv.allowed.assign(3 * n, true);
  std::vector<CohomologyClass> taus, fs(n + 1);
  for (std::size_t i = 1; i <= n; ++i) taus.push_back(class_tau(g, i, ring));
  auto fidx = f_generators(g->family(), n);
  for (std::size_t i = 1; i <= n; ++i) gv.allowed[f_index(n, i)] = false;
  for (std::size_t i : fidx) {
    fs[i] = class_f(g, i, ring);
    gv.allowed[f_index(n, i)] = true;
  }
  gv.at.resize(g->vertex_count());
  for (std::size_t v = 0; v < g->vertex_count(); ++v) {
    auto& img = gv.at[v];
    img.assign(3 * n, Polynomial(ring, nv));
    for (std::size_t i = 1; i <= n; ++i) {
      img[tau_index(n, i)] = taus[i - 1].values[v];
      img[t_index(n, i)] = Polynomial::variable(ring, nv, i - 1);
    }
    for (std::size_t i : fidx) img[f_index(n, i)] = fs[i].values[v];
  }
  return gv;
}

CohomologyClass evaluate_with(const Polynomial& a, const GraphPtr& g, Ring ring, const GeneratorValues& gv,
                              std::optional<unsigned> k) {
  const std::size_t n = g->rank();
  if (a.n_vars() != 3 * n) throw UsageError("abstract polynomial arity does not match the graph");
  for (const auto& [m, c] : a.terms())
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      if (m.exps[i] && !gv.allowed[i])
        throw UsageError("generator " + generator_names(n)[i] + " is not available on this family");
  auto d = weighted_degree(a, n);
  if (!a.is_zero() && !d) throw UsageError("abstract polynomial is not homogeneous");
  if (d && k && *d != *k) throw UsageError("abstract polynomial has the wrong degree");
  unsigned deg = d ? *d : k.value_or(0);
  Polynomial ar = a.ring() == ring ? a : a.to_ring(ring);
  std::vector<Polynomial> values;
  values.reserve(g->vertex_count());
  for (std::size_t v = 0; v < g->vertex_count(); ++v) values.push_back(compose(ar, gv.at[v], g->n_vars()));
  return make_class(g, deg, ring, std::move(values));
}

}  // namespace

CohomologyClass evaluate(const Polynomial& a, const GraphPtr& g, Ring ring, std::optional<unsigned> k) {
  return evaluate_with(a, g, ring, generator_values(g, ring), k);
}

// ---------------------------------------------------------------------------
// Presentations

PresentationSpec presentation_for(Family family, std::size_t n, DminusConvention conv) {
  if (family == Family::Custom) throw UsageError("no presentation for custom graphs");
  if (n < 1 || ((family == Family::D || family == Family::Dminus) && n < 2))
    throw UsageError("presentation_for: rank out of range");
  PresentationSpec pres{family, n, family == Family::C ? Ring::Dyadic : Ring::Int, f_generators(family, n), {}};
  const Ring ring = Ring::Int;
  const std::size_t N = 3 * n;
  std::vector<Polynomial> tau, t, tau2, t2;
  for (std::size_t i = 1; i <= n; ++i) {
    tau.push_back(abstract_tau(ring, n, i));
    t.push_back(abstract_t(ring, n, i));
    tau2.push_back(tau.back() * tau.back());
    t2.push_back(t.back() * t.back());
  }
  auto et = elementary_symmetric_all(t, ring, N), etau = elementary_symmetric_all(tau, ring, N);
  auto add = [&](std::string name, Polynomial p) {
    auto d = weighted_degree(p, n);
    if (!d) throw InternalError("relation " + name + " is not homogeneous");
    pres.relations.push_back({std::move(name), std::move(p), *d});
  };
  switch (family) {
    case Family::A:
      for (std::size_t i = 1; i <= n; ++i)
        add("e" + std::to_string(i) + "(tau)-e" + std::to_string(i) + "(t)", etau[i] - et[i]);
      return pres;
    case Family::C: {
      auto etau2 = elementary_symmetric_all(tau2, ring, N), et2 = elementary_symmetric_all(t2, ring, N);
      for (std::size_t i = 1; i <= n; ++i)
        add("e" + std::to_string(i) + "(tau^2)-e" + std::to_string(i) + "(t^2)", etau2[i] - et2[i]);
      return pres;
    }
    case Family::B:
    case Family::D:
    case Family::Dminus:
      break;
    case Family::Custom:
      break;
  }
  // f_l as it enters the relations: the generator when available, 0 on D
  // for l >= n, and -e_n(t) for f_n on Dminus unless the literal convention
  // is requested.
  auto f = [&](std::size_t l) -> Polynomial {
    if (l == 0 || l > n) return Polynomial(ring, N);
    if (std::find(pres.f_indices.begin(), pres.f_indices.end(), l) != pres.f_indices.end())
      return abstract_f(ring, n, l);
    if (family == Family::Dminus && l == n && conv == DminusConvention::Substituted) return -et[n];
    return Polynomial(ring, N);
  };
  auto e = [&](std::size_t l) -> Polynomial { return l <= n ? et[l] : Polynomial(ring, N); };
  const std::size_t linear_top = family == Family::B ? n : n - 1;
  for (std::size_t i = 1; i <= linear_top; ++i)
    add("2f" + std::to_string(i) + "-e" + std::to_string(i) + "(tau)+e" + std::to_string(i) + "(t)",
        f(i).scaled(2) - etau[i] + et[i]);
  for (std::size_t k = 1; k <= n; ++k) {
    Polynomial s(ring, N);
    for (std::size_t j = 1; j <= 2 * k; ++j) {
      Polynomial term = f(j) * (f(2 * k - j) + e(2 * k - j));
      if (j % 2) term = -term;
      s += term;
    }
    if (s.is_zero()) continue;
    add("quadratic k=" + std::to_string(k), std::move(s));
  }
  if (family == Family::D) add("e" + std::to_string(n) + "(tau)-e" + std::to_string(n) + "(t)", etau[n] - et[n]);
  if (family == Family::Dminus) add("e" + std::to_string(n) + "(tau)+e" + std::to_string(n) + "(t)", etau[n] + et[n]);
  return pres;
}

std::vector<RelationReport> verify_relations(const PresentationSpec& pres, const GraphPtr& g) {
  if (g->family() != pres.family || g->rank() != pres.n) throw UsageError("verify_relations: graph does not match");
  GeneratorValues gv = generator_values(g, Ring::Int);
  std::vector<RelationReport> out;
  for (const auto& r : pres.relations)
    out.push_back({r.name, r.degree, evaluate_with(r.poly, g, Ring::Int, gv, r.degree).is_zero()});
  return out;
}

// ---------------------------------------------------------------------------
// Generator spans

namespace {

struct GenVar {
  std::size_t index;
  unsigned weight;
  unsigned cap;
};

void enumerate_weighted(const std::vector<GenVar>& vars, std::size_t pos, unsigned remaining, Monomial& cur,
                        std::vector<Monomial>& out) {
  if (pos == vars.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  const GenVar& v = vars[pos];
  for (unsigned e = 0; e <= v.cap && e * v.weight <= remaining; ++e) {
    cur.exps[v.index] = e;
    enumerate_weighted(vars, pos + 1, remaining - e * v.weight, cur, out);
  }
  cur.exps[v.index] = 0;
}

std::vector<Monomial> capped_monomials(std::size_t n, unsigned k, const std::vector<GenVar>& vars) {
  std::vector<Monomial> out;
  Monomial cur(3 * n);
  enumerate_weighted(vars, 0, k, cur, out);
  std::sort(out.begin(), out.end(), GradedLexGreater());
  return out;
}

IntMatrix evaluation_rows(const GraphPtr& g, unsigned k, Ring ring, const std::vector<Monomial>& monos,
                          std::size_t max_columns) {
  auto coords = monomials_of_degree(g->n_vars(), k);
  const std::size_t X = coords.size() * g->vertex_count();
  if (X > max_columns)
    throw ResourceError("generator span needs " + std::to_string(X) + " columns, cap is " + std::to_string(max_columns));
  GeneratorValues gv = generator_values(g, ring);
  IntMatrix rows(0, X);
  for (const auto& m : monos) {
    Polynomial a = Polynomial::from_monomial(ring, m, Coefficient(1));
    auto h = evaluate_with(a, g, ring, gv, k);
    rows.append_row(class_coordinates(h, coords));
  }
  return rows;
}

}  // namespace

std::vector<Monomial> generator_monomials(Family family, std::size_t n, unsigned k, const GeneratorSet& gens) {
  std::vector<GenVar> vars;
  for (std::size_t i = 1; i <= n; ++i) {
    if (gens.tau) vars.push_back({tau_index(n, i), 1, UINT_MAX});
    if (gens.t) vars.push_back({t_index(n, i), 1, UINT_MAX});
  }
  if (gens.f)
    for (std::size_t i : f_generators(family, n)) vars.push_back({f_index(n, i), static_cast<unsigned>(i), UINT_MAX});
  return capped_monomials(n, k, vars);
}

Lattice generator_lattice(const GraphPtr& g, unsigned k, const GeneratorSet& gens, Ring ring,
                          std::size_t max_columns) {
  if (ring == Ring::Mod2) throw UsageError("generator_lattice: use generator_space_mod2 for Mod2");
  auto monos = generator_monomials(g->family(), g->rank(), k, gens);
  Lattice l = Lattice::from_generators(evaluation_rows(g, k, Ring::Int, monos, max_columns));
  return ring == Ring::Dyadic ? saturate_at_2(l) : l;
}

F2Space generator_space_mod2(const GraphPtr& g, unsigned k, const GeneratorSet& gens, std::size_t max_columns) {
  auto monos = generator_monomials(g->family(), g->rank(), k, gens);
  return F2Space::from_generators(evaluation_rows(g, k, Ring::Int, monos, max_columns));
}

nlohmann::json PresentationCertificate::to_json() const {
  auto index_json = [](const LatticeIndex& idx) -> nlohmann::json {
    if (idx.infinite) return "infinite";
    if (idx.value.fits_slong_p()) return idx.value.get_si();
    return idx.value.get_str();
  };
  nlohmann::json j;
  j["family"] = std::string(family_name(family));
  j["n"] = n;
  j["K"] = K;
  j["ring"] = std::string(ring_name(ring));
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : relations) rels.push_back({{"name", r.name}, {"degree", 2 * r.degree}, {"pass", r.pass}});
  j["relations"] = std::move(rels);
  nlohmann::json pd = nlohmann::json::array();
  for (const auto& d : per_degree) {
    nlohmann::json e{{"k", d.k},
                     {"rank", d.rank},
                     {"generator_rank", d.generator_rank},
                     {"index", index_json(d.index)},
                     {"relations_pass", d.relations_pass}};
    if (!d.index.infinite && d.index.value != 1) e["index_two_exponent"] = d.index.two_exponent();
    pd.push_back(std::move(e));
  }
  j["per_degree"] = std::move(pd);
  j["verified"] = verified;
  return j;
}

namespace {

DegreeCertificate certify_degree(const GraphPtr& g, unsigned k, Ring ring, const BasisOptions& opts,
                                 const std::vector<RelationReport>& relations) {
  DegreeCertificate d{k, 0, 0, {}, true};
  for (const auto& r : relations)
    if (r.degree == k) d.relations_pass = d.relations_pass && r.pass;
  const GeneratorSet all;
  GradedPiece piece = graded_basis(g, k, ring, opts);
  d.rank = piece.rank();
  if (ring == Ring::Mod2) {
    F2Space gen = generator_space_mod2(g, k, all, opts.max_columns);
    d.generator_rank = gen.dim();
    if (!piece.space.contains(gen)) throw InternalError("generator span leaves the cohomology piece");
    d.index.value = 1;
    mpz_mul_2exp(d.index.value.get_mpz_t(), d.index.value.get_mpz_t(), piece.space.dim() - gen.dim());
  } else {
    Lattice gen = generator_lattice(g, k, all, ring, opts.max_columns);
    d.generator_rank = gen.rank();
    if (!piece.lattice.contains(gen)) throw InternalError("generator span leaves the cohomology piece");
    d.index = lattice_index(gen, piece.lattice);
  }
  return d;
}

}  // namespace

PresentationCertificate verify_presentation(const GraphPtr& g, unsigned K, Ring ring, const BasisOptions& opts) {
  PresentationSpec pres = presentation_for(g->family(), g->rank());
  PresentationCertificate cert{g->family(), g->rank(), K, ring, verify_relations(pres, g), {}, true};
  for (const auto& r : cert.relations) cert.verified = cert.verified && r.pass;
  const auto policy = std::thread::hardware_concurrency() > 1 ? std::launch::async : std::launch::deferred;
  std::vector<std::future<DegreeCertificate>> jobs;
  for (unsigned k = 0; k <= K; ++k)
    jobs.push_back(std::async(policy, certify_degree, g, k, ring, std::cref(opts), std::cref(cert.relations)));
  for (auto& job : jobs) {
    DegreeCertificate d = job.get();
    cert.verified = cert.verified && d.relations_pass && d.index.is_one();
    cert.per_degree.push_back(std::move(d));
  }
  return cert;
}

PresentationCertificate verify_presentation(Family family, std::size_t n, unsigned K, Ring ring,
                                            const BasisOptions& opts) {
  return verify_presentation(build_graph(family, n), K, ring, opts);
}

BoundedSpanReport bounded_monomial_span_check(Family family, std::size_t n, unsigned k, BoundVariant variant,
                                              std::size_t max_columns) {
  GraphPtr g = build_graph(family, n);
  std::vector<GenVar> vars;
  BoundedSpanReport rep;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back({t_index(n, i), 1, UINT_MAX});
  switch (family) {
    case Family::A:
      rep.ring = Ring::Int;
      for (std::size_t p = 1; p < n; ++p) vars.push_back({tau_index(n, p), 1, static_cast<unsigned>(n - p)});
      break;
    case Family::C:
      rep.ring = Ring::Dyadic;
      if (variant == BoundVariant::Literal) {
        for (std::size_t p = 1; p < n; ++p) vars.push_back({tau_index(n, p), 1, static_cast<unsigned>(2 * (n - p))});
      } else {
        for (std::size_t p = 1; p <= n; ++p)
          vars.push_back({tau_index(n, p), 1, static_cast<unsigned>(2 * (n - p) + 1)});
      }
      break;
    case Family::B:
    case Family::D:
    case Family::Dminus:
      rep.ring = Ring::Mod2;
      for (std::size_t p = 1; p < n; ++p) vars.push_back({tau_index(n, p), 1, static_cast<unsigned>(n - p)});
      for (std::size_t i : f_generators(family, n)) vars.push_back({f_index(n, i), static_cast<unsigned>(i), 1});
      break;
    case Family::Custom:
      throw UsageError("bounded_monomial_span_check: classical families only");
  }
  auto monos = capped_monomials(n, k, vars);
  rep.restricted_monomials = monos.size();
  IntMatrix rows = evaluation_rows(g, k, Ring::Int, monos, max_columns);
  const GeneratorSet all;
  if (rep.ring == Ring::Mod2) {
    F2Space restricted = F2Space::from_generators(rows);
    F2Space full = generator_space_mod2(g, k, all, max_columns);
    Lattice zfull = generator_lattice(g, k, all, Ring::Int, max_columns);
    rep.restricted_rank = restricted.dim();
    rep.full_rank = zfull.rank();
    rep.pass = restricted == full && restricted.dim() == zfull.rank();
  } else {
    Lattice restricted = Lattice::from_generators(rows);
    Lattice full = generator_lattice(g, k, all, Ring::Int, max_columns);
    if (rep.ring == Ring::Dyadic) {
      restricted = saturate_at_2(restricted);
      full = saturate_at_2(full);
    }
    rep.restricted_rank = restricted.rank();
    rep.full_rank = full.rank();
    rep.pass = restricted == full;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Reduction

nlohmann::json ReductionCertificate::to_json(bool with_trace) const {
  const std::size_t n = input.graph->rank();
  auto names = generator_names(n);
  nlohmann::json j;
  j["family"] = std::string(family_name(input.graph->family()));
  j["n"] = n;
  j["degree"] = 2 * input.k;
  j["ring"] = std::string(ring_name(output.ring()));
  j["output"] = output.to_string(names);
  j["output_polynomial"] = gkm::to_json(output);
  j["generators"] = names;
  j["round_trip"] = round_trip;
  if (with_trace) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& e : trace) t.push_back({{"stage", e.stage}, {"subtracted", e.subtracted.to_string(names)}});
    j["trace"] = std::move(t);
  }
  return j;
}

namespace {

class Reducer {
 public:
  explicit Reducer(Ring ring) : ring_(ring) {}

  Polynomial run(const CohomologyClass& h, std::vector<TraceEntry>* trace) {
    const GraphPtr& g = h.graph;
    const std::size_t n = g->rank();
    const std::size_t N = 3 * n;
    const Family fam = g->family();
    if (h.is_zero()) return Polynomial(ring_, N);
    if (n == 0) return h.values[0];
    if (n == 1 && (fam == Family::A || fam == Family::D || fam == Family::Dminus)) {
      std::vector<std::size_t> to_t{t_index(1, 1)};
      return remap_variables(h.values[0], 3, to_t);
    }
    const GeneratorValues& gv = values_for(g);
    CohomologyClass rest = h;
    Polynomial output(ring_, N);
    std::vector<std::pair<int, std::size_t>> stages;
    for (std::size_t q = 1; q <= n; ++q) stages.emplace_back(1, q);
    if (fam != Family::A)
      for (std::size_t q = 1; q <= n; ++q) stages.emplace_back(-1, q);
    for (auto [sign, q] : stages) {
      const Restriction& r = restriction_for(g, q, sign);
      Polynomial stage = stage_polynomial(fam, n, q, sign);
      unsigned sdeg = *weighted_degree(stage, n);
      CohomologyClass sval = evaluate_with(stage, g, ring_, gv, sdeg);
      bool any = false;
      for (std::size_t bv : r.to_big) any = any || !rest.values[bv].is_zero();
      if (!any) continue;
      const std::string label = "n=" + std::to_string(n) + " q=" + std::to_string(q) + (sign > 0 ? " +" : " -");
      if (sdeg > rest.k) throw ReductionFailure("stage " + label + ": class does not vanish where it must");
      const unsigned d = rest.k - sdeg;
      // g^q on V_q, expanded in t_n.
      std::vector<std::vector<Polynomial>> slice_vals(d + 1);
      for (std::size_t sv = 0; sv < r.to_big.size(); ++sv) {
        const std::size_t bv = r.to_big[sv];
        auto quotient = divide_exact(rest.values[bv], sval.values[bv]);
        if (!quotient)
          throw ReductionFailure("stage " + label + ": value at " + g->vertex_names()[bv] +
                                 " is not divisible by the stage polynomial over " + std::string(ring_name(ring_)));
        auto parts = expand_in_variable(*quotient, n - 1);
        for (unsigned e = 0; e <= d; ++e) {
          Polynomial p = e < parts.size() ? parts[e] : Polynomial(ring_, n);
          slice_vals[e].push_back(drop_variable(p, n - 1));
        }
      }
      std::vector<Polynomial> lift = lift_images(r);
      Polynomial G(ring_, N);
      const Polynomial tn = abstract_t(ring_, n, n);
      for (unsigned e = 0; e <= d; ++e) {
        CohomologyClass slice = make_class(r.small, d - e, ring_, std::move(slice_vals[e]));
        if (auto bad = first_violation(slice))
          throw ReductionFailure("stage " + label + ": slice " + std::to_string(e) + " is not a class of the rank " +
                                 std::to_string(n - 1) + " graph");
        Polynomial sub = run(slice, nullptr);
        G += compose(sub, lift, N) * tn.pow(e);
      }
      Polynomial subtracted = G * stage;
      rest = sub(rest, evaluate_with(subtracted, g, ring_, gv, rest.k));
      output += subtracted;
      for (std::size_t bv : r.to_big)
        if (!rest.values[bv].is_zero()) throw InternalError("stage " + label + " did not clear its vertex set");
      if (trace) trace->push_back({label, subtracted});
    }
    if (!rest.is_zero()) throw ReductionFailure("reduction ended with a nonzero remainder");
    return output;
  }

 private:
  const GeneratorValues& values_for(const GraphPtr& g) {
    auto it = values_.find(g.get());
    if (it == values_.end()) it = values_.emplace(g.get(), std::make_pair(g, generator_values(g, ring_))).first;
    return it->second.second;
  }

  const Restriction& restriction_for(const GraphPtr& g, std::size_t q, int sign) {
    auto key = std::make_tuple(g.get(), q, sign);
    auto it = restrictions_.find(key);
    if (it == restrictions_.end()) it = restrictions_.emplace(key, make_restriction(g, q, sign)).first;
    return it->second;
  }

  Polynomial stage_polynomial(Family fam, std::size_t n, std::size_t q, int sign) const {
    const Polynomial one = Polynomial::constant(ring_, 3 * n, 1);
    const Polynomial tn = abstract_t(ring_, n, n);
    Polynomial s = one;
    if (sign > 0) {
      for (std::size_t i = 1; i < q; ++i) s = s * (abstract_tau(ring_, n, i) - tn);
      return s;
    }
    Polynomial base(ring_, 3 * n);
    switch (fam) {
      case Family::C:
        base = one;
        for (std::size_t k = 1; k <= n; ++k) base = base * (abstract_tau(ring_, n, k) - tn);
        break;
      case Family::B:
        for (std::size_t k = 1; k <= n; ++k) {
          Polynomial term = abstract_f(ring_, n, k) * tn.pow(static_cast<unsigned>(n - k));
          base += (n - k) % 2 ? -term : term;
        }
        break;
      case Family::D:
      case Family::Dminus:
        for (std::size_t k = 1; k < n; ++k) {
          Polynomial term = abstract_f(ring_, n, k) * tn.pow(static_cast<unsigned>(n - 1 - k));
          base += (n - 1 - k) % 2 ? -term : term;
        }
        if (fam == Family::Dminus) {
          Polynomial prod = one;
          for (std::size_t j = 1; j < n; ++j) prod = prod * abstract_t(ring_, n, j);
          base += prod;
        }
        break;
      default:
        throw InternalError("no negative stages for this family");
    }
    s = base;
    for (std::size_t l = 1; l < q; ++l) s = s * (abstract_tau(ring_, n, l) + tn);
    return s;
  }

  // Images of the small graph's generators tau'_j, t'_j, f'_i in the big
  // graph's abstract polynomial ring.
  std::vector<Polynomial> lift_images(const Restriction& r) const {
    const std::size_t n = r.big->rank(), m = n - 1, N = 3 * n;
    std::vector<Polynomial> img(3 * m, Polynomial(ring_, N));
    const Polynomial tn = abstract_t(ring_, n, n);
    for (std::size_t j = 1; j <= m; ++j) {
      img[tau_index(m, j)] = abstract_tau(ring_, n, r.position_map[j - 1]);
      img[t_index(m, j)] = abstract_t(ring_, n, j);
    }
    auto small_f = f_generators(r.small->family(), m);
    if (small_f.empty()) return img;
    auto big_f = f_generators(r.big->family(), n);
    auto fbig = [&](std::size_t l) {
      if (std::find(big_f.begin(), big_f.end(), l) == big_f.end())
        throw InternalError("lifting needs f" + std::to_string(l) + ", which the big family lacks");
      return abstract_f(ring_, n, l);
    };
    std::vector<Polynomial> tprime;
    for (std::size_t j = 1; j <= m; ++j) tprime.push_back(abstract_t(ring_, n, j));
    auto et = elementary_symmetric_all(tprime, ring_, N);
    for (std::size_t i : small_f) {
      Polynomial v(ring_, N);
      for (std::size_t j = 0; j < i; ++j) {
        Polynomial term = fbig(i - j) * tn.pow(static_cast<unsigned>(j));
        v += (r.sign > 0 && j % 2) ? -term : term;
      }
      if (r.sign < 0)
        for (std::size_t j = 1; j <= i; ++j) v += et[i - j] * tn.pow(static_cast<unsigned>(j));
      img[f_index(m, i)] = std::move(v);
    }
    return img;
  }

  Ring ring_;
  std::map<const LabeledGraph*, std::pair<GraphPtr, GeneratorValues>> values_;
  std::map<std::tuple<const LabeledGraph*, std::size_t, int>, Restriction> restrictions_;
};

}  // namespace

ReductionCertificate reduce(const CohomologyClass& h, std::optional<Ring> ring) {
  const GraphPtr& g = h.graph;
  if (g->family() == Family::Custom) throw UsageError("reduce: classical families only");
  CohomologyClass input = require_member(h);
  const Ring r = ring.value_or(g->family() == Family::C ? Ring::Dyadic : Ring::Int);
  if (r == Ring::Mod2) throw UsageError("reduce: Mod2 is not supported");
  CohomologyClass hr = to_ring(input, r);
  ReductionCertificate cert{input, Polynomial(r, 3 * g->rank()), {}, false};
  Reducer reducer(r);
  cert.output = reducer.run(hr, &cert.trace);
  cert.round_trip = evaluate(cert.output, g, r, h.k).values == hr.values;
  if (!cert.round_trip) throw InternalError("reduce: evaluation of the output does not reproduce the input");
  return cert;
}

// ---------------------------------------------------------------------------
// The C_2 class

namespace {

CohomologyClass c2_values() {
  GraphPtr g = build_C(2);
  const Ring R = Ring::Int;
  const Polynomial t1 = Polynomial::variable(R, 2, 0), t2 = Polynomial::variable(R, 2, 1);
  std::vector<Polynomial> values;
  for (const auto& w : g->vertices()) {
    int a = w.images()[0], b = w.images()[1];
    Polynomial v(R, 2);
    if (a == 1 && b == -2) v = (t2 * (t1 - t2) * (t1 + t2)).scaled(-2);
    if (a == -1 && b == -2) v = (t2 * t2 * (t1 + t2)).scaled(2);
    if (a == -2 && b == -1) v = (t1 * t2 * (t1 + t2)).scaled(2);
    values.push_back(std::move(v));
  }
  return make_class(g, 3, R, std::move(values));
}

Polynomial c2_abstract_double() {
  const Ring R = Ring::Int;
  Polynomial tau1 = abstract_tau(R, 2, 1), tau2 = abstract_tau(R, 2, 2);
  Polynomial t1 = abstract_t(R, 2, 1), t2 = abstract_t(R, 2, 2);
  return (tau1 - t2) * (tau2 - t2) * (tau1 - tau2 + t1 + t2);
}

}  // namespace

CounterexampleReport c2_counterexample_report() {
  CounterexampleReport rep{c2_values(), false, false, false, false, {}};
  const GraphPtr& g = rep.h.graph;
  rep.member_over_int = is_member(rep.h);
  Polynomial half = c2_abstract_double().to_ring(Ring::Dyadic).scaled(Coefficient(mpz_class(1), 1));
  rep.equals_half_product = evaluate(half, g, Ring::Dyadic, 3).values == to_ring(rep.h, Ring::Dyadic).values;
  GeneratorSet taut{true, true, false};
  Lattice gen = generator_lattice(g, 3, taut, Ring::Int);
  auto coords = monomials_of_degree(2, 3);
  auto x = class_coordinates(rep.h, coords);
  rep.outside_int_span = !gen.contains(x);
  for (auto& c : x) c *= 2;
  rep.double_inside_int_span = gen.contains(x);
  rep.index_at_k3 = lattice_index(gen, graded_basis(g, 3, Ring::Int).lattice);
  if (rep.member_over_int) rep.h.verified_member = true;
  return rep;
}

CohomologyClass c2_counterexample() {
  CounterexampleReport rep = c2_counterexample_report();
  if (!rep.member_over_int) throw InternalError("C2 example: not a member over Z");
  if (!rep.equals_half_product) throw InternalError("C2 example: differs from the half product");
  if (!rep.outside_int_span) throw InternalError("C2 example: lies in the integral generator span");
  if (!rep.double_inside_int_span) throw InternalError("C2 example: twice the class is not in the span");
  return rep.h;
}

}  // namespace gkm
