#include "gkm/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gkm/errors.hpp"

namespace gkm {

std::string_view ring_name(Ring ring) {
  switch (ring) {
    case Ring::Int: return "Int";
    case Ring::Dyadic: return "Dyadic";
    case Ring::Mod2: return "Mod2";
  }
  return "?";
}

Ring parse_ring(std::string_view name) {
  if (name == "Int" || name == "Z") return Ring::Int;
  if (name == "Dyadic" || name == "Z[1/2]") return Ring::Dyadic;
  if (name == "Mod2" || name == "Z/2") return Ring::Mod2;
  throw UsageError("unknown coefficient ring '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Coefficients

Coefficient Coefficient::normalized(Ring ring, mpz_class num, unsigned pow2) {
  switch (ring) {
    case Ring::Int:
      if (pow2 != 0) {
        if (mpz_scan1(num.get_mpz_t(), 0) < pow2 && num != 0)
          throw UsageError("non-integral dyadic value in Int ring");
        mpz_fdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), pow2);
      }
      return Coefficient(std::move(num), 0);
    case Ring::Mod2: {
      if (pow2 != 0) throw UsageError("dyadic value in Mod2 ring");
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), num.get_mpz_t(), 2);
      return Coefficient(std::move(r), 0);
    }
    case Ring::Dyadic: {
      if (num == 0) return Coefficient(mpz_class(0), 0);
      unsigned twos = static_cast<unsigned>(mpz_scan1(num.get_mpz_t(), 0));
      unsigned drop = std::min(twos, pow2);
      if (drop) mpz_tdiv_q_2exp(num.get_mpz_t(), num.get_mpz_t(), drop);
      return Coefficient(std::move(num), pow2 - drop);
    }
  }
  return {};
}

std::string Coefficient::to_string() const {
  std::string s = num_.get_str();
  if (pow2_ == 0) return s;
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, pow2_);
  return s + "/" + den.get_str();
}

Coefficient coef_add(Ring ring, const Coefficient& a, const Coefficient& b) {
  if (a.pow2() == b.pow2()) return Coefficient::normalized(ring, a.numerator() + b.numerator(), a.pow2());
  unsigned m = std::max(a.pow2(), b.pow2());
  mpz_class x = a.numerator(), y = b.numerator();
  mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), m - a.pow2());
  mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), m - b.pow2());
  return Coefficient::normalized(ring, x + y, m);
}

Coefficient coef_mul(Ring ring, const Coefficient& a, const Coefficient& b) {
  return Coefficient::normalized(ring, a.numerator() * b.numerator(), a.pow2() + b.pow2());
}

Coefficient coef_neg(Ring ring, const Coefficient& a) {
  return Coefficient::normalized(ring, -a.numerator(), a.pow2());
}

std::optional<Coefficient> coef_div(Ring ring, const Coefficient& a, const Coefficient& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Coefficient();
  switch (ring) {
    case Ring::Int:
    case Ring::Mod2: {
      if (!mpz_divisible_p(a.numerator().get_mpz_t(), b.numerator().get_mpz_t())) return std::nullopt;
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), a.numerator().get_mpz_t(), b.numerator().get_mpz_t());
      return Coefficient::normalized(ring, std::move(q), 0);
    }
    case Ring::Dyadic: {
      // b = s * 2^(twos - pow2) * odd; a / b needs odd | a.num.
      mpz_class bnum = b.numerator();
      unsigned twos = static_cast<unsigned>(mpz_scan1(bnum.get_mpz_t(), 0));
      mpz_class odd;
      mpz_tdiv_q_2exp(odd.get_mpz_t(), bnum.get_mpz_t(), twos);
      if (!mpz_divisible_p(a.numerator().get_mpz_t(), odd.get_mpz_t())) return std::nullopt;
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), a.numerator().get_mpz_t(), odd.get_mpz_t());
      // value = q * 2^(b.pow2 - a.pow2 - twos)
      long shift = static_cast<long>(b.pow2()) - static_cast<long>(a.pow2()) - static_cast<long>(twos);
      if (shift >= 0) {
        mpz_mul_2exp(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(shift));
        return Coefficient::normalized(ring, std::move(q), 0);
      }
      return Coefficient::normalized(ring, std::move(q), static_cast<unsigned>(-shift));
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Monomials

unsigned Monomial::degree() const { return std::accumulate(exps.begin(), exps.end(), 0U); }

bool Monomial::divisible_by(const Monomial& other) const {
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] < other.exps[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.exps);
  for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] += b.exps[i];
  return r;
}

bool GradedLexGreater::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return std::lexicographical_compare(b.exps.begin(), b.exps.end(), a.exps.begin(), a.exps.end());
}

namespace {

void fill_monomials(std::size_t pos, unsigned remaining, std::vector<unsigned>& cur,
                    std::vector<Monomial>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    cur[pos] = e;
    fill_monomials(pos + 1, remaining - e, cur, out);
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t n_vars, unsigned k) {
  std::vector<Monomial> out;
  if (n_vars == 0) {
    if (k == 0) out.emplace_back(0);
    return out;
  }
  std::vector<unsigned> cur(n_vars, 0);
  fill_monomials(0, k, cur, out);
  return out;
}

// ---------------------------------------------------------------------------
// Linear forms

LinearForm LinearForm::basis(std::size_t n_vars, std::size_t i, long long c) {
  std::vector<long long> v(n_vars, 0);
  v.at(i) = c;
  return LinearForm(std::move(v));
}

bool LinearForm::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](long long c) { return c == 0; });
}

LinearForm LinearForm::operator-() const {
  std::vector<long long> v(coeffs_);
  for (auto& c : v) c = -c;
  return LinearForm(std::move(v));
}

LinearForm LinearForm::canonical() const {
  for (long long c : coeffs_) {
    if (c > 0) return *this;
    if (c < 0) return -*this;
  }
  return *this;
}

std::string LinearForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    long long c = coeffs_[i];
    if (c == 0) continue;
    if (c < 0) os << '-';
    else if (!first) os << '+';
    long long a = c < 0 ? -c : c;
    if (a != 1) os << a;
    os << 't' << (i + 1);
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

// ---------------------------------------------------------------------------
// Polynomials

Polynomial Polynomial::constant(Ring ring, std::size_t n_vars, const Coefficient& c) {
  Polynomial p(ring, n_vars);
  p.add_term(Monomial(n_vars), c);
  return p;
}

Polynomial Polynomial::variable(Ring ring, std::size_t n_vars, std::size_t i) {
  if (i >= n_vars) throw UsageError("variable index out of range");
  Monomial m(n_vars);
  m.exps[i] = 1;
  return from_monomial(ring, std::move(m), Coefficient(1));
}

Polynomial Polynomial::from_monomial(Ring ring, Monomial m, const Coefficient& c) {
  Polynomial p(ring, m.n_vars());
  p.add_term(m, c);
  return p;
}

Polynomial Polynomial::from_linear_form(Ring ring, const LinearForm& form) {
  Polynomial p(ring, form.n_vars());
  for (std::size_t i = 0; i < form.n_vars(); ++i) {
    if (form[i] == 0) continue;
    Monomial m(form.n_vars());
    m.exps[i] = 1;
    p.add_term(m, Coefficient(static_cast<long>(form[i])));
  }
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.degree());
}

bool Polynomial::is_homogeneous(unsigned k) const {
  return std::all_of(terms_.begin(), terms_.end(), [k](const auto& t) { return t.first.degree() == k; });
}

std::optional<unsigned> Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  unsigned k = terms_.begin()->first.degree();
  if (!is_homogeneous(k)) return std::nullopt;
  return k;
}

Coefficient Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Coefficient() : it->second;
}

void Polynomial::add_term(const Monomial& m, const Coefficient& c) {
  if (m.n_vars() != n_vars_) throw UsageError("monomial arity mismatch");
  Coefficient cn = Coefficient::normalized(ring_, c.numerator(), c.pow2());
  if (cn.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, cn);
  if (inserted) return;
  it->second = coef_add(ring_, it->second, cn);
  if (it->second.is_zero()) terms_.erase(it);
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_, n_vars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, coef_neg(ring_, c));
  return r;
}

namespace {

void check_compatible(const Polynomial& p, const Polynomial& q) {
  if (p.ring() != q.ring()) throw UsageError("polynomial ring mismatch");
  if (p.n_vars() != q.n_vars()) throw UsageError("polynomial arity mismatch");
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_compatible(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_compatible(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, coef_neg(ring_, c));
  return *this;
}

Polynomial Polynomial::scaled(const Coefficient& c) const {
  Polynomial r(ring_, n_vars_);
  for (const auto& [m, a] : terms_) r.add_term(m, coef_mul(ring_, a, c));
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, n_vars_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e) base = mul(base, base);
  }
  return result;
}

Polynomial Polynomial::to_ring(Ring target) const {
  Polynomial r(target, n_vars_);
  for (const auto& [m, c] : terms_) {
    if (target == Ring::Int && c.pow2() != 0)
      throw UsageError("polynomial has non-integral coefficient " + c.to_string());
    if (target == Ring::Mod2 && c.pow2() != 0)
      throw UsageError("cannot reduce non-integral coefficient mod 2");
    r.add_term(m, c);
  }
  return r;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = c.numerator() < 0;
    Coefficient a = negative ? Coefficient(mpz_class(-c.numerator()), c.pow2()) : c;
    os << (negative ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool has_vars = m.degree() > 0;
    if (!a.is_one() || !has_vars) {
      os << a.to_string();
      if (has_vars) os << '*';
    }
    bool first_var = true;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (m.exps[i] == 0) continue;
      if (!first_var) os << '*';
      if (i < names.size()) os << names[i];
      else os << 't' << (i + 1);
      if (m.exps[i] > 1) os << '^' << m.exps[i];
      first_var = false;
    }
    first = false;
  }
  return os.str();
}

Polynomial add(const Polynomial& p, const Polynomial& q) {
  Polynomial r = p;
  r += q;
  return r;
}

Polynomial sub(const Polynomial& p, const Polynomial& q) {
  Polynomial r = p;
  r -= q;
  return r;
}

Polynomial mul(const Polynomial& p, const Polynomial& q) {
  check_compatible(p, q);
  Polynomial r(p.ring(), p.n_vars());
  for (const auto& [ma, ca] : p.terms())
    for (const auto& [mb, cb] : q.terms()) r.add_term(ma * mb, coef_mul(p.ring(), ca, cb));
  return r;
}

std::optional<Polynomial> divide_exact_by_linear(const Polynomial& p, const LinearForm& form) {
  if (form.n_vars() != p.n_vars()) throw UsageError("linear form arity mismatch");
  if (form.is_zero()) throw UsageError("division by the zero linear form");
  const Ring ring = p.ring();
  const Polynomial divisor = Polynomial::from_linear_form(ring, form);
  if (divisor.is_zero()) {  // an even form over Mod2
    if (p.is_zero()) return Polynomial(ring, p.n_vars());
    return std::nullopt;
  }
  // Diagonal of the triangular system: the graded-lex leading variable of
  // the form (its first coefficient that is nonzero in the ring).
  const auto& [lead_monomial, diag] = *divisor.terms().begin();
  std::size_t lead_index = 0;
  while (lead_monomial.exps[lead_index] == 0) ++lead_index;

  Polynomial remainder = p;
  Polynomial quotient(ring, p.n_vars());
  while (!remainder.is_zero()) {
    const auto& [m, c] = *remainder.terms().begin();
    if (m.exps[lead_index] == 0) return std::nullopt;
    auto qc = coef_div(ring, c, diag);
    if (!qc) return std::nullopt;
    Monomial qm = m;
    qm.exps[lead_index] -= 1;
    Polynomial step = Polynomial::from_monomial(ring, qm, *qc);
    remainder -= mul(step, divisor);
    quotient += step;
  }
  return quotient;
}

std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& d) {
  check_compatible(p, d);
  if (d.is_zero()) throw UsageError("division by the zero polynomial");
  const Ring ring = p.ring();
  const auto& [lm, lc] = *d.terms().begin();
  Polynomial remainder = p;
  Polynomial quotient(ring, p.n_vars());
  while (!remainder.is_zero()) {
    const auto& [m, c] = *remainder.terms().begin();
    if (!m.divisible_by(lm)) return std::nullopt;
    auto qc = coef_div(ring, c, lc);
    if (!qc) return std::nullopt;
    Monomial qm = m;
    for (std::size_t i = 0; i < qm.exps.size(); ++i) qm.exps[i] -= lm.exps[i];
    Polynomial step = Polynomial::from_monomial(ring, qm, *qc);
    remainder -= mul(step, d);
    quotient += step;
  }
  return quotient;
}

Polynomial compose(const Polynomial& p, std::span<const Polynomial> images, std::size_t target_vars) {
  if (images.size() != p.n_vars()) throw UsageError("compose: need one image per variable");
  for (const auto& img : images) {
    if (img.ring() != p.ring()) throw UsageError("compose: ring mismatch");
    if (img.n_vars() != target_vars) throw UsageError("compose: image arity mismatch");
  }
  const Ring ring = p.ring();
  // Cached powers per variable.
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(ring, target_vars, 1));
    while (cache.size() <= e) cache.push_back(mul(cache.back(), images[i]));
    return cache[e];
  };
  Polynomial result(ring, target_vars);
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial::constant(ring, target_vars, c);
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      if (m.exps[i]) term = mul(term, power(i, m.exps[i]));
    result += term;
  }
  return result;
}

Polynomial compose(const Polynomial& p, std::span<const Polynomial> images) {
  if (images.empty()) {
    if (p.n_vars() != 0) throw UsageError("compose: need one image per variable");
    return p;
  }
  return compose(p, images, images.front().n_vars());
}

Polynomial substitute(const Polynomial& p, const std::map<std::size_t, Polynomial>& assignments) {
  std::vector<Polynomial> images;
  images.reserve(p.n_vars());
  for (std::size_t i = 0; i < p.n_vars(); ++i) {
    auto it = assignments.find(i);
    if (it == assignments.end()) {
      images.push_back(Polynomial::variable(p.ring(), p.n_vars(), i));
    } else {
      if (it->second.n_vars() != p.n_vars()) throw UsageError("substitute: arity mismatch");
      if (it->second.ring() != p.ring()) throw UsageError("substitute: ring mismatch");
      images.push_back(it->second);
    }
  }
  for (const auto& [i, img] : assignments)
    if (i >= p.n_vars()) throw UsageError("substitute: variable index out of range");
  return compose(p, images, p.n_vars());
}

std::vector<Polynomial> expand_in_variable(const Polynomial& p, std::size_t i) {
  if (i >= p.n_vars()) throw UsageError("expand_in_variable: index out of range");
  std::vector<Polynomial> out;
  for (const auto& [m, c] : p.terms()) {
    unsigned e = m.exps[i];
    while (out.size() <= e) out.emplace_back(p.ring(), p.n_vars());
    Monomial rest = m;
    rest.exps[i] = 0;
    out[e].add_term(rest, c);
  }
  if (out.empty()) out.emplace_back(p.ring(), p.n_vars());
  return out;
}

Polynomial drop_variable(const Polynomial& p, std::size_t i) {
  if (i >= p.n_vars()) throw UsageError("drop_variable: index out of range");
  Polynomial r(p.ring(), p.n_vars() - 1);
  for (const auto& [m, c] : p.terms()) {
    if (m.exps[i] != 0) throw UsageError("drop_variable: variable still occurs");
    Monomial rest(p.n_vars() - 1);
    for (std::size_t j = 0, k = 0; j < m.exps.size(); ++j)
      if (j != i) rest.exps[k++] = m.exps[j];
    r.add_term(rest, c);
  }
  return r;
}

Polynomial remap_variables(const Polynomial& p, std::size_t target_vars,
                           std::span<const std::size_t> index_map) {
  if (index_map.size() != p.n_vars()) throw UsageError("remap_variables: map size mismatch");
  Polynomial r(p.ring(), target_vars);
  for (const auto& [m, c] : p.terms()) {
    Monomial out(target_vars);
    for (std::size_t j = 0; j < m.exps.size(); ++j) {
      if (m.exps[j] == 0) continue;
      if (index_map[j] >= target_vars) throw UsageError("remap_variables: target out of range");
      out.exps[index_map[j]] += m.exps[j];
    }
    r.add_term(out, c);
  }
  return r;
}

std::vector<Polynomial> elementary_symmetric_all(std::span<const Polynomial> values, Ring ring,
                                                 std::size_t n_vars) {
  // Coefficients of prod_j (1 + v_j x).
  std::vector<Polynomial> e;
  e.push_back(Polynomial::constant(ring, n_vars, 1));
  for (const auto& v : values) {
    e.emplace_back(ring, n_vars);
    for (std::size_t i = e.size() - 1; i > 0; --i) e[i] += mul(e[i - 1], v);
  }
  return e;
}

Polynomial elementary_symmetric(int i, std::span<const Polynomial> values, Ring ring,
                                std::size_t n_vars) {
  if (i < 0 || static_cast<std::size_t>(i) > values.size())
    throw UsageError("elementary_symmetric: degree out of range");
  return elementary_symmetric_all(values, ring, n_vars)[static_cast<std::size_t>(i)];
}

Polynomial complete_symmetric(int i, std::span<const Polynomial> values, Ring ring,
                              std::size_t n_vars) {
  if (i < 0) throw UsageError("complete_symmetric: negative degree");
  const auto deg = static_cast<std::size_t>(i);
  // h[d] over the first j values; h_d(v1..vj) = sum_e vj^e h_(d-e)(v1..v(j-1)).
  std::vector<Polynomial> h(deg + 1, Polynomial(ring, n_vars));
  h[0] = Polynomial::constant(ring, n_vars, 1);
  for (const auto& v : values) {
    // In place: h_d += v * h_(d-1), iterating d upward uses the new h_(d-1).
    for (std::size_t d = 1; d <= deg; ++d) h[d] += mul(v, h[d - 1]);
  }
  return h[deg];
}

bool check_generating_function_identity(std::span<const Polynomial> values_a,
                                        std::span<const Polynomial> values_b, int max_degree) {
  if (values_a.size() != values_b.size())
    throw UsageError("generating function identity: lists must have equal length");
  if (values_a.empty()) return true;
  const Ring ring = values_a.front().ring();
  const std::size_t n = values_a.front().n_vars();
  auto ea = elementary_symmetric_all(values_a, ring, n);
  auto eb = elementary_symmetric_all(values_b, ring, n);
  std::size_t top = std::min<std::size_t>(ea.size() - 1, static_cast<std::size_t>(std::max(max_degree, 0)));
  for (std::size_t i = 0; i <= top; ++i)
    if (ea[i] != eb[i]) return false;
  return true;
}

nlohmann::json to_json(const Polynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json term;
    term["exp"] = m.exps;
    if (p.ring() == Ring::Dyadic)
      term["coef"] = nlohmann::json::array({c.numerator().get_str(), std::to_string(c.pow2())});
    else
      term["coef"] = c.numerator().get_str();
    terms.push_back(std::move(term));
  }
  nlohmann::json j;
  j["n_vars"] = p.n_vars();
  j["ring"] = std::string(ring_name(p.ring()));
  j["terms"] = std::move(terms);
  return j;
}

Polynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    const Ring ring = parse_ring(j.at("ring").get<std::string>());
    const auto n = j.at("n_vars").get<std::size_t>();
    Polynomial p(ring, n);
    for (const auto& term : j.at("terms")) {
      Monomial m(term.at("exp").get<std::vector<unsigned>>());
      if (m.n_vars() != n) throw UsageError("polynomial JSON: exponent length mismatch");
      const auto& cj = term.at("coef");
      Coefficient c;
      if (cj.is_array()) {
        if (cj.size() != 2) throw UsageError("polynomial JSON: dyadic coefficient needs [num, pow2]");
        c = Coefficient(mpz_class(cj[0].get<std::string>()),
                        static_cast<unsigned>(std::stoul(cj[1].get<std::string>())));
      } else {
        c = Coefficient(mpz_class(cj.get<std::string>()));
      }
      p.add_term(m, c);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("polynomial JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("polynomial JSON: ") + e.what());
  }
}

}  // namespace gkm
