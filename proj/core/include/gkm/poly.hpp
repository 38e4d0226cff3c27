#pragma once

// Exact sparse multivariate polynomials in t1..tn over Z, Z[1/2] and Z/2.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gkm {

enum class Ring { Int, Dyadic, Mod2 };

std::string_view ring_name(Ring ring);
Ring parse_ring(std::string_view name);

/// An element num / 2^pow2. Normal form depends on the ring: Int keeps
/// pow2 == 0, Dyadic keeps num odd (or zero with pow2 == 0), Mod2 keeps
/// num in {0, 1}.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Coefficient(mpz_class num, unsigned pow2 = 0) : num_(std::move(num)), pow2_(pow2) {}

  static Coefficient normalized(Ring ring, mpz_class num, unsigned pow2 = 0);

  const mpz_class& numerator() const { return num_; }
  unsigned pow2() const { return pow2_; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && pow2_ == 0; }

  friend bool operator==(const Coefficient&, const Coefficient&) = default;

  std::string to_string() const;

 private:
  mpz_class num_{0};
  unsigned pow2_ = 0;
};

Coefficient coef_add(Ring ring, const Coefficient& a, const Coefficient& b);
Coefficient coef_mul(Ring ring, const Coefficient& a, const Coefficient& b);
Coefficient coef_neg(Ring ring, const Coefficient& a);
/// a / b inside the ring, or nullopt when the quotient is not a ring element.
std::optional<Coefficient> coef_div(Ring ring, const Coefficient& a, const Coefficient& b);

/// Exponent vector of a monomial in t1..tn.
struct Monomial {
  std::vector<unsigned> exps;

  Monomial() = default;
  explicit Monomial(std::size_t n_vars) : exps(n_vars, 0) {}
  explicit Monomial(std::vector<unsigned> e) : exps(std::move(e)) {}

  std::size_t n_vars() const { return exps.size(); }
  unsigned degree() const;
  bool divisible_by(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);

/// Graded lexicographic order with t1 > t2 > ... > tn. Orders greater
/// monomials first, so iteration over a TermMap starts at the leading term.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All monomials of total degree k in n variables, leading (graded-lex
/// greatest) first. This is the column order used for Sym^k everywhere.
std::vector<Monomial> monomials_of_degree(std::size_t n_vars, unsigned k);

/// Integer linear form c1 t1 + ... + cn tn; edge labels of labeled graphs.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(std::vector<long long> coeffs) : coeffs_(std::move(coeffs)) {}

  /// c * t_(i+1) in n variables.
  static LinearForm basis(std::size_t n_vars, std::size_t i, long long c = 1);

  std::size_t n_vars() const { return coeffs_.size(); }
  const std::vector<long long>& coefficients() const { return coeffs_; }
  long long operator[](std::size_t i) const { return coeffs_[i]; }
  bool is_zero() const;
  LinearForm operator-() const;
  /// Sign-normalized copy: first nonzero coefficient positive.
  LinearForm canonical() const;
  /// Renders as "t1-t2", "2t1", "-t1+t3".
  std::string to_string() const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  friend auto operator<=>(const LinearForm&, const LinearForm&) = default;

 private:
  std::vector<long long> coeffs_;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Coefficient, GradedLexGreater>;

  Polynomial(Ring ring, std::size_t n_vars) : ring_(ring), n_vars_(n_vars) {}

  static Polynomial constant(Ring ring, std::size_t n_vars, const Coefficient& c);
  /// The variable t_(i+1) (indices are 0-based).
  static Polynomial variable(Ring ring, std::size_t n_vars, std::size_t i);
  static Polynomial from_monomial(Ring ring, Monomial m, const Coefficient& c);
  static Polynomial from_linear_form(Ring ring, const LinearForm& form);

  Ring ring() const { return ring_; }
  std::size_t n_vars() const { return n_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Total degree of the leading term; -1 for the zero polynomial.
  int degree() const;
  /// True when every term has total degree k. The zero polynomial is
  /// homogeneous of every degree.
  bool is_homogeneous(unsigned k) const;
  std::optional<unsigned> homogeneous_degree() const;

  Coefficient coefficient(const Monomial& m) const;
  /// Adds c * m to the polynomial, keeping the term map normalized.
  void add_term(const Monomial& m, const Coefficient& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial scaled(const Coefficient& c) const;
  Polynomial pow(unsigned e) const;

  /// Re-interprets coefficients in another ring. Int -> Dyadic and
  /// anything -> Mod2 (integral coefficients) always succeed; Dyadic -> Int
  /// throws UsageError when a coefficient is not an integer.
  Polynomial to_ring(Ring target) const;

  /// Human-readable rendering; names default to t1..tn.
  std::string to_string(std::span<const std::string> names = {}) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  Ring ring_;
  std::size_t n_vars_;
  TermMap terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial sub(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return add(p, q); }
inline Polynomial operator-(const Polynomial& p, const Polynomial& q) { return sub(p, q); }
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }

/// Solves p = form * q for q by back substitution on the coefficient system
/// (the multiplication map is triangular in graded-lex order, with the
/// first nonzero coefficient of the form on the diagonal). Returns nullopt
/// when no q with coefficients in p's ring exists.
std::optional<Polynomial> divide_exact_by_linear(const Polynomial& p, const LinearForm& form);

/// Exact quotient p / d for an arbitrary nonzero divisor, or nullopt.
std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& d);

/// Simultaneous substitution t_i -> assignments[i] for the listed variables.
/// Every image must share p's ring and arity.
Polynomial substitute(const Polynomial& p, const std::map<std::size_t, Polynomial>& assignments);

/// Evaluates p at images[0..n_vars-1]; the images may live in a different
/// number of variables (they must agree among themselves and with p's ring).
Polynomial compose(const Polynomial& p, std::span<const Polynomial> images);
/// compose() with a target arity, so that p may have zero variables.
Polynomial compose(const Polynomial& p, std::span<const Polynomial> images,
                   std::size_t target_vars);

/// Coefficients p_r (free of t_(i+1)) with p = sum_r p_r * t_(i+1)^r.
/// The zero polynomial expands to a single zero entry.
std::vector<Polynomial> expand_in_variable(const Polynomial& p, std::size_t i);

/// Removes variable i (which must not occur) from the arity.
Polynomial drop_variable(const Polynomial& p, std::size_t i);
/// Moves p into target_vars variables; variable j of p becomes variable
/// index_map[j].
Polynomial remap_variables(const Polynomial& p, std::size_t target_vars,
                           std::span<const std::size_t> index_map);

/// e_0..e_m of the given values, all in the given ring and arity.
std::vector<Polynomial> elementary_symmetric_all(std::span<const Polynomial> values, Ring ring,
                                                 std::size_t n_vars);
/// e_i(values); throws UsageError unless 0 <= i <= values.size().
Polynomial elementary_symmetric(int i, std::span<const Polynomial> values, Ring ring,
                                std::size_t n_vars);
/// h_i(values) for i >= 0.
Polynomial complete_symmetric(int i, std::span<const Polynomial> values, Ring ring,
                              std::size_t n_vars);

/// True iff e_i(a) == e_i(b) for every i <= max_degree, i.e. the products
/// prod(1 - a_j x) and prod(1 - b_j x) agree through x^max_degree.
bool check_generating_function_identity(std::span<const Polynomial> values_a,
                                        std::span<const Polynomial> values_b, int max_degree);

/// Canonical JSON: {"n_vars", "ring", "terms": [{"exp", "coef"}]} with terms
/// in graded-lex order, leading term first.
nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace gkm
