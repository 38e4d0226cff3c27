#pragma once

// Graph cohomology of labeled graphs: h in Map(V, Z[t]) with l(e) dividing
// h(v) - h(v') on every edge. Graded pieces are computed as integer
// lattices in the (vertex x degree-k monomial) coordinate space.

#include <cstddef>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gkm/gkmgraph.hpp"
#include "gkm/intlinalg.hpp"
#include "gkm/poly.hpp"

namespace gkm {

/// A degree-2k element candidate: one homogeneous degree-k polynomial per
/// vertex. `verified_member` records that the divisibility conditions were
/// checked and hold.
struct CohomologyClass {
  GraphPtr graph;
  unsigned k = 0;
  Ring ring = Ring::Int;
  std::vector<Polynomial> values;
  bool verified_member = false;

  bool is_zero() const;
  /// Same values; membership status is not compared.
  bool same_values(const CohomologyClass& other) const;
};

/// Validates arity, ring and homogeneity; does not check membership.
CohomologyClass make_class(GraphPtr graph, unsigned k, Ring ring, std::vector<Polynomial> values);
CohomologyClass zero_class(GraphPtr graph, unsigned k, Ring ring);

CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b);
CohomologyClass sub(const CohomologyClass& a, const CohomologyClass& b);
/// Pointwise product; degrees add.
CohomologyClass mul(const CohomologyClass& a, const CohomologyClass& b);
CohomologyClass scaled(const CohomologyClass& a, const Coefficient& c);
CohomologyClass to_ring(const CohomologyClass& a, Ring ring);

/// The constant class t_i, 1 <= i <= n_vars.
CohomologyClass class_t(const GraphPtr& g, std::size_t i, Ring ring = Ring::Int);
/// tau_i(w) = t_{w(i)} with t_{-m} = -t_m, 1 <= i <= rank.
CohomologyClass class_tau(const GraphPtr& g, std::size_t i, Ring ring = Ring::Int);
/// f_i = (e_i(tau) - e_i(t)) / 2 on B, D and Dminus graphs, 1 <= i <= rank.
/// On D, f_n is the zero class. Throws InternalError if some value is odd.
CohomologyClass class_f(const GraphPtr& g, std::size_t i, Ring ring = Ring::Int);
/// P = sum_{k<n} (-1)^(n-1-k) f_k t_n^(n-1-k) on D (plus t_1...t_(n-1) on
/// Dminus), checked against -(1/(2 t_n)) prod_k (tau_k - t_n) at every vertex.
CohomologyClass class_P(const GraphPtr& g, Ring ring = Ring::Int);

/// Index of the first edge whose label does not divide the difference over
/// the class ring, or nullopt when h is a member.
std::optional<std::size_t> first_violation(const CohomologyClass& h);
bool is_member(const CohomologyClass& h);
/// Returns h with verified_member set; throws UsageError naming the edge otherwise.
CohomologyClass require_member(CohomologyClass h);

nlohmann::json to_json(const CohomologyClass& h);
CohomologyClass class_from_json(const nlohmann::json& j, const GraphPtr& g);

inline constexpr std::size_t kDefaultMaxColumns = 4000;

enum class BasisMethod {
  Reduced,  ///< one SNF per distinct label; witnesses never materialized
  Witness,  ///< literal system with one witness polynomial per edge
};

struct BasisOptions {
  std::size_t max_columns = kDefaultMaxColumns;
  BasisMethod method = BasisMethod::Reduced;
};

/// Graded piece H^{2k}. Int: the solution lattice. Dyadic: its
/// 2-saturation. Mod2: the solution space over GF(2).
struct GradedPiece {
  GraphPtr graph;
  unsigned k = 0;
  Ring ring = Ring::Int;
  std::vector<Monomial> monomials;  ///< column order of one vertex block
  Lattice lattice;                  ///< Int and Dyadic
  F2Space space;                    ///< Mod2

  std::size_t rank() const { return ring == Ring::Mod2 ? space.dim() : lattice.rank(); }
  std::vector<CohomologyClass> basis_classes() const;
  bool contains(const CohomologyClass& h) const;
  nlohmann::json to_json() const;
};

GradedPiece graded_basis(const GraphPtr& g, unsigned k, Ring ring, const BasisOptions& opts = {});

/// Integer coordinates of a class (ring Int, or Dyadic after clearing
/// denominators: returns the power of 2 that was multiplied in).
std::vector<mpz_class> class_coordinates(const CohomologyClass& h, const std::vector<Monomial>& monomials,
                                         unsigned* pow2 = nullptr);
CohomologyClass class_from_coordinates(const GraphPtr& g, unsigned k, Ring ring,
                                       const std::vector<Monomial>& monomials, std::span<const mpz_class> x);

struct HilbertSeries {
  std::vector<long long> d;  ///< d[k] = rank of H^{2k}
  friend bool operator==(const HilbertSeries&, const HilbertSeries&) = default;
  std::string to_string() const;
};

HilbertSeries hilbert_computed(const GraphPtr& g, unsigned K, Ring ring, const BasisOptions& opts = {});
/// Closed forms in u = s^2 over (1-u)^{2n}: A prod(1-u^i), B and C prod(1-u^{2i}),
/// D and Dminus (1-u^n) prod_{i<n}(1-u^{2i}).
HilbertSeries hilbert_closed_form(Family family, std::size_t n, unsigned K);
/// d_n(k) = sum_{q=1}^{min(k+1,n)} sum_{r=0}^{k+1-q} d_{n-1}(r), d_1 = 1.
HilbertSeries hilbert_recurrence_A(std::size_t n, unsigned K);
/// The consolidated form sum_i i d_{n-1}(k+1-i) (+ the k >= n tail).
HilbertSeries hilbert_recurrence_A_consolidated(std::size_t n, unsigned K);

/// The vertex subset V_q^sign = {w : w(q) = sign * n} viewed as the rank
/// n-1 graph of the appropriate family (positions other than q keep their
/// order; values need no relabeling).
struct Restriction {
  GraphPtr big;
  GraphPtr small;
  std::size_t q = 1;  ///< 1-based position
  int sign = 1;
  std::vector<std::size_t> to_big;        ///< small vertex index -> big vertex index
  std::vector<std::size_t> position_map;  ///< small position j (1-based, index j-1) -> big position
};

/// Throws UsageError for an invalid selector (sign -1 on type A, q out of range).
Restriction make_restriction(const GraphPtr& big, std::size_t q, int sign);
Family restricted_family(Family f, int sign);

/// Restriction of h to V_q^sign, expanded in t_n: slices[r] is the
/// coefficient class of t_n^r on the small graph (degree k - r).
struct RestrictedClass {
  Restriction data;
  std::vector<CohomologyClass> slices;
};

RestrictedClass restrict_to_subgraph(const CohomologyClass& h, std::size_t q, int sign);

/// Rewriting between f-classes of the big graph (restricted to
/// V_q^sign) and the f-classes f'_i of the small graph.
enum class FDirection {
  TopToSmall,  ///< f'_i from the f_j and t_n
  SmallToTop,  ///< f_i from the f'_j, t_n and e(t')
};

/// Values (in the big graph's variables, indexed by small vertex) of the
/// rewritten class, checked against the direct computation at every vertex.
/// Throws InternalError on mismatch.
std::vector<Polynomial> transform_f_across_restriction(const Restriction& r, std::size_t i, FDirection dir);

}  // namespace gkm
