#pragma once

// Abstract generator polynomials in tau_1..tau_n, t_1..t_n, f_1..f_n, their
// evaluation on labeled graphs, presentation certificates and the
// constructive reduction of a class to a generator polynomial.

#include <cstddef>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkm/cohomology.hpp"

namespace gkm {

/// Abstract polynomials are Polynomials in 3n variables ordered
/// tau_1..tau_n, t_1..t_n, f_1..f_n. Weights: tau and t have weight 1, f_i
/// has weight i.
std::size_t tau_index(std::size_t n, std::size_t i);
std::size_t t_index(std::size_t n, std::size_t i);
std::size_t f_index(std::size_t n, std::size_t i);
std::vector<std::string> generator_names(std::size_t n);

Polynomial abstract_tau(Ring ring, std::size_t n, std::size_t i);
Polynomial abstract_t(Ring ring, std::size_t n, std::size_t i);
Polynomial abstract_f(Ring ring, std::size_t n, std::size_t i);
std::string abstract_to_string(const Polynomial& a, std::size_t n);

/// Weighted degree of a homogeneous abstract polynomial; nullopt when zero
/// or inhomogeneous.
std::optional<unsigned> weighted_degree(const Polynomial& a, std::size_t n);

/// f-generators available on the family: B: 1..n; D, Dminus: 1..n-1; none otherwise.
std::vector<std::size_t> f_generators(Family family, std::size_t n);

/// Pointwise substitution of the generator classes. The result ring must
/// contain the coefficients of a. k is required when a is zero.
CohomologyClass evaluate(const Polynomial& a, const GraphPtr& g, Ring ring,
                         std::optional<unsigned> k = std::nullopt);

struct Relation {
  std::string name;
  Polynomial poly;
  unsigned degree;
};

struct PresentationSpec {
  Family family;
  std::size_t n;
  Ring ring;  ///< coefficient ring of the presentation: Dyadic for C, Int otherwise
  std::vector<std::size_t> f_indices;
  std::vector<Relation> relations;
};

/// How the quadratic relations on Dminus treat f_n.
enum class DminusConvention {
  Substituted,  ///< f_n -> -e_n(t), the value f_n takes on the odd coset
  LiteralZero,  ///< f_n = 0 as on D; fails on the odd coset
};

PresentationSpec presentation_for(Family family, std::size_t n,
                                  DminusConvention conv = DminusConvention::Substituted);

struct RelationReport {
  std::string name;
  unsigned degree;
  bool pass;
};

std::vector<RelationReport> verify_relations(const PresentationSpec& pres, const GraphPtr& g);

struct GeneratorSet {
  bool tau = true;
  bool t = true;
  bool f = true;
};

/// All abstract monomials of weighted degree k in the chosen generators.
std::vector<Monomial> generator_monomials(Family family, std::size_t n, unsigned k, const GeneratorSet& gens);

/// Span of the evaluated generator monomials in the coordinates of
/// graded_basis(g, k, ...). Dyadic returns the 2-saturation of the integer span.
Lattice generator_lattice(const GraphPtr& g, unsigned k, const GeneratorSet& gens, Ring ring,
                          std::size_t max_columns = kDefaultMaxColumns);
/// The same span reduced mod 2.
F2Space generator_space_mod2(const GraphPtr& g, unsigned k, const GeneratorSet& gens,
                             std::size_t max_columns = kDefaultMaxColumns);

struct DegreeCertificate {
  unsigned k;
  std::size_t rank;            ///< rank of the cohomology piece
  std::size_t generator_rank;  ///< rank of the generator span
  LatticeIndex index;          ///< [cohomology : generator span] over the ring
  bool relations_pass;
};

struct PresentationCertificate {
  Family family;
  std::size_t n;
  unsigned K;
  Ring ring;
  std::vector<RelationReport> relations;
  std::vector<DegreeCertificate> per_degree;
  bool verified = false;
  nlohmann::json to_json() const;
};

/// Degree-by-degree check up to K: relations vanish and the generator span
/// equals the cohomology piece over `ring` (for Dyadic, after inverting 2).
/// Degrees are computed concurrently when more than one core is available.
PresentationCertificate verify_presentation(Family family, std::size_t n, unsigned K, Ring ring,
                                            const BasisOptions& opts = {});
/// Same, on a given graph of a classical family (e.g. relabeled or reordered).
PresentationCertificate verify_presentation(const GraphPtr& g, unsigned K, Ring ring,
                                            const BasisOptions& opts = {});

/// Exponent caps for the module-generation checks.
enum class BoundVariant {
  Standard,  ///< caps that match the graded ranks (used by default)
  Literal,   ///< for C: i_p <= 2(n-p) on tau_1..tau_{n-1} only
};

struct BoundedSpanReport {
  bool pass = false;
  Ring ring;
  std::size_t restricted_monomials = 0;
  std::size_t restricted_rank = 0;  ///< Z-rank, or GF(2) dimension for Mod2
  std::size_t full_rank = 0;
};

/// Compares the span of the exponent-capped monomials (times arbitrary
/// t-monomials) with the span of all generator monomials at degree k.
/// A: tau_p^{i_p}, i_p <= n-p over Z. C: tau_p^{i_p}, i_p <= 2(n-p)+1 over
/// Z[1/2]. B, D, Dminus: tau_p^{i_p} f_p^{j_p}, i_p <= n-p, j_p <= 1, over
/// GF(2) (rank of the mod-2 span must also equal the Z-rank).
BoundedSpanReport bounded_monomial_span_check(Family family, std::size_t n, unsigned k,
                                              BoundVariant variant = BoundVariant::Standard,
                                              std::size_t max_columns = kDefaultMaxColumns);

/// Reduction could not complete (a stage division left the coefficient
/// ring, or a slice failed to be a class). Happens for C over Int.
class ReductionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceEntry {
  std::string stage;      ///< e.g. "n=3 q=2 +"
  Polynomial subtracted;  ///< abstract polynomial G * (stage polynomial)
};

struct ReductionCertificate {
  CohomologyClass input;
  Polynomial output;
  std::vector<TraceEntry> trace;  ///< top-level stages only
  bool round_trip = false;
  nlohmann::json to_json(bool with_trace = true) const;
};

/// Writes a member class as an abstract polynomial by peeling it off the
/// vertex sets V_q^+ (then V_q^-) and recursing on the rank n-1 graphs.
/// Ring defaults to Dyadic for C and Int otherwise. Throws UsageError for
/// non-members and ReductionFailure when the ring is too small.
ReductionCertificate reduce(const CohomologyClass& h, std::optional<Ring> ring = std::nullopt);

struct CounterexampleReport {
  CohomologyClass h;
  bool member_over_int = false;
  bool equals_half_product = false;
  bool outside_int_span = false;
  bool double_inside_int_span = false;
  LatticeIndex index_at_k3;
};

/// The degree-6 class on C_2 that is not an integral polynomial in tau, t.
/// Throws InternalError if any of its defining properties fails.
CohomologyClass c2_counterexample();
CounterexampleReport c2_counterexample_report();

}  // namespace gkm
