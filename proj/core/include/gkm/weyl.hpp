#pragma once

// Weyl groups of the classical root systems as (signed) permutations, and
// closure of arbitrary reflection sets.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gkm/poly.hpp"

namespace gkm {

/// Labeled-graph families. Custom is a graph built from a root list.
enum class Family { A, B, C, D, Dminus, Custom };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// Vertex sets: S_n, signed permutations, even and odd signed permutations.
enum class GroupFamily { A, BC, Dplus, Dminus };

GroupFamily group_family_of(Family f);

/// w in one-line notation w(1) ... w(n), with entries in {+-1, ..., +-n}.
/// Acts on indices with the sign rule w(-m) = -w(m).
class SignedPermutation {
 public:
  SignedPermutation() = default;
  /// Throws UsageError unless |images| is a permutation of 1..n.
  explicit SignedPermutation(std::vector<int> images);

  static SignedPermutation identity(std::size_t n);
  /// The transposition (i j), 1-based.
  static SignedPermutation transposition(std::size_t n, int i, int j);
  /// i -> -j, j -> -i: the reflection in t_i + t_j.
  static SignedPermutation signed_transposition(std::size_t n, int i, int j);
  /// i -> -i: the reflection in t_i.
  static SignedPermutation sign_change(std::size_t n, int i);

  /// Parses "2 -1 3"; the compact unsigned form "213" is accepted when n < 10.
  static SignedPermutation parse(std::string_view text);

  std::size_t size() const { return images_.size(); }
  const std::vector<int>& images() const { return images_; }
  /// w(i) for i in +-{1..n}.
  int operator()(int i) const;

  bool is_plain() const;
  std::size_t negative_count() const;
  SignedPermutation inverse() const;

  /// Space-separated one-line notation.
  std::string to_string() const;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
  /// Lexicographic on one-line notation with -n < ... < -1 < 1 < ... < n.
  friend auto operator<=>(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  std::vector<int> images_;
};

/// (w o v)(i) = w(v(i)).
SignedPermutation compose(const SignedPermutation& w, const SignedPermutation& v);

/// t_i -> t_{w(i)} with t_{-m} = -t_m.
LinearForm apply_to_form(const SignedPermutation& w, const LinearForm& form);

/// Elements in canonical (lexicographic) order. Throws UsageError for n = 0.
std::vector<SignedPermutation> enumerate(GroupFamily family, std::size_t n);

/// Roots (both signs) of the classical system of the family in n variables.
/// Type A uses t_i - t_j in n variables (the system A_{n-1}).
std::vector<LinearForm> root_system(Family family, std::size_t n);

/// An orthogonal map of Q^n as a rational matrix acting on coordinate
/// columns: the image of t_j is sum_i m(i, j) t_i.
class OrthogonalMap {
 public:
  explicit OrthogonalMap(std::size_t n = 0);
  static OrthogonalMap reflection(const LinearForm& root);
  static OrthogonalMap from_signed_permutation(const SignedPermutation& w);

  std::size_t size() const { return n_; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return m_[i * n_ + j]; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return m_[i * n_ + j]; }

  /// Image of an integral form; nullopt when the image is not integral.
  std::optional<LinearForm> apply(const LinearForm& form) const;
  std::optional<SignedPermutation> as_signed_permutation() const;
  /// Canonical text key (used for hashing during closure).
  std::string key() const;

  friend bool operator==(const OrthogonalMap&, const OrthogonalMap&) = default;

 private:
  std::size_t n_;
  std::vector<mpq_class> m_;
};

OrthogonalMap operator*(const OrthogonalMap& a, const OrthogonalMap& b);

/// Default bound on the size of a generated group.
inline constexpr std::size_t kMaxGroupOrder = 1'000'000;

/// Closure of the reflections in the given roots (breadth-first, identity
/// first, right multiplication by generators). Inner product is the
/// standard one. Throws ResourceError past max_order elements.
std::vector<OrthogonalMap> generate_from_reflections(const std::vector<LinearForm>& roots,
                                                     std::size_t max_order = kMaxGroupOrder);

}  // namespace gkm
