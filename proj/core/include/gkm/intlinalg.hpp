#pragma once

// Exact integer matrices, Hermite/Smith normal forms and lattices in Z^N.
// Lattices are always held in row-style Hermite normal form, so two
// lattices are equal exactly when their stored bases are equal.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

namespace gkm {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<mpz_class> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const mpz_class> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const mpz_class> values);
  void swap_rows(std::size_t a, std::size_t b);
  IntMatrix transposed() const;
  /// Rows [begin, end) as a new matrix.
  IntMatrix row_block(std::size_t begin, std::size_t end) const;
  bool is_zero() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  nlohmann::json to_json() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

struct HermiteResult {
  IntMatrix h;       ///< row-style HNF, same shape as the input, zero rows last
  IntMatrix u;       ///< unimodular, h = u * m
  std::size_t rank;  ///< number of nonzero rows of h
};

/// Row-style Hermite normal form: echelon, positive pivots, entries above
/// each pivot reduced into [0, pivot). Canonical for the row lattice.
HermiteResult hermite_normal_form(const IntMatrix& m);
/// Nonzero rows of the HNF only; skips the transform.
IntMatrix hermite_basis(const IntMatrix& m);

struct SmithResult {
  std::vector<mpz_class> diag;  ///< min(rows, cols) invariant factors, d1 | d2 | ..., zeros last
  IntMatrix u;                  ///< unimodular rows x rows
  IntMatrix v;                  ///< unimodular cols x cols; u * m * v = diag
};

SmithResult smith_normal_form(const IntMatrix& m);

class Lattice {
 public:
  /// The zero lattice in Z^ambient.
  explicit Lattice(std::size_t ambient = 0) : ambient_(ambient), basis_(0, ambient) {}

  /// Row lattice of the given generators (HNF-canonicalized).
  static Lattice from_generators(const IntMatrix& generators);
  static Lattice full(std::size_t ambient);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  bool contains(std::span<const mpz_class> v) const;
  bool contains(const Lattice& other) const;
  /// Coordinates of v in the stored basis; throws UsageError if v is not in the lattice.
  std::vector<mpz_class> coordinates(std::span<const mpz_class> v) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  std::size_t ambient_;
  IntMatrix basis_;
};

/// Saturated basis of {x in Z^cols : m x = 0}.
Lattice kernel_basis(const IntMatrix& m);

/// Image of the lattice under the coordinate projection onto `coords` (in
/// the given order).
Lattice project_lattice(const Lattice& l, std::span<const std::size_t> coords);

/// [sup : sub], or infinite when the ranks differ.
struct LatticeIndex {
  bool infinite = false;
  mpz_class value{1};

  bool is_one() const { return !infinite && value == 1; }
  /// Index after inverting 2: the odd part of value.
  LatticeIndex odd_part() const;
  /// 2-adic valuation of a finite index.
  unsigned two_exponent() const;
  std::string to_string() const;
  friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;
};

/// Throws UsageError unless sub is contained in sup.
LatticeIndex lattice_index(const Lattice& sub, const Lattice& sup);

/// {x in Z^N : 2^j x in l for some j}.
Lattice saturate_at_2(const Lattice& l);
/// (rational span of l) intersected with Z^N.
Lattice saturate(const Lattice& l);

/// A subspace of GF(2)^N in reduced row echelon form (canonical).
class F2Space {
 public:
  explicit F2Space(std::size_t ambient = 0) : ambient_(ambient) {}

  /// Row space of the generators read mod 2.
  static F2Space from_generators(const IntMatrix& generators);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  bool contains(std::span<const mpz_class> v) const;
  bool contains(const F2Space& other) const;
  /// Basis as a 0/1 integer matrix.
  IntMatrix basis() const;

  friend bool operator==(const F2Space&, const F2Space&) = default;

 private:
  friend F2Space f2_kernel(const IntMatrix& m);
  using Row = std::vector<std::uint64_t>;
  void insert(Row r);
  bool reduce(Row& r) const;  // true iff r reduces to zero

  std::size_t ambient_;
  std::vector<Row> rows_;          // sorted by pivot
  std::vector<std::size_t> pivots_;
};

/// {x in GF(2)^cols : m x = 0 mod 2}.
F2Space f2_kernel(const IntMatrix& m);

}  // namespace gkm
