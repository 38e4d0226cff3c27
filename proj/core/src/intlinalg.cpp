#include "gkm/intlinalg.hpp"

#include <algorithm>
#include <utility>

#include "gkm/errors.hpp"

namespace gkm {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw UsageError("IntMatrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long>(rows[r][c]);
  }
  return m;
}

void IntMatrix::append_row(std::span<const mpz_class> values) {
  if (values.size() != cols_) throw UsageError("IntMatrix::append_row: length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) mpz_swap((*this)(a, c).get_mpz_t(), (*this)(b, c).get_mpz_t());
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::row_block(std::size_t begin, std::size_t end) const {
  IntMatrix b(end - begin, cols_);
  for (std::size_t r = begin; r < end; ++r)
    for (std::size_t c = 0; c < cols_; ++c) b(r - begin, c) = (*this)(r, c);
  return b;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpz_class& x) { return x == 0; });
}

nlohmann::json IntMatrix::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t r = 0; r < rows_; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < cols_; ++c) row.push_back((*this)(r, c).get_str());
    j.push_back(std::move(row));
  }
  return j;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw UsageError("IntMatrix product: dimension mismatch");
  IntMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const mpz_class& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) mpz_addmul(p(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
    }
  return p;
}

namespace {

// row[dst] -= q * row[src], from column `from` on.
void row_submul(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q, std::size_t from = 0) {
  for (std::size_t c = from; c < m.cols(); ++c) {
    const mpz_class& s = m(src, c);
    if (s != 0) mpz_submul(m(dst, c).get_mpz_t(), q.get_mpz_t(), s.get_mpz_t());
  }
}

void row_negate(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) mpz_neg(m(r, c).get_mpz_t(), m(r, c).get_mpz_t());
}

void col_submul(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const mpz_class& s = m(r, src);
    if (s != 0) mpz_submul(m(r, dst).get_mpz_t(), q.get_mpz_t(), s.get_mpz_t());
  }
}

void col_swap(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) mpz_swap(m(r, a).get_mpz_t(), m(r, b).get_mpz_t());
}

// Row echelon form by unimodular row operations, pivoting on the entry of
// least absolute value. When `reduce_above` is set the result is the HNF.
// Row operations are mirrored on `transform` when it is non-null.
std::size_t echelonize(IntMatrix& a, IntMatrix* transform, bool reduce_above) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t pr = 0;
  mpz_class q;
  for (std::size_t col = 0; col < cols && pr < rows; ++col) {
    bool have_pivot = false;
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = pr; i < rows; ++i) {
        if (a(i, col) == 0) continue;
        if (best == rows || mpz_cmpabs(a(i, col).get_mpz_t(), a(best, col).get_mpz_t()) < 0) best = i;
      }
      if (best == rows) break;
      have_pivot = true;
      a.swap_rows(pr, best);
      if (transform) transform->swap_rows(pr, best);
      bool residue = false;
      for (std::size_t i = pr + 1; i < rows; ++i) {
        if (a(i, col) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, col).get_mpz_t(), a(pr, col).get_mpz_t());
        row_submul(a, i, pr, q, col);
        if (transform) row_submul(*transform, i, pr, q);
        if (a(i, col) != 0) residue = true;
      }
      if (!residue) break;
    }
    if (!have_pivot) continue;
    if (a(pr, col) < 0) {
      row_negate(a, pr);
      if (transform) row_negate(*transform, pr);
    }
    if (reduce_above) {
      for (std::size_t i = 0; i < pr; ++i) {
        if (a(i, col) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a(i, col).get_mpz_t(), a(pr, col).get_mpz_t());
        if (q == 0) continue;
        row_submul(a, i, pr, q, col);
        if (transform) row_submul(*transform, i, pr, q);
      }
    }
    ++pr;
  }
  return pr;
}

}  // namespace

HermiteResult hermite_normal_form(const IntMatrix& m) {
  HermiteResult r{m, IntMatrix::identity(m.rows()), 0};
  r.rank = echelonize(r.h, &r.u, true);
  return r;
}

IntMatrix hermite_basis(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t rank = echelonize(a, nullptr, true);
  return a.row_block(0, rank);
}

SmithResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  SmithResult res{{}, IntMatrix::identity(rows), IntMatrix::identity(cols)};
  const std::size_t n = std::min(rows, cols);
  mpz_class q;
  for (std::size_t t = 0; t < n; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto place_min = [&]() -> bool {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (bi == rows || mpz_cmpabs(a(i, j).get_mpz_t(), a(bi, bj).get_mpz_t()) < 0)) bi = i, bj = j;
      if (bi == rows) return false;
      a.swap_rows(t, bi);
      res.u.swap_rows(t, bi);
      col_swap(a, t, bj);
      col_swap(res.v, t, bj);
      return true;
    };
    if (!place_min()) break;
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        row_submul(a, i, t, q);
        row_submul(res.u, i, t, q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        col_submul(a, j, t, q);
        col_submul(res.v, j, t, q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        place_min();
        continue;
      }
      // Divisibility condition d_t | every trailing entry.
      std::size_t bad_row = rows;
      for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == rows) break;
      mpz_class minus_one(-1);
      row_submul(a, t, bad_row, minus_one);
      row_submul(res.u, t, bad_row, minus_one);
    }
    if (a(t, t) < 0) {
      row_negate(a, t);
      row_negate(res.u, t);
    }
  }
  res.diag.resize(n);
  for (std::size_t t = 0; t < n; ++t) res.diag[t] = a(t, t);
  return res;
}

// ---------------------------------------------------------------------------
// Lattices

Lattice Lattice::from_generators(const IntMatrix& generators) {
  Lattice l(generators.cols());
  l.basis_ = hermite_basis(generators);
  return l;
}

Lattice Lattice::full(std::size_t ambient) {
  Lattice l(ambient);
  l.basis_ = IntMatrix::identity(ambient);
  return l;
}

namespace {

// Reduces v against an HNF basis; returns false when v leaves the lattice.
bool reduce_against(const IntMatrix& basis, std::vector<mpz_class>& v, std::vector<mpz_class>* coords) {
  mpz_class q;
  std::size_t col = 0;
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    while (basis(r, col) == 0) {
      if (v[col] != 0) return false;
      ++col;
    }
    if (!mpz_divisible_p(v[col].get_mpz_t(), basis(r, col).get_mpz_t())) return false;
    mpz_divexact(q.get_mpz_t(), v[col].get_mpz_t(), basis(r, col).get_mpz_t());
    if (coords) (*coords)[r] = q;
    if (q != 0)
      for (std::size_t c = col; c < v.size(); ++c)
        if (basis(r, c) != 0) mpz_submul(v[c].get_mpz_t(), q.get_mpz_t(), basis(r, c).get_mpz_t());
    ++col;
  }
  return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
}

}  // namespace

bool Lattice::contains(std::span<const mpz_class> v) const {
  if (v.size() != ambient_) throw UsageError("Lattice::contains: dimension mismatch");
  std::vector<mpz_class> w(v.begin(), v.end());
  return reduce_against(basis_, w, nullptr);
}

bool Lattice::contains(const Lattice& other) const {
  if (other.ambient_ != ambient_) throw UsageError("Lattice::contains: ambient mismatch");
  for (std::size_t r = 0; r < other.rank(); ++r)
    if (!contains(other.basis_.row(r))) return false;
  return true;
}

std::vector<mpz_class> Lattice::coordinates(std::span<const mpz_class> v) const {
  if (v.size() != ambient_) throw UsageError("Lattice::coordinates: dimension mismatch");
  std::vector<mpz_class> w(v.begin(), v.end());
  std::vector<mpz_class> coords(rank());
  if (!reduce_against(basis_, w, &coords)) throw UsageError("vector is not in the lattice");
  return coords;
}

Lattice kernel_basis(const IntMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return Lattice::full(n);
  // Row-reduce m^T with transform T; T * m^T = E. The rows of T opposite
  // zero rows of E span the kernel, and T is unimodular, so they form a
  // basis of a saturated sublattice.
  IntMatrix a = m.transposed();
  IntMatrix t = IntMatrix::identity(n);
  std::size_t rank = echelonize(a, &t, false);
  return Lattice::from_generators(t.row_block(rank, n));
}

Lattice project_lattice(const Lattice& l, std::span<const std::size_t> coords) {
  IntMatrix g(l.rank(), coords.size());
  for (std::size_t r = 0; r < l.rank(); ++r)
    for (std::size_t c = 0; c < coords.size(); ++c) {
      if (coords[c] >= l.ambient_rank()) throw UsageError("project_lattice: coordinate out of range");
      g(r, c) = l.basis()(r, coords[c]);
    }
  return Lattice::from_generators(g);
}

LatticeIndex LatticeIndex::odd_part() const {
  if (infinite) return *this;
  LatticeIndex r = *this;
  if (r.value != 0) mpz_tdiv_q_2exp(r.value.get_mpz_t(), value.get_mpz_t(), two_exponent());
  return r;
}

unsigned LatticeIndex::two_exponent() const {
  if (infinite || value == 0) return 0;
  return static_cast<unsigned>(mpz_scan1(value.get_mpz_t(), 0));
}

std::string LatticeIndex::to_string() const { return infinite ? "infinite" : value.get_str(); }

LatticeIndex lattice_index(const Lattice& sub, const Lattice& sup) {
  if (!sup.contains(sub)) throw UsageError("lattice_index: sub is not contained in sup");
  LatticeIndex idx;
  if (sub.rank() != sup.rank()) {
    idx.infinite = true;
    idx.value = 0;
    return idx;
  }
  const std::size_t r = sub.rank();
  IntMatrix c(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    auto coords = sup.coordinates(sub.basis().row(i));
    for (std::size_t j = 0; j < r; ++j) c(i, j) = coords[j];
  }
  auto snf = smith_normal_form(c);
  idx.value = 1;
  for (const auto& d : snf.diag) idx.value *= d;
  return idx;
}

Lattice saturate_at_2(const Lattice& l) {
  Lattice cur = l;
  for (;;) {
    // Combinations of basis rows that vanish mod 2 give new vectors x with 2x in cur.
    F2Space left = f2_kernel(cur.basis().transposed());
    if (left.dim() == 0) return cur;
    IntMatrix combos = left.basis();
    IntMatrix gens = cur.basis();
    std::vector<mpz_class> v(cur.ambient_rank());
    for (std::size_t k = 0; k < combos.rows(); ++k) {
      std::fill(v.begin(), v.end(), mpz_class(0));
      for (std::size_t i = 0; i < combos.cols(); ++i)
        if (combos(k, i) != 0)
          for (std::size_t c = 0; c < v.size(); ++c) v[c] += cur.basis()(i, c);
      for (auto& x : v) mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), 2);
      gens.append_row(v);
    }
    cur = Lattice::from_generators(gens);
  }
}

Lattice saturate(const Lattice& l) {
  // Integer vectors orthogonal to the kernel of the basis matrix.
  Lattice perp = kernel_basis(l.basis().rows() ? l.basis() : IntMatrix(0, l.ambient_rank()));
  if (l.rank() == 0) return Lattice(l.ambient_rank());
  return kernel_basis(perp.basis().rows() ? perp.basis() : IntMatrix(0, l.ambient_rank()));
}

// ---------------------------------------------------------------------------
// GF(2)

namespace {

constexpr std::size_t kWord = 64;

bool bit(const std::vector<std::uint64_t>& r, std::size_t i) { return (r[i / kWord] >> (i % kWord)) & 1U; }

std::vector<std::uint64_t> pack_mod2(std::span<const mpz_class> v) {
  std::vector<std::uint64_t> r((v.size() + kWord - 1) / kWord, 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (mpz_odd_p(v[i].get_mpz_t())) r[i / kWord] |= std::uint64_t{1} << (i % kWord);
  return r;
}

std::size_t first_bit(const std::vector<std::uint64_t>& r) {
  for (std::size_t w = 0; w < r.size(); ++w)
    if (r[w]) return w * kWord + static_cast<std::size_t>(__builtin_ctzll(r[w]));
  return static_cast<std::size_t>(-1);
}

}  // namespace

bool F2Space::reduce(Row& r) const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (bit(r, pivots_[i]))
      for (std::size_t w = 0; w < r.size(); ++w) r[w] ^= rows_[i][w];
  return std::all_of(r.begin(), r.end(), [](std::uint64_t w) { return w == 0; });
}

void F2Space::insert(Row r) {
  if (reduce(r)) return;
  std::size_t p = first_bit(r);
  // Keep reduced form: clear the new pivot from existing rows.
  for (auto& row : rows_)
    if (bit(row, p))
      for (std::size_t w = 0; w < row.size(); ++w) row[w] ^= r[w];
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(r));
}

F2Space F2Space::from_generators(const IntMatrix& generators) {
  F2Space s(generators.cols());
  for (std::size_t r = 0; r < generators.rows(); ++r) s.insert(pack_mod2(generators.row(r)));
  return s;
}

bool F2Space::contains(std::span<const mpz_class> v) const {
  if (v.size() != ambient_) throw UsageError("F2Space::contains: dimension mismatch");
  Row r = pack_mod2(v);
  return reduce(r);
}

bool F2Space::contains(const F2Space& other) const {
  for (auto r : other.rows_)
    if (!reduce(r)) return false;
  return true;
}

IntMatrix F2Space::basis() const {
  IntMatrix m(rows_.size(), ambient_);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (std::size_t c = 0; c < ambient_; ++c)
      if (bit(rows_[r], c)) m(r, c) = 1;
  return m;
}

F2Space f2_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  F2Space rowspace = F2Space::from_generators(m);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : rowspace.pivots_) is_pivot[p] = true;
  F2Space ker(n);
  // RREF: for each free column f, x_f = 1 and x_p = row_p[f] for pivots p.
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    F2Space::Row x((n + kWord - 1) / kWord, 0);
    x[f / kWord] |= std::uint64_t{1} << (f % kWord);
    for (std::size_t i = 0; i < rowspace.rows_.size(); ++i)
      if (bit(rowspace.rows_[i], f)) {
        std::size_t p = rowspace.pivots_[i];
        x[p / kWord] |= std::uint64_t{1} << (p % kWord);
      }
    ker.insert(std::move(x));
  }
  return ker;
}

}  // namespace gkm
