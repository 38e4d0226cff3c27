#include <doctest.h>

#include <random>

#include "gkm/errors.hpp"
#include "gkm/intlinalg.hpp"
#include "oracle.hpp"

using namespace gkm;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

mpz_class det_of(const IntMatrix& m) {
  std::vector<std::vector<mpq_class>> q(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q[i][j] = m(i, j);
  return oracle::det(q).get_num();
}

bool is_hnf(const HermiteResult& r) {
  std::size_t last_pivot = 0;
  for (std::size_t i = 0; i < r.h.rows(); ++i) {
    std::size_t p = 0;
    while (p < r.h.cols() && r.h(i, p) == 0) ++p;
    if (i >= r.rank) {
      if (p != r.h.cols()) return false;
      continue;
    }
    if (p == r.h.cols() || r.h(i, p) <= 0) return false;
    if (i > 0 && p <= last_pivot) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (r.h(k, p) < 0 || r.h(k, p) >= r.h(i, p)) return false;
    last_pivot = p;
  }
  return true;
}

}  // namespace

TEST_CASE("HNF of a small example") {
  IntMatrix m = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  auto r = hermite_normal_form(m);
  CHECK(r.rank == 3);
  CHECK(r.h == IntMatrix::from_rows({{2, 4, 4}, {0, 6, 0}, {0, 0, 12}}));
  CHECK(r.u * m == r.h);
}

TEST_CASE("property: HNF is echelon, reduced and unimodularly equivalent") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = 1 + trial % 5, cols = 1 + (trial * 7) % 6;
    IntMatrix m = random_matrix(rng, rows, cols, 6);
    if (trial % 4 == 0 && rows > 1)
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) * 3;
    auto r = hermite_normal_form(m);
    CHECK(is_hnf(r));
    CHECK(r.u * m == r.h);
    mpz_class d = det_of(r.u);
    CHECK(abs(d) == 1);
    CHECK(hermite_basis(m) == r.h.row_block(0, r.rank));
    // Canonical: the HNF of the HNF is itself.
    CHECK(hermite_normal_form(r.h).h == r.h);
  }
}

TEST_CASE("property: SNF divisibility chain and transforms") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = 1 + trial % 4, cols = 1 + (trial * 3) % 5;
    IntMatrix m = random_matrix(rng, rows, cols, 8);
    auto s = smith_normal_form(m);
    IntMatrix d = s.u * m * s.v;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        if (i == j) CHECK(d(i, j) == s.diag[i]);
        else CHECK(d(i, j) == 0);
      }
    for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) {
      CHECK(s.diag[i] >= 0);
      if (s.diag[i] != 0) CHECK(mpz_divisible_p(s.diag[i + 1].get_mpz_t(), s.diag[i].get_mpz_t()));
      else CHECK(s.diag[i + 1] == 0);
    }
    CHECK(abs(det_of(s.u)) == 1);
    CHECK(abs(det_of(s.v)) == 1);
  }
}

TEST_CASE("SNF of a known matrix") {
  auto s = smith_normal_form(IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}}));
  CHECK(s.diag == std::vector<mpz_class>{2, 2, 156});
}

TEST_CASE("kernel lattices are saturated") {
  IntMatrix m = IntMatrix::from_rows({{2, 4, 6}});
  Lattice k = kernel_basis(m);
  CHECK(k.rank() == 2);
  for (std::size_t i = 0; i < k.rank(); ++i) {
    mpz_class dot = 0;
    for (std::size_t j = 0; j < 3; ++j) dot += m(0, j) * k.basis()(i, j);
    CHECK(dot == 0);
  }
  CHECK(saturate(k) == k);
  CHECK(kernel_basis(IntMatrix(0, 3)) == Lattice::full(3));
  CHECK(kernel_basis(IntMatrix::identity(3)).rank() == 0);
}

TEST_CASE("property: kernel contains exactly the integral solutions") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    IntMatrix m = random_matrix(rng, 2, 4, 4);
    Lattice k = kernel_basis(m);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int probe = 0; probe < 30; ++probe) {
      std::vector<mpz_class> x(4);
      for (auto& v : x) v = d(rng);
      bool solves = true;
      for (std::size_t i = 0; i < 2; ++i) {
        mpz_class s = 0;
        for (std::size_t j = 0; j < 4; ++j) s += m(i, j) * x[j];
        solves = solves && s == 0;
      }
      CHECK(k.contains(x) == solves);
    }
  }
}

TEST_CASE("lattice containment, coordinates and index") {
  Lattice big = Lattice::from_generators(IntMatrix::from_rows({{1, 0}, {0, 1}}));
  Lattice small = Lattice::from_generators(IntMatrix::from_rows({{2, 0}, {1, 3}}));
  CHECK(big.contains(small));
  CHECK_FALSE(small.contains(big));
  CHECK(lattice_index(small, big).value == 6);
  CHECK(lattice_index(small, big).two_exponent() == 1);
  CHECK(lattice_index(small, big).odd_part().value == 3);
  CHECK_THROWS_AS(lattice_index(big, small), UsageError);
  Lattice line = Lattice::from_generators(IntMatrix::from_rows({{1, 1}}));
  CHECK(lattice_index(line, big).infinite);
  std::vector<mpz_class> v{3, 9};
  auto c = small.coordinates(v);
  mpz_class x = 0, y = 0;
  for (std::size_t i = 0; i < small.rank(); ++i) {
    x += c[i] * small.basis()(i, 0);
    y += c[i] * small.basis()(i, 1);
  }
  CHECK(x == 3);
  CHECK(y == 9);
  std::vector<mpz_class> outside{1, 0};
  CHECK_THROWS_AS(small.coordinates(outside), UsageError);
}

TEST_CASE("index agrees with the Gram determinant oracle") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix sup = random_matrix(rng, 3, 4, 3);
    Lattice L = Lattice::from_generators(sup);
    IntMatrix mult = random_matrix(rng, 3, L.rank(), 3);
    IntMatrix sub_gens = mult * L.basis();
    Lattice S = Lattice::from_generators(sub_gens);
    if (S.rank() != L.rank() || L.rank() == 0) continue;
    CHECK(lattice_index(S, L).value == oracle::gram_index(S.basis(), L.basis()));
  }
}

TEST_CASE("2-saturation and full saturation") {
  Lattice l = Lattice::from_generators(IntMatrix::from_rows({{4, 0}, {0, 6}}));
  Lattice s2 = saturate_at_2(l);
  CHECK(s2 == Lattice::from_generators(IntMatrix::from_rows({{1, 0}, {0, 3}})));
  CHECK(saturate(l) == Lattice::full(2));
  CHECK(lattice_index(l, s2).value == 8);
  Lattice diag = Lattice::from_generators(IntMatrix::from_rows({{2, 2}}));
  CHECK(saturate_at_2(diag) == Lattice::from_generators(IntMatrix::from_rows({{1, 1}})));
  CHECK(saturate_at_2(s2) == s2);
}

TEST_CASE("GF(2) spaces") {
  F2Space s = F2Space::from_generators(IntMatrix::from_rows({{1, 1, 0}, {3, 1, 2}, {0, 2, 4}}));
  CHECK(s.dim() == 1);
  std::vector<mpz_class> v{-1, 1, 0}, w{1, 0, 0};
  CHECK(s.contains(v));
  CHECK_FALSE(s.contains(w));
  F2Space k = f2_kernel(IntMatrix::from_rows({{1, 1, 0}, {0, 1, 1}}));
  CHECK(k.dim() == 1);
  std::vector<mpz_class> ones{1, 1, 1};
  CHECK(k.contains(ones));
  CHECK(F2Space::from_generators(k.basis()) == k);
  // wide rows cross the 64-bit word boundary
  IntMatrix wide(2, 130);
  wide(0, 0) = 1;
  wide(0, 129) = 1;
  wide(1, 129) = 1;
  F2Space ws = F2Space::from_generators(wide);
  CHECK(ws.dim() == 2);
  CHECK(f2_kernel(wide).dim() == 128);
}
