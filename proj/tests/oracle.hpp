#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's linear algebra or polynomial code; graphs are read only for
// their vertex lists and edge labels.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "gkm/gkmgraph.hpp"
#include "gkm/intlinalg.hpp"

namespace oracle {

using Exps = std::vector<int>;

inline std::vector<Exps> monomials(int vars, int k) {
  if (k < 0) return {};
  Exps cur;
  std::vector<Exps> acc;
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == vars) {
      if (left == 0) acc.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur.push_back(e);
      rec(pos + 1, left - e);
      cur.pop_back();
    }
  };
  rec(0, k);
  return acc;
}

/// Rank over GF(p) of a sparse system given as rows of (column, value).
inline std::size_t rank_mod_p(std::vector<std::map<std::size_t, std::int64_t>> rows, std::int64_t p) {
  auto inv = [p](std::int64_t a) {
    std::int64_t r = 1, e = p - 2;
    a %= p;
    if (a < 0) a += p;
    while (e) {
      if (e & 1) r = static_cast<std::int64_t>((__int128)r * a % p);
      a = static_cast<std::int64_t>((__int128)a * a % p);
      e >>= 1;
    }
    return r;
  };
  std::map<std::size_t, std::map<std::size_t, std::int64_t>> pivots;  // pivot column -> normalized row
  std::size_t rank = 0;
  for (auto& row : rows) {
    for (auto it = row.begin(); it != row.end();) {
      it->second %= p;
      if (it->second < 0) it->second += p;
      it = it->second ? std::next(it) : row.erase(it);
    }
    while (!row.empty()) {
      auto lead = row.begin();
      auto piv = pivots.find(lead->first);
      if (piv == pivots.end()) {
        std::int64_t s = inv(lead->second);
        for (auto& [c, v] : row) v = static_cast<std::int64_t>((__int128)v * s % p);
        pivots.emplace(lead->first, std::move(row));
        ++rank;
        break;
      }
      std::int64_t factor = lead->second;
      for (const auto& [c, v] : piv->second) {
        std::int64_t nv = (row[c] - static_cast<std::int64_t>((__int128)factor * v % p)) % p;
        if (nv < 0) nv += p;
        if (nv) row[c] = nv; else row.erase(c);
      }
    }
  }
  return rank;
}

/// dim over GF(p) of the h-part of the solutions of the literal system
/// h(a) - h(b) = label * q_e (one witness polynomial per edge). Witnesses of
/// labels that vanish mod p are free and do not count.
inline std::size_t rank_over_prime(const gkm::LabeledGraph& g, int k, std::int64_t p) {
  const int nv = static_cast<int>(g.n_vars());
  auto mk = monomials(nv, k), mk1 = monomials(nv, k - 1);
  std::map<Exps, std::size_t> pos_k, pos_k1;
  for (std::size_t i = 0; i < mk.size(); ++i) pos_k[mk[i]] = i;
  for (std::size_t i = 0; i < mk1.size(); ++i) pos_k1[mk1[i]] = i;
  const std::size_t V = g.vertex_count(), E = g.edges().size();
  const std::size_t hcols = V * mk.size();
  const std::size_t cols = hcols + E * mk1.size();
  std::vector<std::map<std::size_t, std::int64_t>> rows;
  for (std::size_t e = 0; e < E; ++e) {
    const auto& edge = g.edges()[e];
    for (std::size_t m = 0; m < mk.size(); ++m) {
      std::map<std::size_t, std::int64_t> row;
      row[edge.a * mk.size() + m] += 1;
      row[edge.b * mk.size() + m] -= 1;
      for (int i = 0; i < nv; ++i) {
        if (mk[m][i] == 0 || edge.label[i] == 0) continue;
        Exps lower = mk[m];
        --lower[i];
        row[hcols + e * mk1.size() + pos_k1.at(lower)] -= edge.label[i];
      }
      rows.push_back(std::move(row));
    }
  }
  std::size_t free_witnesses = 0;
  for (const auto& edge : g.edges()) {
    bool vanishes = true;
    for (int i = 0; i < nv; ++i) vanishes = vanishes && edge.label[i] % p == 0;
    if (vanishes) free_witnesses += mk1.size();
  }
  return cols - rank_mod_p(std::move(rows), p) - free_witnesses;
}

/// dim over Q of H^{2k}, ranked modulo a large prime.
inline std::size_t rational_rank(const gkm::LabeledGraph& g, int k) {
  return rank_over_prime(g, k, 2305843009213693951LL);
}

/// Coefficients through u^K of prod(1 - u^a_i) / (1 - u)^(2n).
inline std::vector<long long> series(const std::vector<int>& factors, int n, int K) {
  std::vector<long long> s(K + 1, 0);
  s[0] = 1;
  for (int a : factors) {
    std::vector<long long> t = s;
    for (int j = a; j <= K; ++j) t[j] -= s[j - a];
    s = t;
  }
  for (int r = 0; r < 2 * n; ++r)
    for (int j = 1; j <= K; ++j) s[j] += s[j - 1];
  return s;
}

inline std::vector<long long> hilbert(gkm::Family f, int n, int K) {
  std::vector<int> a;
  switch (f) {
    case gkm::Family::A:
      for (int i = 1; i <= n; ++i) a.push_back(i);
      break;
    case gkm::Family::B:
    case gkm::Family::C:
      for (int i = 1; i <= n; ++i) a.push_back(2 * i);
      break;
    default:
      a.push_back(n);
      for (int i = 1; i < n; ++i) a.push_back(2 * i);
  }
  return series(a, n, K);
}

/// Element counts by brute force over sign vectors and permutations.
inline long long group_count(gkm::GroupFamily f, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  long long count = 0;
  do {
    if (f == gkm::GroupFamily::A) {
      ++count;
      continue;
    }
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      int neg = __builtin_popcount(mask);
      if (f == gkm::GroupFamily::Dplus && neg % 2) continue;
      if (f == gkm::GroupFamily::Dminus && neg % 2 == 0) continue;
      ++count;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

/// det of a square rational matrix by Gaussian elimination.
inline mpq_class det(std::vector<std::vector<mpq_class>> m) {
  const std::size_t n = m.size();
  mpq_class d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m[r][c] == 0) ++r;
    if (r == n) return 0;
    if (r != c) {
      std::swap(m[r], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

inline mpq_class gram_det(const gkm::IntMatrix& b) {
  std::vector<std::vector<mpq_class>> g(b.rows(), std::vector<mpq_class>(b.rows()));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) {
      mpz_class s = 0;
      for (std::size_t c = 0; c < b.cols(); ++c) s += b(i, c) * b(j, c);
      g[i][j] = s;
    }
  return det(std::move(g));
}

/// [sup : sub] for equal-rank lattices via Gram determinants:
/// index^2 = det(Gram(sub)) / det(Gram(sup)).
inline mpz_class gram_index(const gkm::IntMatrix& sub_basis, const gkm::IntMatrix& sup_basis) {
  mpq_class ratio = gram_det(sub_basis) / gram_det(sup_basis);
  mpz_class num = ratio.get_num();
  mpz_class root = sqrt(num);
  if (ratio.get_den() != 1 || root * root != num) return 0;
  return root;
}

}  // namespace oracle
