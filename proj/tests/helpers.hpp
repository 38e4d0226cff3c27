#pragma once

#include <random>

#include "gkm/poly.hpp"

namespace testutil {

/// Random homogeneous polynomial of degree k with small integer coefficients.
inline gkm::Polynomial random_homogeneous(std::mt19937& rng, gkm::Ring ring, std::size_t n_vars, unsigned k,
                                          int range = 3) {
  std::uniform_int_distribution<int> coef(-range, range);
  gkm::Polynomial p(ring, n_vars);
  for (const auto& m : gkm::monomials_of_degree(n_vars, k)) p.add_term(m, gkm::Coefficient(coef(rng)));
  return p;
}

inline gkm::Polynomial t(gkm::Ring ring, std::size_t n_vars, std::size_t i) {
  return gkm::Polynomial::variable(ring, n_vars, i - 1);
}

}  // namespace testutil
