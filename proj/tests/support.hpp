#pragma once

#include <random>
#include <vector>

#include "umk/matrix.hpp"
#include "umk/ring.hpp"

namespace umk::testing {

// Small random elements: integer combinations of monomials of degree <= max_deg.
inline RingElement random_element(const RingHandle& R, std::mt19937_64& rng, int max_deg = 2,
                                  int coeff = 3, int terms = 3) {
  std::uniform_int_distribution<int> c(-coeff, coeff);
  std::uniform_int_distribution<int> nterm(0, terms);
  const std::size_t nv = R->poly().nvars();
  RingElement acc = R->zero();
  int k = nterm(rng);
  for (int t = 0; t < k; ++t) {
    RingElement mono = R->constant(c(rng));
    if (nv) {
      std::uniform_int_distribution<int> deg(0, max_deg);
      std::uniform_int_distribution<std::size_t> var(0, nv - 1);
      int d = deg(rng);
      for (int e = 0; e < d; ++e) mono = mono * R->variable(var(rng));
    }
    acc += mono;
  }
  return acc;
}

inline Matrix random_matrix(const RingHandle& R, std::mt19937_64& rng, std::size_t m,
                            std::size_t n, int max_deg = 1) {
  Matrix M(R, m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = random_element(R, rng, max_deg);
  return M;
}

}  // namespace umk::testing
