#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "umk/ring.hpp"

namespace umk {

inline constexpr std::size_t kDefaultSearchBudget = 20000;

struct SearchOptions {
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultSearchBudget;  // candidate tuples tried per search step
  std::size_t groebner_budget = kDefaultGroebnerBudget;
};

// Small ring elements in a fixed order: 0, 1, -1, 2, -2, ..., then (for polynomial rings)
// variables, their negatives, shifted variables and pairwise products. Finite rings list
// every element once. A nonzero seed shuffles everything after 0.
std::vector<RingElement> candidate_pool(const RingHandle& R, std::uint64_t seed,
                                        std::size_t max_size = 24);

// Visits index tuples of length `slots` over [0, pool) ordered by index sum, the first slot
// varying slowest within each sum. Stops when visit returns true. Returns the number of
// tuples tried, or throws BudgetExceeded mentioning `step`.
std::size_t spiral_search(std::size_t slots, std::size_t pool, std::size_t budget,
                          const char* step,
                          const std::function<bool(const std::vector<std::size_t>&)>& visit);

}  // namespace umk
