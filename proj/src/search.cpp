#include "umk/search.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "umk/error.hpp"
#include "umk/finite.hpp"

namespace umk {

std::vector<RingElement> candidate_pool(const RingHandle& R, std::uint64_t seed,
                                        std::size_t max_size) {
  std::vector<RingElement> pool;
  auto push = [&](const RingElement& e) {
    for (const auto& p : pool)
      if (p == e) return;
    pool.push_back(e);
  };
  push(R->zero());
  // Small finite rings are searched exhaustively.
  std::size_t cap = max_size;
  std::vector<RingElement> all;
  auto size = finite_ring_size(R);
  const bool finite = size && *size <= kDefaultRingCap;
  if (finite) {
    all = enumerate_elements(R);
    cap = all.size();
  }
  for (long long k = 1; pool.size() < cap && k <= 6; ++k) {
    push(R->constant(k));
    if (pool.size() < cap) push(R->constant(-k));
  }
  if (finite) {
    for (const auto& e : all)
      if (pool.size() < cap) push(e);
  } else {
    const std::size_t nv = R->poly().nvars();
    std::vector<RingElement> extra;
    for (std::size_t i = 0; i < nv; ++i) {
      extra.push_back(R->variable(i));
      extra.push_back(-R->variable(i));
    }
    for (std::size_t i = 0; i < nv; ++i) {
      extra.push_back(R->variable(i) + R->one());
      extra.push_back(R->variable(i) - R->one());
    }
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t j = i; j < nv; ++j) extra.push_back(R->variable(i) * R->variable(j));
    for (const auto& e : extra)
      if (pool.size() < cap) push(e);
  }
  if (seed != 0 && pool.size() > 2) {
    std::mt19937_64 rng(seed);
    std::shuffle(pool.begin() + 1, pool.end(), rng);
  }
  return pool;
}

namespace {

bool visit_sum(std::size_t slot, std::size_t left, std::vector<std::size_t>& tuple,
               std::size_t pool, std::size_t budget, std::size_t& tried, const char* step,
               const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  const std::size_t slots = tuple.size();
  if (slot + 1 == slots || slots == 0) {
    if (slots) {
      if (left >= pool) return false;
      tuple[slot] = left;
    }
    if (tried >= budget)
      throw BudgetExceeded(std::string(step) + ": no certified candidate within budget " +
                           std::to_string(budget));
    ++tried;
    return visit(tuple);
  }
  const std::size_t rest_max = (slots - slot - 1) * (pool - 1);
  std::size_t hi = std::min(left, pool - 1);
  std::size_t lo = left > rest_max ? left - rest_max : 0;
  for (std::size_t v = hi + 1; v-- > lo;) {
    tuple[slot] = v;
    if (visit_sum(slot + 1, left - v, tuple, pool, budget, tried, step, visit)) return true;
  }
  return false;
}

}  // namespace

std::size_t spiral_search(std::size_t slots, std::size_t pool, std::size_t budget,
                          const char* step,
                          const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (pool == 0) throw Error("empty candidate pool");
  std::vector<std::size_t> tuple(slots, 0);
  std::size_t tried = 0;
  const std::size_t max_sum = slots * (pool - 1);
  for (std::size_t h = 0; h <= max_sum; ++h) {
    if (visit_sum(0, h, tuple, pool, budget, tried, step, visit)) return tried;
    if (slots == 0) break;
  }
  throw BudgetExceeded(std::string(step) + ": candidate space exhausted after " +
                       std::to_string(tried) + " tuples");
}

}  // namespace umk
