#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>

#include "umk/elementary.hpp"
#include "umk/finite.hpp"
#include "umk/search.hpp"

namespace umk {

enum class Verdict { Proven, Refuted, Unknown };
std::string to_string(Verdict v);

enum class OracleMode { Auto, Off };

// Budgeted bidirectional search for a column transcript carrying a to b. The budget counts
// expanded nodes; zero returns nullopt immediately.
std::optional<Transcript> connect_by_search(const Matrix& a, const Matrix& b,
                                            const SearchOptions& opts);

// Decides orbit equality under column moves: exactly over small finite rings via orbit
// tables, otherwise by transcript search (which can prove but never refute).
// Caches tables per instance; not safe for concurrent use of one instance.
class OrbitDecider {
 public:
  explicit OrbitDecider(OracleMode mode = OracleMode::Auto, std::size_t ring_cap = kDefaultRingCap,
                        std::uint64_t enumeration_cap = kDefaultEnumerationCap);

  Verdict same_orbit(const Matrix& a, const Matrix& b, const SearchOptions& opts = {});

  // Canonical orbit representative when an orbit table is available.
  std::optional<Matrix> canonical(const Matrix& M);

  // nullptr when the ring is infinite, too large, or the oracle is off.
  const FiniteRingTable* table(const RingHandle& R);
  const OrbitTable* orbits(const RingHandle& R, std::size_t m, std::size_t n);

 private:
  OracleMode mode_;
  std::size_t ring_cap_;
  std::uint64_t enumeration_cap_;
  std::map<std::string, std::unique_ptr<FiniteRingTable>> tables_;
  std::map<std::tuple<std::string, std::size_t, std::size_t>, std::unique_ptr<OrbitTable>> orbits_;
};

}  // namespace umk
