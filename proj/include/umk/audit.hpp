#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "umk/finite.hpp"
#include "umk/orbit.hpp"
#include "umk/search.hpp"

namespace umk {

enum class AuditKind {
  MS1,
  MS2,
  MS3,
  MS4,
  MS5,
  MS6,
  MS7,
  WmsWelldef,
  StarWelldef,
  Row1Hom,
  LeftAction,
  AdjointOrbit,
  Exactness,
};

std::string to_string(AuditKind k);
std::optional<AuditKind> parse_audit_kind(std::string_view tag);
const std::vector<AuditKind>& all_audit_kinds();

struct AuditLine {
  std::string tag;
  std::string rows;
  Verdict verdict;
  std::string detail;  // witness data for violations, empty otherwise
};

struct AuditReport {
  std::string ring;
  std::size_t n = 0;
  AuditKind what = AuditKind::MS1;
  std::vector<AuditLine> lines;
  std::size_t violations = 0;
  std::size_t unknown = 0;
  bool informative = false;  // violations are expected and do not indicate a defect (MS2)
  double seconds = 0;

  std::size_t instances() const { return lines.size(); }
  // "<tag> <ring> n=<n>: <k> instances, <v> violations, <u> unknown"
  std::string summary() const;
};

struct AuditOptions {
  SearchOptions search;
  std::size_t ring_cap = kDefaultRingCap;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
};

// Enumerates every instance of `what` over the finite ring R and decides each one through the
// orbit tables. Throws CapExceeded when R or an enumeration is over its cap, Unsupported for
// infinite rings, and PreconditionError when n is too small for the statement.
AuditReport audit(const RingHandle& R, std::size_t n, AuditKind what,
                  const AuditOptions& opts = {});

// One line per instance, then the summary; the runtime line only when `timing` is set.
std::string format_text(const AuditReport& r, bool timing = false);

// Trace-zero StarForm blocks over R with both shaped matrices unimodular, in code order.
struct StarBlocks {
  Matrix X, Y, Z;
};
std::vector<StarBlocks> enumerate_star_forms(const FiniteRingTable& F, std::size_t n,
                                             std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace umk
