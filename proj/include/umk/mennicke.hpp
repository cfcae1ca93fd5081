#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umk/elementary.hpp"
#include "umk/orbit.hpp"
#include "umk/search.hpp"
#include "umk/ummat.hpp"

namespace umk {

// v eps = (x, tail), w delta = (y, tail), x + y = 1.
struct NormalizedPair {
  Matrix v, w;
  Transcript eps, delta;
  RingElement x, y;
  std::vector<RingElement> tail;
  SplitUnimodular v_cert, w_cert;  // certificates of the normalized rows

  Matrix v_normalized() const { return v_cert.M(); }
  Matrix w_normalized() const { return w_cert.M(); }
  // Replays both transcripts and rechecks every postcondition; throws InvariantViolation.
  void verify() const;
};

// Requires n >= 3 and sdim <= 2n - 3.
NormalizedPair normalize_pair(const SplitUnimodular& v, const SplitUnimodular& w,
                              const SearchOptions& opts = {});
NormalizedPair normalize_pair(const Matrix& v, const Matrix& w, const SearchOptions& opts = {});

struct WmsProduct {
  NormalizedPair pair;
  SplitUnimodular product;  // (x y, tail)
};

// Requires sdim <= 2n - 4.
WmsProduct wms_mul(const SplitUnimodular& v, const SplitUnimodular& w,
                   const SearchOptions& opts = {});
WmsProduct wms_mul(const Matrix& v, const Matrix& w, const SearchOptions& opts = {});

// (-a1, a2, ..., an) times (b1^2, a2, ..., an).
WmsProduct wms_inverse(const SplitUnimodular& s, const SearchOptions& opts = {});

enum class Relation { MS1, MS2, MS3, MS4, MS5, MS6, MS7 };
std::string to_string(Relation r);
std::optional<Relation> parse_relation(std::string_view tag);

// One instance of a relation: the product of `factors` should share an orbit with `rhs`.
struct RelationInstance {
  Relation tag;
  std::vector<Matrix> factors;
  Matrix rhs;
  std::optional<MembershipCertificate> witness;  // MS5 side condition

  // "<factor>*<factor>=<rhs>"
  std::string rows() const;
};

// Builders check the side conditions and certify every participating row; they throw
// PreconditionError or NotUnimodularError.
RelationInstance ms1_instance(const Matrix& v, const Transcript& eps);
RelationInstance ms2_instance(const RingElement& x, const RingElement& y,
                              const std::vector<RingElement>& tail);
RelationInstance ms3_instance(const RingElement& x, const RingElement& y,
                              const std::vector<RingElement>& tail);
RelationInstance ms4_instance(const RingElement& f, const RingElement& g,
                              const std::vector<RingElement>& tail);
RelationInstance ms5_instance(const RingElement& r, const RingElement& q,
                              const std::vector<RingElement>& tail);
RelationInstance ms6_instance(const RingElement& x, const std::vector<RingElement>& tail);
RelationInstance ms7_instance(const RingElement& x, const std::vector<RingElement>& tail, int m);

// Multiplies the factors with wms_mul (after replacing each by its canonical orbit
// representative when the decider has a table) and compares orbits with rhs. Search budget
// failures give Unknown.
Verdict check_relation(const RelationInstance& inst, OrbitDecider& decider,
                       const SearchOptions& opts = {});

// The left-hand product used by check_relation.
SplitUnimodular relation_product(const RelationInstance& inst, OrbitDecider& decider,
                                 const SearchOptions& opts = {});

}  // namespace umk
