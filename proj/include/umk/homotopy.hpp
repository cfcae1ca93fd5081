#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "umk/elementary.hpp"
#include "umk/ummat.hpp"

namespace umk {

// z(t), a row over A[t] with t the last variable.
struct HomotopyWitness {
  RingHandle base;
  RingHandle extension;
  Matrix z;
  std::optional<SplitUnimodular> cert;  // empty when z is not unimodular over A[t]

  std::size_t n() const { return z.cols(); }
  Matrix at(const RingElement& value) const;  // value in the base ring
  Matrix start() const { return at(base->zero()); }
  Matrix end() const { return at(base->one()); }
};

// Certifies z over the extension; the witness keeps nullopt when that fails.
HomotopyWitness make_witness(const RingHandle& base, const RingHandle& extension, const Matrix& z);

bool verify_homotopy(const HomotopyWitness& h, const Matrix& v, const Matrix& w);

// z(t) = v alpha(t) for the elementary path alpha of T.
HomotopyWitness homotopy_from_transcript(const SplitUnimodular& v, const Transcript& T,
                                         const std::string& var = "t");
HomotopyWitness homotopy_from_transcript(const Matrix& v, const Transcript& T,
                                         const std::string& var = "t");

// Lines "ring: <A>", "param: <t>", "z: [...]", and optionally "v: [...]", "w: [...]".
struct WitnessFile {
  HomotopyWitness witness;
  std::optional<Matrix> v, w;
};
std::string serialize(const HomotopyWitness& h, const std::optional<Matrix>& v = std::nullopt,
                      const std::optional<Matrix>& w = std::nullopt);
WitnessFile parse_witness(std::string_view text);

}  // namespace umk
