#include "umk/homotopy.hpp"

#include <sstream>

#include "umk/error.hpp"
#include "umk/parse.hpp"

namespace umk {

Matrix HomotopyWitness::at(const RingElement& value) const {
  require_same_ring(base, value.ring());
  Matrix out(base, 1, z.cols());
  for (std::size_t i = 0; i < z.cols(); ++i) out(0, i) = substitute_last(z(0, i), value);
  return out;
}

HomotopyWitness make_witness(const RingHandle& base, const RingHandle& extension, const Matrix& z) {
  require_same_ring(extension, z.ring());
  if (z.rows() != 1) throw ShapeError("a homotopy witness is a row");
  if (extension->poly().nvars() != base->poly().nvars() + 1)
    throw PreconditionError("witness ring must add exactly one variable to the base");
  return HomotopyWitness{base, extension, z, row_certificate(z)};
}

bool verify_homotopy(const HomotopyWitness& h, const Matrix& v, const Matrix& w) {
  require_same_ring(h.base, v.ring());
  require_same_ring(h.base, w.ring());
  if (v.cols() != h.n() || w.cols() != h.n() || v.rows() != 1 || w.rows() != 1) return false;
  if (!h.cert || !verify_split(h.cert->M(), h.cert->N()) || h.cert->M() != h.z) return false;
  return h.start() == v && h.end() == w;
}

HomotopyWitness homotopy_from_transcript(const SplitUnimodular& v, const Transcript& T,
                                         const std::string& var) {
  if (v.m() != 1) throw ShapeError("homotopy_from_transcript takes a row");
  const RingHandle& A = v.ring();
  RingHandle At = polynomial_extension(A, var);
  Transcript path = elementary_path(T, At);
  Matrix z0(At, 1, v.n()), b(At, v.n(), 1);
  for (std::size_t i = 0; i < v.n(); ++i) {
    z0(0, i) = embed(v.M()(0, i), At);
    b(i, 0) = embed(v.N()(i, 0), At);
  }
  Matrix z = apply_transcript(z0, path);
  SplitUnimodular cert(z, transcript_matrix(At, path.inverse()) * b);
  HomotopyWitness h{A, At, z, cert};
  if (!verify_homotopy(h, v.M(), apply_transcript(v.M(), T)))
    throw InvariantViolation("transcript homotopy fails its own endpoints");
  return h;
}

HomotopyWitness homotopy_from_transcript(const Matrix& v, const Transcript& T,
                                         const std::string& var) {
  return homotopy_from_transcript(require_unimodular(v, "v"), T, var);
}

std::string serialize(const HomotopyWitness& h, const std::optional<Matrix>& v,
                      const std::optional<Matrix>& w) {
  const auto& names = h.extension->poly().vars();
  std::string s = "ring: " + h.base->descriptor() + "\n";
  s += "param: " + names.back() + "\n";
  s += "z: " + h.z.to_string() + "\n";
  if (v) s += "v: " + v->to_string() + "\n";
  if (w) s += "w: " + w->to_string() + "\n";
  return s;
}

WitnessFile parse_witness(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line, ring, param = "t", z, v, w;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw ParseError("witness line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = trim(s.substr(0, colon)), val = trim(s.substr(colon + 1));
    if (key == "ring") ring = val;
    else if (key == "param") param = val;
    else if (key == "z") z = val;
    else if (key == "v") v = val;
    else if (key == "w") w = val;
    else throw ParseError("witness line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  if (ring.empty() || z.empty()) throw ParseError("witness needs 'ring:' and 'z:' lines");
  RingHandle A = make_ring(ring);
  RingHandle At = polynomial_extension(A, param);
  WitnessFile out{make_witness(A, At, parse_row(At, z)), std::nullopt, std::nullopt};
  if (!v.empty()) out.v = parse_row(A, v);
  if (!w.empty()) out.w = parse_row(A, w);
  return out;
}

}  // namespace umk
