#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "umk/matrix.hpp"

namespace umk {

inline constexpr std::size_t kDefaultRingCap = 81;
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

// Number of elements of a finite ring, or nullopt for infinite rings.
std::optional<std::uint64_t> finite_ring_size(const RingHandle& R);

// Every element, in index order: residues 0..m-1, or coefficient vectors over the standard
// monomials read as base-p numbers with the constant term least significant.
std::vector<RingElement> enumerate_elements(const RingHandle& R, std::size_t cap = kDefaultRingCap);

// Additive generators: {1} for Z/m, the standard monomials for Fp[x]/I.
std::vector<RingElement> additive_generators(const RingHandle& R);

class FiniteRingTable {
 public:
  explicit FiniteRingTable(const RingHandle& R, std::size_t cap = kDefaultRingCap);

  const RingHandle& ring() const { return ring_; }
  std::size_t size() const { return q_; }
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add(a, neg(b)); }
  bool is_unit(std::uint8_t a) const { return unit_[a]; }
  std::uint8_t zero() const { return 0; }
  std::uint8_t one() const { return one_; }
  const std::vector<std::uint8_t>& additive_generators() const { return additive_; }

  const RingElement& element(std::uint8_t i) const { return elements_[i]; }
  std::uint8_t index_of(const RingElement& e) const;

  // Ideal generated by a list of elements, as an id into a lattice cached by this table.
  int principal(std::uint8_t a) const { return principal_[a]; }
  int join(int I, int J) const;
  bool contains_one(int I) const { return ideal_has_one_[I]; }
  bool ideal_contains(int I, std::uint8_t a) const;

 private:
  int intern(std::vector<bool> bits) const;

  RingHandle ring_;
  std::size_t q_ = 0;
  std::vector<RingElement> elements_;
  std::unordered_map<std::string, std::uint8_t> index_;
  std::vector<std::uint8_t> add_, mul_, neg_;
  std::vector<bool> unit_;
  std::uint8_t one_ = 0;
  std::vector<std::uint8_t> additive_;
  std::vector<int> principal_;
  // Lazily grown ideal lattice; mutation is confined to this table.
  mutable std::vector<std::vector<bool>> ideals_;
  mutable std::vector<bool> ideal_has_one_;
  mutable std::vector<std::vector<int>> join_;
};

// Dense codes: entries row-major, first entry most significant, base |R|.
std::uint64_t encode(const FiniteRingTable& F, const std::vector<std::uint8_t>& digits);
std::vector<std::uint8_t> decode(const FiniteRingTable& F, std::uint64_t code, std::size_t count);
std::uint64_t encode_matrix(const FiniteRingTable& F, const Matrix& M);
Matrix decode_matrix(const FiniteRingTable& F, std::uint64_t code, std::size_t m, std::size_t n);

// Unimodularity by ideal closure: entries (m = 1) or 2 x 2 minors (m = 2) generate (1).
bool finite_unimodular(const FiniteRingTable& F, const std::vector<std::uint8_t>& digits,
                       std::size_t m, std::size_t n);

std::vector<std::uint64_t> enumerate_um(const FiniteRingTable& F, std::size_t m, std::size_t n,
                                        std::uint64_t cap = kDefaultEnumerationCap);

struct ColumnGenerator {
  std::size_t i, j;
  std::uint8_t t;
};

std::vector<ColumnGenerator> column_generators(const FiniteRingTable& F, std::size_t n,
                                               bool additive_only);

// Applies column j += t column i to an m x n code.
std::uint64_t apply_generator(const FiniteRingTable& F, std::uint64_t code, std::size_t m,
                              std::size_t n, const ColumnGenerator& g);
// Row i += t row j on a 2 x n code.
std::uint64_t apply_row_generator(const FiniteRingTable& F, std::uint64_t code, std::size_t n,
                                  std::size_t i, std::size_t j, std::uint8_t t);

// Orbit of `start` under the given generators, sorted ascending.
std::vector<std::uint64_t> orbit_bfs(const FiniteRingTable& F, std::uint64_t start, std::size_t m,
                                     std::size_t n, const std::vector<ColumnGenerator>& gens);

class OrbitTable {
 public:
  OrbitTable(const FiniteRingTable& F, std::size_t m, std::size_t n,
             std::uint64_t cap = kDefaultEnumerationCap);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  const std::vector<std::uint64_t>& elements() const { return codes_; }
  std::size_t orbit_count() const { return reps_.size(); }
  const std::vector<std::uint64_t>& representatives() const { return reps_; }
  const std::vector<std::uint64_t>& orbit_sizes() const { return sizes_; }
  std::size_t generator_count() const { return generators_; }

  bool contains(std::uint64_t code) const;
  // Orbit id of a unimodular code; -1 for codes outside the table.
  int orbit_of(std::uint64_t code) const;
  int orbit_of(const Matrix& M) const { return orbit_of(encode_matrix(*F_, M)); }
  std::uint64_t representative(int orbit) const { return reps_.at(orbit); }

 private:
  const FiniteRingTable* F_;
  std::size_t m_, n_;
  std::vector<std::uint64_t> codes_;
  std::vector<int> orbit_;
  std::vector<std::uint64_t> reps_;
  std::vector<std::uint64_t> sizes_;
  std::size_t generators_ = 0;
};

}  // namespace umk
