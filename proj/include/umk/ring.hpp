#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "umk/groebner.hpp"
#include "umk/poly.hpp"

namespace umk {

enum class RingKind { Zmod, PolyQuotient };

class Ring;
using RingHandle = std::shared_ptr<const Ring>;

class RingElement;

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  Ring(RingKind kind, PolyRing poly, std::vector<Poly> relations, std::size_t sdim,
       std::size_t groebner_budget = kDefaultGroebnerBudget);

  RingKind kind() const { return kind_; }
  const PolyRing& poly() const { return poly_; }
  const CoeffDomain& domain() const { return poly_.domain(); }
  const std::vector<Poly>& relations() const { return relations_; }
  const std::vector<Poly>& basis() const { return basis_; }
  std::size_t sdim() const { return sdim_; }
  bool is_finite() const { return finite_; }
  bool has_field_coefficients() const { return poly_.domain().is_field(); }

  // Textual description that make_ring parses back to an equal ring.
  const std::string& descriptor() const { return descriptor_; }
  bool same_as(const Ring& o) const { return this == &o || descriptor_ == o.descriptor_; }

  Poly reduce(const Poly& p) const;
  RingElement element(const Poly& p) const;
  RingElement zero() const;
  RingElement one() const;
  RingElement constant(long long c) const;
  RingElement constant(const mpq_class& c) const;
  RingElement variable(std::size_t i) const;
  RingElement variable(std::string_view name) const;
  RingElement parse(std::string_view text) const;

 private:
  RingKind kind_;
  PolyRing poly_;
  std::vector<Poly> relations_;
  std::vector<Poly> basis_;
  std::size_t sdim_;
  bool finite_ = false;
  std::string descriptor_;
};

class RingElement {
 public:
  RingElement() = default;
  RingElement(RingHandle ring, Poly normalized) : ring_(std::move(ring)), value_(std::move(normalized)) {}

  const RingHandle& ring() const { return ring_; }
  const Poly& poly() const { return value_; }
  bool valid() const { return ring_ != nullptr; }
  bool is_zero() const { return value_.empty(); }
  bool is_one() const;

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator-() const;
  RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
  RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
  RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
  RingElement pow(unsigned k) const;

  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  RingHandle ring_;
  Poly value_;
};

void require_same_ring(const RingHandle& a, const RingHandle& b);

RingHandle make_ring(std::string_view descriptor);
RingHandle make_zmod(std::uint64_t m, std::size_t sdim = 0);
RingHandle make_poly_ring(CoeffDomain dom, std::vector<std::string> vars,
                          const std::vector<std::string>& relations, MonomialOrder order,
                          std::size_t sdim);

// R[u]/(u f - 1) with a fresh variable name.
RingHandle localize(const RingHandle& R, const RingElement& f);

// R[t] with t appended as the last variable; sdim is sdim(R)+1.
RingHandle polynomial_extension(const RingHandle& R, const std::string& var = "t");

// Embeds an element of R into R[t] (or any extension whose variables extend R's).
RingElement embed(const RingElement& f, const RingHandle& extension);

// Substitutes value (in base) for the last variable of f's ring and lands in base.
RingElement substitute_last(const RingElement& f, const RingElement& value);

class Ideal {
 public:
  Ideal(RingHandle ring, std::vector<RingElement> gens,
        std::size_t budget = kDefaultGroebnerBudget);

  const RingHandle& ring() const { return ring_; }
  const std::vector<RingElement>& generators() const { return gens_; }
  // Groebner basis in the ambient polynomial ring, including the ring's relations.
  const std::vector<Poly>& groebner_basis() const { return gb_.basis; }
  bool contains(const RingElement& f) const;
  RingElement normal_form(const RingElement& f) const;
  bool is_unit_ideal() const;

 private:
  friend struct MembershipAccess;
  enum class Method { Groebner, Gcd, UnitOnly };
  RingHandle ring_;
  std::vector<RingElement> gens_;
  Method method_;
  GroebnerResult gb_;
  // Gcd method: gcd of the generators with the modulus and its Bezout coefficients.
  mpz_class gcd_;
  std::vector<mpz_class> bezout_;
  // UnitOnly method: cofactors of 1, when 1 is in the ideal.
  std::optional<std::vector<RingElement>> unit_cofactors_;
};

struct MembershipCertificate {
  RingElement target;
  std::vector<RingElement> generators;
  std::vector<RingElement> cofactors;

  bool verify() const;
};

std::optional<MembershipCertificate> membership_certificate(const RingElement& f, const Ideal& I);
std::optional<MembershipCertificate> membership_certificate(
    const RingElement& f, const std::vector<RingElement>& gens,
    std::size_t budget = kDefaultGroebnerBudget);

RingElement normal_form(const Poly& f, const Ideal& I);

}  // namespace umk
