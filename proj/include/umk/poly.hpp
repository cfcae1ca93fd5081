#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace umk {

// Coefficients: Q, or residues modulo m stored as integers in [0, m).
class CoeffDomain {
 public:
  static CoeffDomain rationals();
  static CoeffDomain modular(std::uint64_t m);

  bool is_rational() const { return modulus_ == 0; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_field() const { return modulus_ == 0 || prime_; }

  mpq_class normalize(const mpq_class& a) const;
  mpq_class add(const mpq_class& a, const mpq_class& b) const;
  mpq_class sub(const mpq_class& a, const mpq_class& b) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const;
  mpq_class neg(const mpq_class& a) const;
  std::optional<mpq_class> inverse(const mpq_class& a) const;

  std::string name() const;
  bool operator==(const CoeffDomain& o) const { return modulus_ == o.modulus_; }

 private:
  std::uint64_t modulus_ = 0;
  bool prime_ = false;
  mpz_class mz_;
};

bool is_prime(std::uint64_t m);

enum class MonomialOrder { Grevlex, Lex };

struct Monomial {
  std::vector<std::uint32_t> exp;
  std::uint32_t deg = 0;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exp(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e);

  bool operator==(const Monomial& o) const { return exp == o.exp; }
  bool divides(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  Monomial quotient(const Monomial& o) const;  // this / o, requires o | this
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
};

struct Term {
  Monomial mono;
  mpq_class coeff;
};

// Terms sorted strictly decreasing under the ring's order; no zero coefficients.
using Poly = std::vector<Term>;

class PolyRing {
 public:
  PolyRing() = default;
  PolyRing(CoeffDomain dom, std::vector<std::string> vars, MonomialOrder order);

  const CoeffDomain& domain() const { return domain_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  MonomialOrder order() const { return order_; }

  int compare(const Monomial& a, const Monomial& b) const;

  Poly zero() const { return {}; }
  Poly constant(const mpq_class& c) const;
  Poly variable(std::size_t i) const;
  Poly monomial(const Monomial& m, const mpq_class& c) const;

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, const mpq_class& c) const;
  Poly mul_term(const Poly& a, const Monomial& m, const mpq_class& c) const;
  Poly pow(const Poly& a, unsigned k) const;
  // a - c*m*b in one pass
  Poly sub_mul_term(const Poly& a, const Poly& b, const Monomial& m, const mpq_class& c) const;

  // Sorts, merges like terms and drops zeros.
  Poly canonical(std::vector<Term> terms) const;

  // Rescales so the leading coefficient is 1; requires the leading coefficient to be a unit.
  Poly monic(const Poly& a) const;

  std::uint32_t degree(const Poly& a) const;
  std::string to_string(const Poly& a) const;

  bool operator==(const PolyRing& o) const {
    return domain_ == o.domain_ && vars_ == o.vars_ && order_ == o.order_;
  }

 private:
  CoeffDomain domain_ = CoeffDomain::rationals();
  std::vector<std::string> vars_;
  MonomialOrder order_ = MonomialOrder::Grevlex;
};

std::string coeff_to_string(const mpq_class& c);

}  // namespace umk
