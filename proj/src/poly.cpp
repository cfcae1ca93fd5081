#include "umk/poly.hpp"

#include <algorithm>
#include <sstream>

#include "umk/error.hpp"

namespace umk {

bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

CoeffDomain CoeffDomain::rationals() { return CoeffDomain{}; }

CoeffDomain CoeffDomain::modular(std::uint64_t m) {
  if (m < 2) throw Error("modulus must be at least 2");
  CoeffDomain d;
  d.modulus_ = m;
  d.prime_ = is_prime(m);
  d.mz_ = mpz_class(std::to_string(m));
  return d;
}

mpq_class CoeffDomain::normalize(const mpq_class& a) const {
  if (modulus_ == 0) return a;
  mpz_class num = a.get_num() % mz_;
  if (num < 0) num += mz_;
  mpz_class den = a.get_den() % mz_;
  if (den != 1) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mz_.get_mpz_t()) == 0)
      throw Error("denominator " + a.get_den().get_str() + " is not invertible modulo " +
                  mz_.get_str());
    num = (num * inv) % mz_;
  }
  return mpq_class(num);
}

mpq_class CoeffDomain::add(const mpq_class& a, const mpq_class& b) const {
  if (modulus_ == 0) return a + b;
  mpz_class r = a.get_num() + b.get_num();
  if (r >= mz_) r -= mz_;
  return mpq_class(r);
}

mpq_class CoeffDomain::sub(const mpq_class& a, const mpq_class& b) const {
  if (modulus_ == 0) return a - b;
  mpz_class r = a.get_num() - b.get_num();
  if (r < 0) r += mz_;
  return mpq_class(r);
}

mpq_class CoeffDomain::mul(const mpq_class& a, const mpq_class& b) const {
  if (modulus_ == 0) return a * b;
  mpz_class r = (a.get_num() * b.get_num()) % mz_;
  return mpq_class(r);
}

mpq_class CoeffDomain::neg(const mpq_class& a) const {
  if (modulus_ == 0) return -a;
  if (a == 0) return a;
  return mpq_class(mz_ - a.get_num());
}

std::optional<mpq_class> CoeffDomain::inverse(const mpq_class& a) const {
  if (a == 0) return std::nullopt;
  if (modulus_ == 0) return 1 / a;
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_num_mpz_t(), mz_.get_mpz_t()) == 0) return std::nullopt;
  return mpq_class(inv);
}

std::string CoeffDomain::name() const {
  if (modulus_ == 0) return "Q";
  return (prime_ ? "F" : "Z/") + std::to_string(modulus_);
}

Monomial::Monomial(std::vector<std::uint32_t> e) : exp(std::move(e)) {
  for (auto x : exp) deg += x;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (std::size_t i = 0; i < exp.size(); ++i)
    if (exp[i] > o.exp[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] += o.exp[i];
  r.deg += o.deg;
  return r;
}

Monomial Monomial::quotient(const Monomial& o) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] -= o.exp[i];
  r.deg -= o.deg;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(exp.size());
  for (std::size_t i = 0; i < exp.size(); ++i) {
    r.exp[i] = std::max(exp[i], o.exp[i]);
    r.deg += r.exp[i];
  }
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exp.size(); ++i)
    if (exp[i] && o.exp[i]) return false;
  return true;
}

PolyRing::PolyRing(CoeffDomain dom, std::vector<std::string> vars, MonomialOrder order)
    : domain_(std::move(dom)), vars_(std::move(vars)), order_(order) {}

int PolyRing::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.exp.size();
  if (order_ == MonomialOrder::Grevlex) {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    for (std::size_t k = n; k-- > 0;)
      if (a.exp[k] != b.exp[k]) return a.exp[k] < b.exp[k] ? 1 : -1;
    return 0;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (a.exp[k] != b.exp[k]) return a.exp[k] < b.exp[k] ? -1 : 1;
  return 0;
}

Poly PolyRing::constant(const mpq_class& c) const {
  mpq_class v = domain_.normalize(c);
  if (v == 0) return {};
  return {Term{Monomial(nvars()), v}};
}

Poly PolyRing::variable(std::size_t i) const {
  Monomial m(nvars());
  m.exp.at(i) = 1;
  m.deg = 1;
  return {Term{m, mpq_class(1)}};
}

Poly PolyRing::monomial(const Monomial& m, const mpq_class& c) const {
  mpq_class v = domain_.normalize(c);
  if (v == 0) return {};
  return {Term{m, v}};
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  Poly r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i].mono, b[j].mono);
    if (c > 0) {
      r.push_back(a[i++]);
    } else if (c < 0) {
      r.push_back(b[j++]);
    } else {
      mpq_class s = domain_.add(a[i].coeff, b[j].coeff);
      if (s != 0) r.push_back(Term{a[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back(b[j]);
  return r;
}

Poly PolyRing::neg(const Poly& a) const {
  Poly r = a;
  for (auto& t : r) t.coeff = domain_.neg(t.coeff);
  return r;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly PolyRing::scale(const Poly& a, const mpq_class& c) const {
  if (c == 0) return {};
  Poly r;
  r.reserve(a.size());
  for (const auto& t : a) {
    mpq_class v = domain_.mul(t.coeff, c);
    if (v != 0) r.push_back(Term{t.mono, v});
  }
  return r;
}

Poly PolyRing::mul_term(const Poly& a, const Monomial& m, const mpq_class& c) const {
  if (c == 0) return {};
  Poly r;
  r.reserve(a.size());
  for (const auto& t : a) {
    mpq_class v = domain_.mul(t.coeff, c);
    if (v != 0) r.push_back(Term{t.mono * m, v});
  }
  return r;
}

Poly PolyRing::sub_mul_term(const Poly& a, const Poly& b, const Monomial& m,
                            const mpq_class& c) const {
  Poly r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  Monomial bm;
  mpq_class bc;
  auto load = [&](std::size_t k) {
    bm = b[k].mono * m;
    bc = domain_.neg(domain_.mul(b[k].coeff, c));
  };
  if (j < b.size()) load(j);
  while (i < a.size() && j < b.size()) {
    int cmp = compare(a[i].mono, bm);
    if (cmp > 0) {
      r.push_back(a[i++]);
    } else if (cmp < 0) {
      if (bc != 0) r.push_back(Term{bm, bc});
      if (++j < b.size()) load(j);
    } else {
      mpq_class s = domain_.add(a[i].coeff, bc);
      if (s != 0) r.push_back(Term{a[i].mono, s});
      ++i;
      if (++j < b.size()) load(j);
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  while (j < b.size()) {
    if (bc != 0) r.push_back(Term{bm, bc});
    if (++j < b.size()) load(j);
  }
  return r;
}

Poly PolyRing::canonical(std::vector<Term> terms) const {
  for (auto& t : terms) t.coeff = domain_.normalize(t.coeff);
  std::sort(terms.begin(), terms.end(),
            [&](const Term& x, const Term& y) { return compare(x.mono, y.mono) > 0; });
  Poly r;
  for (auto& t : terms) {
    if (!r.empty() && r.back().mono == t.mono) {
      r.back().coeff = domain_.add(r.back().coeff, t.coeff);
      if (r.back().coeff == 0) r.pop_back();
    } else if (t.coeff != 0) {
      r.push_back(std::move(t));
    }
  }
  return r;
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  if (a.empty() || b.empty()) return {};
  if (a.size() < b.size()) return mul(b, a);
  Poly acc;
  for (const auto& t : b) acc = add(acc, mul_term(a, t.mono, t.coeff));
  return acc;
}

Poly PolyRing::pow(const Poly& a, unsigned k) const {
  Poly r = constant(1);
  Poly base = a;
  while (k) {
    if (k & 1u) r = mul(r, base);
    k >>= 1u;
    if (k) base = mul(base, base);
  }
  return r;
}

Poly PolyRing::monic(const Poly& a) const {
  if (a.empty()) return a;
  auto inv = domain_.inverse(a.front().coeff);
  if (!inv) throw Error("leading coefficient is not a unit");
  return scale(a, *inv);
}

std::uint32_t PolyRing::degree(const Poly& a) const {
  std::uint32_t d = 0;
  for (const auto& t : a) d = std::max(d, t.mono.deg);
  return d;
}

std::string coeff_to_string(const mpq_class& c) { return c.get_str(); }

std::string PolyRing::to_string(const Poly& a) const {
  if (a.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : a) {
    mpq_class c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool constant_term = t.mono.deg == 0;
    if (constant_term) {
      out << coeff_to_string(c);
      continue;
    }
    if (c != 1) out << coeff_to_string(c) << "*";
    bool first_var = true;
    for (std::size_t k = 0; k < t.mono.exp.size(); ++k) {
      if (!t.mono.exp[k]) continue;
      if (!first_var) out << "*";
      first_var = false;
      out << vars_[k];
      if (t.mono.exp[k] > 1) out << "^" << t.mono.exp[k];
    }
  }
  return out.str();
}

}  // namespace umk
