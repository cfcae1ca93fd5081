#include "umk/ring.hpp"

#include <algorithm>
#include <sstream>

#include "umk/error.hpp"
#include "umk/parse.hpp"

namespace umk {

namespace {

bool poly_equal(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].mono == b[i].mono) || a[i].coeff != b[i].coeff) return false;
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

Poly change_domain(const Poly& p, const PolyRing& target) {
  std::vector<Term> terms;
  for (const auto& t : p) terms.push_back(Term{t.mono, t.coeff});
  return target.canonical(std::move(terms));
}

Poly pad(const Poly& p, std::size_t nvars) {
  Poly r;
  r.reserve(p.size());
  for (const auto& t : p) {
    auto e = t.mono.exp;
    e.resize(nvars, 0);
    r.push_back(Term{Monomial(std::move(e)), t.coeff});
  }
  return r;
}

// Cofactors of 1 in (gens) over Z/m[vars], m composite, zero relation ideal.
std::optional<std::vector<Poly>> unit_cofactors_composite(const PolyRing& R,
                                                          const std::vector<Poly>& gens) {
  const std::uint64_t m = R.domain().modulus();
  std::vector<Poly> total(gens.size());
  const mpz_class mz(std::to_string(m));
  for (auto [p, e] : factor(m)) {
    PolyRing Rp(CoeffDomain::modular(p), R.vars(), R.order());
    std::vector<Poly> gp;
    for (const auto& g : gens) gp.push_back(change_domain(g, Rp));
    GroebnerOptions o;
    o.track = true;
    GroebnerResult res = groebner(Rp, {}, gp, o);
    if (res.basis.size() != 1 || res.basis[0].size() != 1 || res.basis[0][0].mono.deg != 0)
      return std::nullopt;
    std::vector<Poly> cof;
    for (const auto& c : res.cofactors[0]) cof.push_back(change_domain(c, R));
    Poly s;
    for (std::size_t i = 0; i < gens.size(); ++i) s = R.add(s, R.mul(cof[i], gens[i]));
    Poly u = R.sub(s, R.constant(1));
    Poly inv = R.constant(1);
    Poly power = R.constant(1);
    Poly minus_u = R.neg(u);
    for (unsigned k = 1; k < e; ++k) {
      power = R.mul(power, minus_u);
      inv = R.add(inv, power);
    }
    mpz_class pe = 1;
    for (unsigned k = 0; k < e; ++k) pe *= static_cast<unsigned long>(p);
    mpz_class rest = mz / pe;
    mpz_class rinv;
    mpz_invert(rinv.get_mpz_t(), rest.get_mpz_t(), pe.get_mpz_t());
    mpz_class eps = (rest * rinv) % mz;
    Poly factor_poly = R.scale(inv, mpq_class(eps));
    for (std::size_t i = 0; i < gens.size(); ++i)
      total[i] = R.add(total[i], R.mul(factor_poly, cof[i]));
  }
  return total;
}

std::string build_descriptor(RingKind kind, const PolyRing& P, const std::vector<Poly>& basis,
                             std::size_t sdim) {
  std::ostringstream out;
  if (kind == RingKind::Zmod) {
    out << "zmod " << P.domain().modulus() << " sdim " << sdim;
    return out.str();
  }
  out << "poly " << P.domain().name() << "[";
  for (std::size_t i = 0; i < P.nvars(); ++i) out << (i ? "," : "") << P.vars()[i];
  out << "]/(";
  if (basis.empty()) out << "0";
  for (std::size_t i = 0; i < basis.size(); ++i) out << (i ? "; " : "") << P.to_string(basis[i]);
  out << ") " << (P.order() == MonomialOrder::Lex ? "lex" : "grevlex") << " sdim " << sdim;
  return out.str();
}

}  // namespace

Ring::Ring(RingKind kind, PolyRing poly, std::vector<Poly> relations, std::size_t sdim,
           std::size_t groebner_budget)
    : kind_(kind), poly_(std::move(poly)), relations_(std::move(relations)), sdim_(sdim) {
  if (kind_ == RingKind::Zmod) {
    if (poly_.nvars() != 0 || poly_.domain().is_rational())
      throw Error("zmod rings have integer residues and no variables");
    relations_.clear();
    finite_ = true;
  } else if (poly_.domain().is_field()) {
    basis_ = buchberger(poly_, relations_, groebner_budget);
    if (basis_.size() == 1 && basis_[0].front().mono.deg == 0)
      throw Error("defining ideal is the unit ideal (zero ring)");
    if (!poly_.domain().is_rational()) {
      finite_ = true;
      for (std::size_t v = 0; v < poly_.nvars() && finite_; ++v) {
        bool pure = false;
        for (const auto& g : basis_) {
          const auto& m = g.front().mono;
          if (m.exp[v] > 0 && m.exp[v] == m.deg) pure = true;
        }
        finite_ = pure;
      }
    }
  } else {
    bool zero_ideal = std::all_of(relations_.begin(), relations_.end(),
                                  [](const Poly& p) { return p.empty(); });
    if (!zero_ideal)
      throw Unsupported("relations over non-field coefficients " + poly_.domain().name());
    relations_.clear();
  }
  descriptor_ = build_descriptor(kind_, poly_, basis_, sdim_);
}

Poly Ring::reduce(const Poly& p) const {
  if (basis_.empty()) return p;
  return umk::reduce(poly_, p, basis_);
}

RingElement Ring::element(const Poly& p) const { return RingElement(shared_from_this(), reduce(p)); }
RingElement Ring::zero() const { return RingElement(shared_from_this(), Poly{}); }
RingElement Ring::one() const { return element(poly_.constant(1)); }
RingElement Ring::constant(long long c) const { return element(poly_.constant(mpq_class(std::to_string(c)))); }
RingElement Ring::constant(const mpq_class& c) const { return element(poly_.constant(c)); }
RingElement Ring::variable(std::size_t i) const { return element(poly_.variable(i)); }

RingElement Ring::variable(std::string_view name) const {
  for (std::size_t i = 0; i < poly_.nvars(); ++i)
    if (poly_.vars()[i] == name) return variable(i);
  throw Error("no variable named '" + std::string(name) + "'");
}

RingElement Ring::parse(std::string_view text) const { return element(parse_poly(poly_, text)); }

bool RingElement::is_one() const {
  return value_.size() == 1 && value_[0].mono.deg == 0 && value_[0].coeff == 1;
}

void require_same_ring(const RingHandle& a, const RingHandle& b) {
  if (!a || !b) throw RingMismatch("uninitialized ring element");
  if (!a->same_as(*b))
    throw RingMismatch("ring mismatch: '" + a->descriptor() + "' vs '" + b->descriptor() + "'");
}

RingElement RingElement::operator+(const RingElement& o) const {
  require_same_ring(ring_, o.ring_);
  return RingElement(ring_, ring_->poly().add(value_, o.value_));
}

RingElement RingElement::operator-(const RingElement& o) const {
  require_same_ring(ring_, o.ring_);
  return RingElement(ring_, ring_->poly().sub(value_, o.value_));
}

RingElement RingElement::operator*(const RingElement& o) const {
  require_same_ring(ring_, o.ring_);
  if (value_.empty() || o.value_.empty()) return RingElement(ring_, Poly{});
  return RingElement(ring_, ring_->reduce(ring_->poly().mul(value_, o.value_)));
}

RingElement RingElement::operator-() const { return RingElement(ring_, ring_->poly().neg(value_)); }

RingElement RingElement::pow(unsigned k) const {
  RingElement r = ring_->one();
  RingElement b = *this;
  while (k) {
    if (k & 1u) r = r * b;
    k >>= 1u;
    if (k) b = b * b;
  }
  return r;
}

bool RingElement::operator==(const RingElement& o) const {
  require_same_ring(ring_, o.ring_);
  return poly_equal(value_, o.value_);
}

std::string RingElement::to_string() const {
  if (!ring_) return "<null>";
  return ring_->poly().to_string(value_);
}

RingHandle make_zmod(std::uint64_t m, std::size_t sdim) {
  if (m < 2) throw Error("modulus must be at least 2");
  return std::make_shared<const Ring>(RingKind::Zmod, PolyRing(CoeffDomain::modular(m), {}, MonomialOrder::Grevlex),
                                      std::vector<Poly>{}, sdim);
}

RingHandle make_poly_ring(CoeffDomain dom, std::vector<std::string> vars,
                          const std::vector<std::string>& relations, MonomialOrder order,
                          std::size_t sdim) {
  if (!dom.is_field()) throw Error("non-field coefficient " + dom.name() + " for poly ring");
  PolyRing P(std::move(dom), std::move(vars), order);
  std::vector<Poly> rels;
  for (const auto& r : relations) rels.push_back(parse_poly(P, r));
  return std::make_shared<const Ring>(RingKind::PolyQuotient, std::move(P), std::move(rels), sdim);
}

RingHandle make_ring(std::string_view descriptor) {
  RingDescription d = parse_ring_description(descriptor);
  if (d.zmod) return make_zmod(d.modulus, d.sdim);
  CoeffDomain dom = d.modulus ? CoeffDomain::modular(d.modulus) : CoeffDomain::rationals();
  return make_poly_ring(dom, d.vars, d.relations, d.order, d.sdim);
}

namespace {

std::string fresh_name(const std::vector<std::string>& vars, const std::string& base) {
  auto used = [&](const std::string& n) { return std::find(vars.begin(), vars.end(), n) != vars.end(); };
  if (!used(base)) return base;
  for (int k = 1;; ++k)
    if (!used(base + std::to_string(k))) return base + std::to_string(k);
}

}  // namespace

RingHandle localize(const RingHandle& R, const RingElement& f) {
  require_same_ring(R, f.ring());
  if (R->kind() != RingKind::PolyQuotient || !R->has_field_coefficients())
    throw PreconditionError("localize needs a polynomial quotient ring over a field");
  if (f.is_zero()) throw PreconditionError("cannot invert zero");
  auto vars = R->poly().vars();
  vars.push_back(fresh_name(vars, "u"));
  PolyRing P(R->domain(), vars, R->poly().order());
  std::vector<Poly> rels;
  for (const auto& g : R->basis()) rels.push_back(pad(g, vars.size()));
  Monomial mu(vars.size());
  mu.exp.back() = 1;
  mu.deg = 1;
  rels.push_back(P.sub(P.mul_term(pad(f.poly(), vars.size()), mu, 1), P.constant(1)));
  try {
    return std::make_shared<const Ring>(RingKind::PolyQuotient, std::move(P), std::move(rels), R->sdim());
  } catch (const Error&) {
    throw PreconditionError("localization at a nilpotent element is the zero ring");
  }
}

RingHandle polynomial_extension(const RingHandle& R, const std::string& var) {
  auto vars = R->poly().vars();
  vars.push_back(fresh_name(vars, var));
  PolyRing P(R->domain(), vars, R->poly().order());
  std::vector<Poly> rels;
  for (const auto& g : R->basis()) rels.push_back(pad(g, vars.size()));
  return std::make_shared<const Ring>(RingKind::PolyQuotient, std::move(P), std::move(rels), R->sdim() + 1);
}

RingElement embed(const RingElement& f, const RingHandle& extension) {
  const auto& from = f.ring()->poly();
  const auto& to = extension->poly();
  if (!(from.domain() == to.domain()) || to.nvars() < from.nvars() ||
      !std::equal(from.vars().begin(), from.vars().end(), to.vars().begin()))
    throw RingMismatch("cannot embed '" + f.ring()->descriptor() + "' into '" +
                       extension->descriptor() + "'");
  return extension->element(to.canonical(pad(f.poly(), to.nvars())));
}

RingElement substitute_last(const RingElement& f, const RingElement& value) {
  const RingHandle& base = value.ring();
  const auto& P = f.ring()->poly();
  if (P.nvars() != base->poly().nvars() + 1)
    throw RingMismatch("substitution needs a ring with exactly one extra variable");
  RingElement acc = base->zero();
  for (const auto& t : f.poly()) {
    auto e = t.mono.exp;
    unsigned k = e.back();
    e.pop_back();
    Poly head = base->poly().monomial(Monomial(std::move(e)), t.coeff);
    acc += base->element(head) * value.pow(k);
  }
  return acc;
}

Ideal::Ideal(RingHandle ring, std::vector<RingElement> gens, std::size_t budget)
    : ring_(std::move(ring)), gens_(std::move(gens)) {
  for (const auto& g : gens_) require_same_ring(ring_, g.ring());
  const PolyRing& P = ring_->poly();
  std::vector<Poly> polys;
  for (const auto& g : gens_) polys.push_back(g.poly());
  if (ring_->has_field_coefficients()) {
    method_ = Method::Groebner;
    GroebnerOptions o;
    o.track = true;
    o.budget = budget;
    gb_ = groebner(P, ring_->basis(), polys, o);
  } else if (P.nvars() == 0) {
    method_ = Method::Gcd;
    mpz_class m(std::to_string(ring_->domain().modulus()));
    gcd_ = m;
    bezout_.assign(gens_.size(), 0);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      mpz_class v = polys[i].empty() ? mpz_class(0) : polys[i][0].coeff.get_num();
      mpz_class d, s, t;
      mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), gcd_.get_mpz_t(), v.get_mpz_t());
      for (std::size_t k = 0; k < i; ++k) bezout_[k] = (bezout_[k] * s) % m;
      bezout_[i] = t % m;
      gcd_ = d;
    }
    for (auto& b : bezout_)
      if (b < 0) b += m;
  } else {
    method_ = Method::UnitOnly;
    unit_cofactors_.reset();
    if (auto c = unit_cofactors_composite(P, polys)) {
      std::vector<RingElement> cof;
      for (auto& p : *c) cof.push_back(ring_->element(p));
      unit_cofactors_ = std::move(cof);
    }
  }
}

bool Ideal::is_unit_ideal() const { return contains(ring_->one()); }

bool Ideal::contains(const RingElement& f) const {
  require_same_ring(ring_, f.ring());
  switch (method_) {
    case Method::Groebner:
      return reduce(ring_->poly(), f.poly(), gb_.basis).empty();
    case Method::Gcd: {
      mpz_class v = f.is_zero() ? mpz_class(0) : f.poly()[0].coeff.get_num();
      return v % gcd_ == 0;
    }
    case Method::UnitOnly:
      if (f.is_zero() || unit_cofactors_) return true;
      if (f.is_one()) return false;
      throw Unsupported("membership of non-units over " + ring_->domain().name() +
                        " polynomial rings");
  }
  return false;
}

RingElement Ideal::normal_form(const RingElement& f) const {
  require_same_ring(ring_, f.ring());
  switch (method_) {
    case Method::Groebner:
      return RingElement(ring_, reduce(ring_->poly(), f.poly(), gb_.basis));
    case Method::Gcd: {
      mpz_class v = f.is_zero() ? mpz_class(0) : f.poly()[0].coeff.get_num();
      return ring_->constant(mpq_class(mpz_class(v % gcd_)));
    }
    case Method::UnitOnly:
      if (unit_cofactors_) return ring_->zero();
      if (f.is_zero()) return f;
      throw Unsupported("normal forms modulo ideals over " + ring_->domain().name() +
                        " polynomial rings");
  }
  return f;
}

RingElement normal_form(const Poly& f, const Ideal& I) {
  return I.normal_form(I.ring()->element(f));
}

bool MembershipCertificate::verify() const {
  if (generators.size() != cofactors.size()) return false;
  RingElement acc = target.ring()->zero();
  for (std::size_t i = 0; i < generators.size(); ++i) acc += cofactors[i] * generators[i];
  return acc == target;
}

struct MembershipAccess {
  static std::optional<MembershipCertificate> certify(const RingElement& f, const Ideal& I) {
    const RingHandle& R = I.ring_;
    require_same_ring(R, f.ring());
    MembershipCertificate cert{f, I.gens_, {}};
    const PolyRing& P = R->poly();
    switch (I.method_) {
      case Ideal::Method::Groebner: {
        std::vector<Poly> q;
        Poly rem = reduce(P, f.poly(), I.gb_.basis, &q);
        if (!rem.empty()) return std::nullopt;
        std::vector<Poly> c(I.gens_.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
          if (q[i].empty()) continue;
          for (std::size_t k = 0; k < c.size(); ++k)
            if (!I.gb_.cofactors[i][k].empty())
              c[k] = P.add(c[k], P.mul(q[i], I.gb_.cofactors[i][k]));
        }
        for (auto& p : c) cert.cofactors.push_back(R->element(p));
        break;
      }
      case Ideal::Method::Gcd: {
        mpz_class v = f.is_zero() ? mpz_class(0) : f.poly()[0].coeff.get_num();
        if (v % I.gcd_ != 0) return std::nullopt;
        mpz_class scale = v / I.gcd_;
        for (const auto& b : I.bezout_) cert.cofactors.push_back(R->constant(mpq_class(mpz_class(b * scale))));
        break;
      }
      case Ideal::Method::UnitOnly: {
        if (f.is_zero()) {
          cert.cofactors.assign(I.gens_.size(), R->zero());
        } else if (I.unit_cofactors_) {
          for (const auto& c : *I.unit_cofactors_) cert.cofactors.push_back(c * f);
        } else if (f.is_one()) {
          return std::nullopt;
        } else {
          throw Unsupported("membership of non-units over " + R->domain().name() +
                            " polynomial rings");
        }
        break;
      }
    }
    if (!cert.verify())
      throw InvariantViolation("membership certificate for " + f.to_string() +
                               " does not recombine");
    return cert;
  }
};

std::optional<MembershipCertificate> membership_certificate(const RingElement& f, const Ideal& I) {
  return MembershipAccess::certify(f, I);
}

std::optional<MembershipCertificate> membership_certificate(const RingElement& f,
                                                            const std::vector<RingElement>& gens,
                                                            std::size_t budget) {
  return MembershipAccess::certify(f, Ideal(f.ring(), gens, budget));
}

}  // namespace umk
