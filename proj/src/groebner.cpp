#include "umk/groebner.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "umk/error.hpp"

namespace umk {

namespace {

struct Tracked {
  Poly p;
  std::vector<Poly> cof;  // empty: all cofactors zero
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

int find_divisor(const std::vector<Tracked>& G, const Monomial& m, std::size_t skip) {
  for (std::size_t k = 0; k < G.size(); ++k) {
    if (k == skip || G[k].p.empty()) continue;
    if (G[k].p.front().mono.divides(m)) return static_cast<int>(k);
  }
  return -1;
}

class Engine {
 public:
  Engine(const PolyRing& R, const std::vector<Poly>& base, std::size_t ngens, bool track)
      : R_(R), base_(base), ngens_(ngens), track_(track) {}

  Poly reduce_base(const Poly& f) const { return reduce(R_, f, base_); }

  void axpy_cof(std::vector<Poly>& dst, const std::vector<Poly>& src, const Monomial& m,
                const mpq_class& c) const {
    if (!track_ || src.empty()) return;
    if (dst.empty()) dst.assign(ngens_, Poly{});
    for (std::size_t k = 0; k < ngens_; ++k)
      if (!src[k].empty()) dst[k] = R_.sub_mul_term(dst[k], src[k], m, c);
  }

  // Full reduction of t against G, skipping index `skip`.
  Tracked reduce_tracked(Tracked t, const std::vector<Tracked>& G, std::size_t skip) const {
    Poly rem;
    Poly p = std::move(t.p);
    while (!p.empty()) {
      const Term& lt = p.front();
      int k = find_divisor(G, lt.mono, skip);
      if (k < 0) {
        rem.push_back(lt);
        p.erase(p.begin());
        continue;
      }
      const Poly& g = G[k].p;
      Monomial m = lt.mono.quotient(g.front().mono);
      mpq_class c = R_.domain().mul(lt.coeff, *R_.domain().inverse(g.front().coeff));
      axpy_cof(t.cof, G[k].cof, m, c);
      p = R_.sub_mul_term(p, g, m, c);
    }
    t.p = std::move(rem);
    return t;
  }

  void make_monic(Tracked& t) const {
    if (t.p.empty()) return;
    mpq_class inv = *R_.domain().inverse(t.p.front().coeff);
    t.p = R_.scale(t.p, inv);
    for (auto& c : t.cof) c = reduce_base(R_.scale(c, inv));
  }

 private:
  const PolyRing& R_;
  const std::vector<Poly>& base_;
  std::size_t ngens_;
  bool track_;
};

}  // namespace

Poly reduce(const PolyRing& R, const Poly& f, const std::vector<Poly>& basis,
            std::vector<Poly>* quotients) {
  if (quotients) quotients->assign(basis.size(), Poly{});
  Poly rem;
  Poly p = f;
  while (!p.empty()) {
    const Term& lt = p.front();
    std::size_t k = 0;
    for (; k < basis.size(); ++k)
      if (!basis[k].empty() && basis[k].front().mono.divides(lt.mono)) break;
    if (k == basis.size()) {
      rem.push_back(lt);
      p.erase(p.begin());
      continue;
    }
    const Poly& g = basis[k];
    Monomial m = lt.mono.quotient(g.front().mono);
    auto inv = R.domain().inverse(g.front().coeff);
    if (!inv) throw Error("division by a basis element with non-unit leading coefficient");
    mpq_class c = R.domain().mul(lt.coeff, *inv);
    if (quotients) (*quotients)[k] = R.add((*quotients)[k], R.monomial(m, c));
    p = R.sub_mul_term(p, g, m, c);
  }
  return rem;
}

Poly s_polynomial(const PolyRing& R, const Poly& f, const Poly& g) {
  Monomial l = f.front().mono.lcm(g.front().mono);
  const CoeffDomain& D = R.domain();
  Poly a = R.mul_term(f, l.quotient(f.front().mono), *D.inverse(f.front().coeff));
  Poly b = R.mul_term(g, l.quotient(g.front().mono), *D.inverse(g.front().coeff));
  return R.sub(a, b);
}

GroebnerResult groebner(const PolyRing& R, const std::vector<Poly>& base,
                        const std::vector<Poly>& gens, const GroebnerOptions& opts) {
  if (!R.domain().is_field())
    throw Unsupported("Groebner bases need field coefficients, got " + R.domain().name());
  Engine eng(R, base, gens.size(), opts.track);

  std::vector<Tracked> G;
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto add_element = [&](Tracked t) {
    std::size_t idx = G.size();
    for (std::size_t i = 0; i < idx; ++i) {
      if (G[i].p.empty()) continue;
      pairs.push_back({i, idx, G[i].p.front().mono.lcm(t.p.front().mono)});
      pending.insert({i, idx});
    }
    G.push_back(std::move(t));
  };

  for (const auto& b : base) G.push_back(Tracked{b, {}});
  for (std::size_t k = 0; k < gens.size(); ++k) {
    Tracked t{gens[k], {}};
    if (opts.track) {
      t.cof.assign(gens.size(), Poly{});
      t.cof[k] = R.constant(1);
    }
    t = eng.reduce_tracked(std::move(t), G, static_cast<std::size_t>(-1));
    if (t.p.empty()) continue;
    eng.make_monic(t);
    add_element(std::move(t));
  }

  std::size_t spent = 0;
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      int c = R.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::make_pair(a.j, a.i) < std::make_pair(b.j, b.i);
    });
    Pair pr = *best;
    pairs.erase(best);
    pending.erase({pr.i, pr.j});
    const Poly& f = G[pr.i].p;
    const Poly& g = G[pr.j].p;
    if (f.empty() || g.empty()) continue;
    if (f.front().mono.coprime(g.front().mono)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || G[k].p.empty()) continue;
      if (!G[k].p.front().mono.divides(pr.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (!pending.count(key(pr.i, k)) && !pending.count(key(pr.j, k))) chain = true;
    }
    if (chain) continue;
    if (++spent > opts.budget)
      throw BudgetExceeded("Groebner basis computation exceeded " + std::to_string(opts.budget) +
                           " S-pair reductions");

    const CoeffDomain& D = R.domain();
    Monomial mf = pr.lcm.quotient(f.front().mono);
    Monomial mg = pr.lcm.quotient(g.front().mono);
    mpq_class cf = *D.inverse(f.front().coeff);
    mpq_class cg = *D.inverse(g.front().coeff);
    Tracked s;
    s.p = R.sub(R.mul_term(f, mf, cf), R.mul_term(g, mg, cg));
    if (opts.track) {
      eng.axpy_cof(s.cof, G[pr.i].cof, mf, D.neg(cf));
      eng.axpy_cof(s.cof, G[pr.j].cof, mg, cg);
    }
    s = eng.reduce_tracked(std::move(s), G, static_cast<std::size_t>(-1));
    if (s.p.empty()) continue;
    eng.make_monic(s);
    add_element(std::move(s));
  }

  // Minimalize, then interreduce.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].p.empty()) continue;
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j || G[j].p.empty()) continue;
      const Monomial& li = G[i].p.front().mono;
      const Monomial& lj = G[j].p.front().mono;
      if (lj.divides(li) && (!(lj == li) || j < i)) redundant = true;
    }
    if (!redundant) keep.push_back(i);
  }
  std::vector<Tracked> M;
  for (auto i : keep) M.push_back(std::move(G[i]));
  for (std::size_t i = 0; i < M.size(); ++i) {
    Tracked t = std::move(M[i]);
    Term lead = t.p.front();
    Tracked tail{Poly(t.p.begin() + 1, t.p.end()), std::move(t.cof)};
    tail = eng.reduce_tracked(std::move(tail), M, i);
    tail.p.insert(tail.p.begin(), lead);
    M[i] = std::move(tail);
  }
  std::sort(M.begin(), M.end(), [&](const Tracked& a, const Tracked& b) {
    return R.compare(a.p.front().mono, b.p.front().mono) < 0;
  });

  GroebnerResult out;
  for (auto& t : M) {
    out.basis.push_back(std::move(t.p));
    if (opts.track) {
      if (t.cof.empty()) t.cof.assign(gens.size(), Poly{});
      for (auto& c : t.cof) c = eng.reduce_base(c);
      out.cofactors.push_back(std::move(t.cof));
    }
  }
  return out;
}

std::vector<Poly> buchberger(const PolyRing& R, const std::vector<Poly>& gens,
                             std::size_t budget) {
  GroebnerOptions o;
  o.budget = budget;
  return groebner(R, {}, gens, o).basis;
}

bool is_groebner_basis(const PolyRing& R, const std::vector<Poly>& G) {
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j)
      if (!reduce(R, s_polynomial(R, G[i], G[j]), G).empty()) return false;
  return true;
}

}  // namespace umk
