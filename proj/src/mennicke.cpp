#include "umk/mennicke.hpp"

#include "umk/error.hpp"

namespace umk {

namespace {

void require_row(const Matrix& v, const char* what) {
  if (v.rows() != 1) throw ShapeError(std::string(what) + " must be a row");
}

// Column j += t column i, skipped when it would not change the row.
void column_move(Matrix& row, Transcript& T, std::size_t i, std::size_t j, const RingElement& t) {
  if ((t * row(0, i)).is_zero()) return;
  T.push(Side::Column, i, j, t);
  apply_move_inplace(row, T.moves().back());
}

SplitUnimodular transport(const SplitUnimodular& s, const Matrix& moved, const Transcript& T) {
  Matrix back = transcript_matrix(s.ring(), T.inverse());
  return SplitUnimodular(moved, back * s.N());
}

Matrix with_head(const RingElement& head, const std::vector<RingElement>& tail) {
  std::vector<RingElement> e{head};
  e.insert(e.end(), tail.begin(), tail.end());
  return Matrix::row(head.ring(), e);
}

void gate(const RingHandle& R, std::size_t n, std::size_t slack, const char* op) {
  const std::size_t bound = 2 * n >= slack ? 2 * n - slack : 0;
  if (R->sdim() > bound)
    throw DimensionGate(std::string(op) + ": sdim " + std::to_string(R->sdim()) + " exceeds 2n-" +
                        std::to_string(slack) + " = " + std::to_string(bound));
}

}  // namespace

void NormalizedPair::verify() const {
  const std::size_t n = v.cols();
  Matrix a = apply_transcript(v, eps), b = apply_transcript(w, delta);
  if (a != v_cert.M() || b != w_cert.M()) throw InvariantViolation("normalized rows do not replay");
  if (!(x + y).is_one()) throw InvariantViolation("x + y != 1 after normalization");
  if (a(0, 0) != x || b(0, 0) != y || tail.size() + 1 != n)
    throw InvariantViolation("normalized heads disagree");
  for (std::size_t i = 1; i < n; ++i)
    if (a(0, i) != tail[i - 1] || b(0, i) != tail[i - 1])
      throw InvariantViolation("normalized tails differ");
  if (!verify_split(v_cert.M(), v_cert.N()) || !verify_split(w_cert.M(), w_cert.N()))
    throw InvariantViolation("normalized rows lost their certificates");
}

NormalizedPair normalize_pair(const SplitUnimodular& sv, const SplitUnimodular& sw,
                              const SearchOptions& opts) {
  const Matrix& v = sv.M();
  const Matrix& w = sw.M();
  require_row(v, "v");
  require_row(w, "w");
  require_same_ring(v.ring(), w.ring());
  const std::size_t n = v.cols();
  if (w.cols() != n) throw ShapeError("normalize_pair: rows of different length");
  if (n < 3) throw PreconditionError("normalize_pair needs n >= 3");
  const RingHandle& R = v.ring();
  gate(R, n, 3, "normalize_pair");

  const RingElement v1 = v(0, 0), w1 = w(0, 0), p = v1 * w1;
  {
    std::vector<RingElement> gens{p};
    for (std::size_t i = 1; i < n; ++i) gens.push_back(v(0, i));
    for (std::size_t i = 1; i < n; ++i) gens.push_back(w(0, i));
    if (!membership_certificate(R->one(), gens, opts.groebner_budget))
      throw InvariantViolation("normalize_pair: (v1 w1, v', w') is not unimodular");
  }

  // Add multiples of v1 w1 to the tails until 1 - v1 - w1 lies in the ideal of the tails.
  const RingElement target = R->one() - v1 - w1;
  const auto pool = candidate_pool(R, opts.seed);
  std::vector<std::size_t> chosen;
  std::optional<MembershipCertificate> cert;
  spiral_search(2 * n - 2, pool.size(), opts.budget, "normalize_pair stable-range step",
                [&](const std::vector<std::size_t>& tup) {
                  std::vector<RingElement> gens;
                  for (std::size_t i = 1; i < n; ++i) gens.push_back(v(0, i) + pool[tup[n - 2 + i]] * p);
                  for (std::size_t i = 1; i < n; ++i) gens.push_back(w(0, i) + pool[tup[i - 1]] * p);
                  cert = membership_certificate(target, gens, opts.groebner_budget);
                  if (!cert) return false;
                  chosen = tup;
                  return true;
                });

  Matrix V = v, W = w;
  Transcript eps(n), delta(n);
  for (std::size_t i = 1; i < n; ++i) column_move(W, delta, 0, i, pool[chosen[i - 1]] * v1);
  for (std::size_t i = 1; i < n; ++i) column_move(V, eps, 0, i, pool[chosen[n - 2 + i]] * w1);
  for (std::size_t i = 1; i < n; ++i) column_move(V, eps, i, 0, cert->cofactors[i - 1]);
  for (std::size_t i = 1; i < n; ++i) column_move(W, delta, i, 0, cert->cofactors[n - 2 + i]);
  if (!(V(0, 0) + W(0, 0)).is_one()) throw InvariantViolation("normalize_pair: x + y != 1");

  for (std::size_t i = 1; i < n; ++i) {
    RingElement d = W(0, i) - V(0, i);
    column_move(V, eps, 0, i, d);
    column_move(W, delta, 0, i, -d);
  }

  std::vector<RingElement> tail;
  for (std::size_t i = 1; i < n; ++i) tail.push_back(V(0, i));
  NormalizedPair out{v,     w,         eps, delta, V(0, 0), W(0, 0), tail, transport(sv, V, eps),
                     transport(sw, W, delta)};
  out.verify();
  return out;
}

NormalizedPair normalize_pair(const Matrix& v, const Matrix& w, const SearchOptions& opts) {
  require_row(v, "v");
  require_row(w, "w");
  if (v.cols() >= 3) gate(v.ring(), v.cols(), 3, "normalize_pair");
  return normalize_pair(require_unimodular(v, "v", opts.groebner_budget),
                        require_unimodular(w, "w", opts.groebner_budget), opts);
}

WmsProduct wms_mul(const SplitUnimodular& v, const SplitUnimodular& w, const SearchOptions& opts) {
  require_row(v.M(), "v");
  gate(v.ring(), v.n(), 4, "wms_mul");
  NormalizedPair pair = normalize_pair(v, w, opts);
  // (x b1 + a.b)(y c1 + a.c) = 1 gives the certificate (b1 c1, b_i + x b1 c_i).
  const Matrix& b = pair.v_cert.N();
  const Matrix& c = pair.w_cert.N();
  const std::size_t n = v.n();
  Matrix N(v.ring(), n, 1);
  N(0, 0) = b(0, 0) * c(0, 0);
  for (std::size_t i = 1; i < n; ++i) N(i, 0) = b(i, 0) + pair.x * b(0, 0) * c(i, 0);
  Matrix row = with_head(pair.x * pair.y, pair.tail);
  return WmsProduct{std::move(pair), SplitUnimodular(row, N)};
}

WmsProduct wms_mul(const Matrix& v, const Matrix& w, const SearchOptions& opts) {
  require_row(v, "v");
  gate(v.ring(), v.cols(), 4, "wms_mul");
  return wms_mul(require_unimodular(v, "v", opts.groebner_budget),
                 require_unimodular(w, "w", opts.groebner_budget), opts);
}

WmsProduct wms_inverse(const SplitUnimodular& s, const SearchOptions& opts) {
  require_row(s.M(), "a");
  const std::size_t n = s.n();
  gate(s.ring(), n, 4, "wms_inverse");
  const Matrix& a = s.M();
  const Matrix& b = s.N();
  const RingHandle& R = s.ring();
  Matrix p = a, q = a, bp = b, bq = b;
  p(0, 0) = -a(0, 0);
  bp(0, 0) = -b(0, 0);
  // u = sum_{i>1} a_i b_i and a1 b1 = 1 - u, so a1^2 b1^2 + u (2 - u) = 1.
  RingElement u = R->zero();
  for (std::size_t i = 1; i < n; ++i) u += a(0, i) * b(i, 0);
  q(0, 0) = b(0, 0) * b(0, 0);
  bq(0, 0) = a(0, 0) * a(0, 0);
  for (std::size_t i = 1; i < n; ++i) bq(i, 0) = b(i, 0) * (R->constant(2) - u);
  return wms_mul(SplitUnimodular(p, bp), SplitUnimodular(q, bq), opts);
}

std::string to_string(Relation r) {
  static const char* names[] = {"MS1", "MS2", "MS3", "MS4", "MS5", "MS6", "MS7"};
  return names[static_cast<int>(r)];
}

std::optional<Relation> parse_relation(std::string_view tag) {
  for (int k = 0; k < 7; ++k)
    if (to_string(static_cast<Relation>(k)) == tag) return static_cast<Relation>(k);
  return std::nullopt;
}

std::string RelationInstance::rows() const {
  std::string s;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k) s += "*";
    s += factors[k].to_string();
  }
  return s + "=" + rhs.to_string();
}

namespace {

RelationInstance make(Relation tag, std::vector<Matrix> factors, Matrix rhs) {
  for (const auto& f : factors)
    if (!is_unimodular(f)) throw NotUnimodularError(to_string(tag) + ": factor " + f.to_string());
  if (!is_unimodular(rhs)) throw NotUnimodularError(to_string(tag) + ": row " + rhs.to_string());
  return RelationInstance{tag, std::move(factors), std::move(rhs), std::nullopt};
}

}  // namespace

RelationInstance ms1_instance(const Matrix& v, const Transcript& eps) {
  require_row(v, "v");
  return make(Relation::MS1, {apply_transcript(v, eps)}, v);
}

RelationInstance ms2_instance(const RingElement& x, const RingElement& y,
                              const std::vector<RingElement>& tail) {
  return make(Relation::MS2, {with_head(x, tail), with_head(y, tail)}, with_head(x * y, tail));
}

RelationInstance ms3_instance(const RingElement& x, const RingElement& y,
                              const std::vector<RingElement>& tail) {
  if (!(x + y).is_one()) throw PreconditionError("MS3 needs x + y = 1");
  auto inst = ms2_instance(x, y, tail);
  inst.tag = Relation::MS3;
  return inst;
}

RelationInstance ms4_instance(const RingElement& f, const RingElement& g,
                              const std::vector<RingElement>& tail) {
  return make(Relation::MS4, {with_head(f * f, tail), with_head(g, tail)},
              with_head(f * f * g, tail));
}

RelationInstance ms5_instance(const RingElement& r, const RingElement& q,
                              const std::vector<RingElement>& tail) {
  const RingHandle& R = r.ring();
  RingElement gap = r * (R->one() + q) - q;
  std::optional<MembershipCertificate> cert;
  if (gap.is_zero()) {
    cert = MembershipCertificate{gap, tail, std::vector<RingElement>(tail.size(), R->zero())};
  } else if (!tail.empty()) {
    cert = membership_certificate(gap, tail);
  }
  if (!cert) throw PreconditionError("MS5 needs r(1+q) = q mod (a2, ..., an)");
  auto inst = make(Relation::MS5, {with_head(r, tail), with_head(R->one() + q, tail)},
                   with_head(q, tail));
  inst.witness = std::move(cert);
  return inst;
}

RelationInstance ms6_instance(const RingElement& x, const std::vector<RingElement>& tail) {
  return make(Relation::MS6, {with_head(x, tail)}, with_head(-x, tail));
}

RelationInstance ms7_instance(const RingElement& x, const std::vector<RingElement>& tail, int m) {
  if (m < 2) throw PreconditionError("MS7 needs m >= 2");
  std::vector<Matrix> factors(static_cast<std::size_t>(m), with_head(x, tail));
  return make(Relation::MS7, std::move(factors), with_head(x.pow(m), tail));
}

SplitUnimodular relation_product(const RelationInstance& inst, OrbitDecider& decider,
                                 const SearchOptions& opts) {
  auto lift = [&](const Matrix& f) {
    auto c = decider.canonical(f);
    return require_unimodular(c ? *c : f, "factor", opts.groebner_budget);
  };
  SplitUnimodular acc = lift(inst.factors.front());
  for (std::size_t k = 1; k < inst.factors.size(); ++k)
    acc = wms_mul(acc, lift(inst.factors[k]), opts).product;
  return acc;
}

Verdict check_relation(const RelationInstance& inst, OrbitDecider& decider,
                       const SearchOptions& opts) {
  try {
    SplitUnimodular lhs = relation_product(inst, decider, opts);
    return decider.same_orbit(lhs.M(), inst.rhs, opts);
  } catch (const BudgetExceeded&) {
    return Verdict::Unknown;
  }
}

}  // namespace umk
