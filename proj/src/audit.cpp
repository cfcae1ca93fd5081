#include "umk/audit.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "umk/elementary.hpp"
#include "umk/error.hpp"
#include "umk/mennicke.hpp"
#include "umk/starop.hpp"

namespace umk {

namespace {

constexpr std::array<std::pair<AuditKind, const char*>, 13> kNames{{
    {AuditKind::MS1, "MS1"},
    {AuditKind::MS2, "MS2"},
    {AuditKind::MS3, "MS3"},
    {AuditKind::MS4, "MS4"},
    {AuditKind::MS5, "MS5"},
    {AuditKind::MS6, "MS6"},
    {AuditKind::MS7, "MS7"},
    {AuditKind::WmsWelldef, "wms-welldef"},
    {AuditKind::StarWelldef, "star-welldef"},
    {AuditKind::Row1Hom, "row1-hom"},
    {AuditKind::LeftAction, "left-action"},
    {AuditKind::AdjointOrbit, "adjoint-orbit"},
    {AuditKind::Exactness, "exactness"},
}};

std::uint64_t checked_power(std::uint64_t q, std::size_t e, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t k = 0; k < e; ++k) {
    if (r > cap / q) throw CapExceeded(std::to_string(q) + "^" + std::to_string(e) +
                                       " candidates exceed the enumeration cap " +
                                       std::to_string(cap));
    r *= q;
  }
  return r;
}

std::string join_rows(const std::vector<Matrix>& factors, const Matrix& rhs) {
  std::string s;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k) s += "*";
    s += factors[k].to_string();
  }
  return s + "=" + rhs.to_string();
}

class Auditor {
 public:
  Auditor(const RingHandle& R, std::size_t n, const AuditOptions& opts, AuditReport& out)
      : R_(R), n_(n), opts_(opts), out_(out),
        dec_(OracleMode::Auto, opts.ring_cap, opts.enumeration_cap) {
    if (!finite_ring_size(R)) throw Unsupported("audits need a finite ring, got " + R->descriptor());
    F_ = dec_.table(R);
    if (!F_) throw CapExceeded("ring " + R->descriptor() + " is over the ring cap");
    if (n < 3) throw PreconditionError("audits need n >= 3");
  }

  void run(AuditKind what) {
    switch (what) {
      case AuditKind::MS1: ms1(); break;
      case AuditKind::MS2:
      case AuditKind::MS3:
      case AuditKind::MS4:
      case AuditKind::MS5: pairs(what); break;
      case AuditKind::MS6:
      case AuditKind::MS7: image_of_row1(what); break;
      case AuditKind::WmsWelldef: wms_welldef(); break;
      case AuditKind::StarWelldef: star_welldef(); break;
      case AuditKind::Row1Hom: row1_hom(); break;
      case AuditKind::LeftAction: left_action(); break;
      case AuditKind::AdjointOrbit: adjoint_orbit(); break;
      case AuditKind::Exactness: exactness(); break;
    }
  }

 private:
  const OrbitTable& rows() {
    auto* t = dec_.orbits(R_, 1, n_);
    if (!t) throw CapExceeded("Um_{1," + std::to_string(n_) + "} is over the enumeration cap");
    return *t;
  }
  const OrbitTable& matrices() {
    auto* t = dec_.orbits(R_, 2, n_);
    if (!t) throw CapExceeded("Um_{2," + std::to_string(n_) + "} is over the enumeration cap");
    return *t;
  }

  void emit(std::string rows, Verdict v, std::string detail = {}) {
    if (v == Verdict::Refuted) ++out_.violations;
    if (v == Verdict::Unknown) ++out_.unknown;
    out_.lines.push_back({to_string(out_.what), std::move(rows), v, std::move(detail)});
  }

  void relation(const RelationInstance& inst) {
    Verdict v = check_relation(inst, dec_, opts_.search);
    std::string detail;
    if (v == Verdict::Refuted) {
      detail = "product " + relation_product(inst, dec_, opts_.search).M().to_string() +
               " is not in the orbit of " + inst.rhs.to_string();
    }
    emit(inst.rows(), v, std::move(detail));
  }

  std::vector<RingElement> elements(const std::vector<std::uint8_t>& d) const {
    std::vector<RingElement> out;
    out.reserve(d.size());
    for (auto x : d) out.push_back(F_->element(x));
    return out;
  }

  std::uint64_t row_code(std::uint8_t head, const std::vector<std::uint8_t>& tail) const {
    std::vector<std::uint8_t> d{head};
    d.insert(d.end(), tail.begin(), tail.end());
    return encode(*F_, d);
  }

  std::uint64_t e1() const {
    std::vector<std::uint8_t> d(n_, 0);
    d[0] = F_->one();
    return encode(*F_, d);
  }

  void ms1() {
    const OrbitTable& T = rows();
    auto gens = column_generators(*F_, n_, false);
    for (auto code : T.elements()) {
      Matrix v = decode_matrix(*F_, code, 1, n_);
      for (const auto& g : gens) {
        Transcript eps(n_);
        eps.push(Side::Column, g.i, g.j, F_->element(g.t));
        relation(ms1_instance(v, eps));
      }
    }
  }

  // MS2 to MS5: a head pair and a shared tail.
  void pairs(AuditKind what) {
    const OrbitTable& T = rows();
    const std::size_t q = F_->size();
    const std::uint64_t tails = checked_power(q, n_ - 1, opts_.enumeration_cap);
    for (std::uint64_t tc = 0; tc < tails; ++tc) {
      auto td = decode(*F_, tc, n_ - 1);
      auto tail = elements(td);
      int J = -1;
      for (auto t : td) J = J < 0 ? F_->principal(t) : F_->join(J, F_->principal(t));
      for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b) {
          auto x = static_cast<std::uint8_t>(a), y = static_cast<std::uint8_t>(b);
          switch (what) {
            case AuditKind::MS2:
              if (T.contains(row_code(x, td)) && T.contains(row_code(y, td)))
                relation(ms2_instance(F_->element(x), F_->element(y), tail));
              break;
            case AuditKind::MS3:
              if (F_->add(x, y) == F_->one() && T.contains(row_code(x, td)) &&
                  T.contains(row_code(y, td)))
                relation(ms3_instance(F_->element(x), F_->element(y), tail));
              break;
            case AuditKind::MS4:
              if (T.contains(row_code(F_->mul(x, x), td)) && T.contains(row_code(y, td)))
                relation(ms4_instance(F_->element(x), F_->element(y), tail));
              break;
            case AuditKind::MS5: {
              // r = x, q = y
              std::uint8_t q1 = F_->add(F_->one(), y);
              std::uint8_t gap = F_->sub(F_->mul(x, q1), y);
              if (T.contains(row_code(x, td)) && T.contains(row_code(q1, td)) &&
                  (gap == F_->zero() || F_->ideal_contains(J, gap)))
                relation(ms5_instance(F_->element(x), F_->element(y), tail));
              break;
            }
            default: break;
          }
        }
    }
  }

  // MS6 and MS7 over the first rows of unimodular 2 x n matrices; MS6 also checks v S = v D
  // for the involution built from the first matrix seen with that first row.
  void image_of_row1(AuditKind what) {
    const OrbitTable& T2 = matrices();
    const std::size_t q = F_->size();
    std::map<std::uint64_t, std::uint64_t> first;  // first row code -> matrix code
    const std::uint64_t row_span = checked_power(q, n_, opts_.enumeration_cap);
    for (auto code : T2.elements()) first.emplace(code / row_span, code);
    Matrix D = Matrix::identity(R_, n_);
    D(0, 0) = -R_->one();
    for (const auto& [rc, mc] : first) {
      auto d = decode(*F_, rc, n_);
      RingElement x = F_->element(d[0]);
      std::vector<RingElement> tail = elements({d.begin() + 1, d.end()});
      if (what == AuditKind::MS7) {
        for (int m : {2, 3}) relation(ms7_instance(x, tail, m));
        continue;
      }
      auto inst = ms6_instance(x, tail);
      Verdict v = check_relation(inst, dec_, opts_.search);
      std::string detail;
      Matrix M = decode_matrix(*F_, mc, 2, n_);
      auto split = matrix_right_inverse(M, opts_.search.groebner_budget);
      if (!split) {
        v = Verdict::Refuted;
        detail = "no right inverse for " + M.to_string();
      } else {
        Matrix row = inst.factors.front();
        Matrix S = involution_S(*split);
        if (row * S != row * D) {
          v = Verdict::Refuted;
          detail = "v S = " + (row * S).to_string() + " differs from v D for M = " + M.to_string();
        }
      }
      if (v == Verdict::Refuted && detail.empty())
        detail = "orbits differ; M = " + M.to_string();
      emit(inst.rows(), v, std::move(detail));
    }
  }

  void wms_welldef() {
    const OrbitTable& T = rows();
    const std::size_t q = F_->size();
    const std::uint64_t tails = checked_power(q, n_ - 1, opts_.enumeration_cap);
    // Products of every already-normalized pair (x, tail), (1 - x, tail), keyed by orbits.
    std::map<std::pair<int, int>, std::set<int>> products;
    for (std::uint64_t tc = 0; tc < tails; ++tc) {
      auto td = decode(*F_, tc, n_ - 1);
      for (std::size_t a = 0; a < q; ++a) {
        auto x = static_cast<std::uint8_t>(a);
        auto y = F_->sub(F_->one(), x);
        int ox = T.orbit_of(row_code(x, td)), oy = T.orbit_of(row_code(y, td));
        if (ox < 0 || oy < 0) continue;
        products[{ox, oy}].insert(T.orbit_of(row_code(F_->mul(x, y), td)));
      }
    }
    const int K = static_cast<int>(T.orbit_count());
    auto rep = [&](int o) {
      return require_unimodular(decode_matrix(*F_, T.representative(o), 1, n_), "representative");
    };
    const int trivial = T.orbit_of(e1());
    const SplitUnimodular id = rep(trivial);
    for (int a = 0; a < K; ++a) {
      SplitUnimodular ra = rep(a);
      try {
        auto p = wms_mul(ra, id, opts_.search);
        emit(join_rows({ra.M(), id.M()}, p.product.M()),
             T.orbit_of(p.product.M()) == a ? Verdict::Proven : Verdict::Refuted,
             T.orbit_of(p.product.M()) == a ? "" : "identity law fails");
        auto inv = wms_inverse(ra, opts_.search);
        auto e = wms_mul(ra, inv.product, opts_.search);
        bool ok = T.orbit_of(e.product.M()) == trivial;
        emit(join_rows({ra.M(), inv.product.M()}, e.product.M()),
             ok ? Verdict::Proven : Verdict::Refuted, ok ? "" : "inverse law fails");
      } catch (const BudgetExceeded& ex) {
        emit(ra.M().to_string(), Verdict::Unknown, ex.what());
      }
      for (int b = a; b < K; ++b) {
        SplitUnimodular rb = rep(b);
        try {
          auto ab = wms_mul(ra, rb, opts_.search), ba = wms_mul(rb, ra, opts_.search);
          int o1 = T.orbit_of(ab.product.M()), o2 = T.orbit_of(ba.product.M());
          std::set<int> seen = products[{a, b}];
          const auto& rev = products[{b, a}];
          seen.insert(rev.begin(), rev.end());
          std::string rows = join_rows({ra.M(), rb.M()}, ab.product.M());
          if (seen.empty()) {
            emit(rows, Verdict::Unknown, "no normalized pair inside these orbits");
          } else if (seen.size() > 1 || !seen.count(o1) || o1 != o2) {
            std::string d = "product orbits:";
            for (int o : seen) d += " " + decode_matrix(*F_, T.representative(o), 1, n_).to_string();
            d += "; library gives " + ab.product.M().to_string() + " and reversed " +
                 ba.product.M().to_string();
            emit(rows, Verdict::Refuted, d);
          } else {
            emit(rows, Verdict::Proven);
          }
        } catch (const BudgetExceeded& ex) {
          emit(join_rows({ra.M(), rb.M()}, Matrix(R_, 1, n_)), Verdict::Unknown, ex.what());
        }
      }
    }
  }

  std::vector<StarBlocks> forms() {
    if (n_ < 4) throw PreconditionError("star audits need n >= 4");
    return enumerate_star_forms(*F_, n_, opts_.enumeration_cap);
  }

  void star_welldef() {
    const OrbitTable& T2 = matrices();
    struct Seen {
      std::map<int, Matrix> outcomes;  // orbit of T -> X block of the first form giving it
    };
    std::map<std::pair<int, int>, Seen> groups;
    for (const auto& b : forms()) {
      StarForm f = make_star_form(b.X, b.Y, b.Z);
      std::optional<SplitUnimodular> T;
      try {
        T = star(f);
      } catch (const InvariantViolation& ex) {
        emit(join_rows({f.left(), f.right()}, Matrix(R_, 2, n_)), Verdict::Refuted, ex.what());
        continue;
      }
      auto& g = groups[{T2.orbit_of(f.left()), T2.orbit_of(f.right())}];
      g.outcomes.emplace(T2.orbit_of(T->M()), T->M());
    }
    for (const auto& [key, g] : groups) {
      Matrix L = decode_matrix(*F_, T2.representative(key.first), 2, n_);
      Matrix Rm = decode_matrix(*F_, T2.representative(key.second), 2, n_);
      const Matrix& first = g.outcomes.begin()->second;
      if (g.outcomes.size() == 1) {
        emit(join_rows({L, Rm}, first), Verdict::Proven);
      } else {
        std::string d = "star outputs in distinct orbits:";
        for (const auto& [o, M] : g.outcomes) d += " " + M.to_string();
        emit(join_rows({L, Rm}, first), Verdict::Refuted, d);
      }
    }
  }

  void row1_hom() {
    for (const auto& b : forms()) {
      StarForm f = make_star_form(b.X, b.Y, b.Z);
      Verdict v;
      std::string detail, rows;
      try {
        SplitUnimodular T = star(f);
        rows = join_rows({row1(f.left()).M(), row1(f.right()).M()}, row1(T.M()).M());
        v = check_row1_homomorphism(f, dec_, opts_.search);
        if (v == Verdict::Refuted) detail = "form:\n" + serialize(f);
      } catch (const InvariantViolation& ex) {
        rows = join_rows({f.left(), f.right()}, Matrix(R_, 2, n_));
        v = Verdict::Refuted;
        detail = ex.what();
      }
      emit(std::move(rows), v, std::move(detail));
    }
  }

  void left_action() {
    const OrbitTable& T2 = matrices();
    for (auto code : T2.elements()) {
      int o = T2.orbit_of(code);
      std::string bad;
      for (std::size_t i = 0; i < 2 && bad.empty(); ++i)
        for (std::size_t t = 1; t < F_->size(); ++t) {
          auto moved = apply_row_generator(*F_, code, n_, i, 1 - i, static_cast<std::uint8_t>(t));
          if (T2.orbit_of(moved) != o) {
            bad = "row " + std::to_string(i + 1) + " += " +
                  F_->element(static_cast<std::uint8_t>(t)).to_string() + " row " +
                  std::to_string(2 - i) + " gives " +
                  decode_matrix(*F_, moved, 2, n_).to_string();
            break;
          }
        }
      emit(decode_matrix(*F_, code, 2, n_).to_string(),
           bad.empty() ? Verdict::Proven : Verdict::Refuted, bad);
    }
  }

  void adjoint_orbit() {
    const OrbitTable& T2 = matrices();
    const std::size_t q = F_->size();
    const std::uint64_t vectors = checked_power(q, n_, opts_.enumeration_cap);
    struct Group {
      int orbit;
      std::uint64_t first, clash = 0;
      std::size_t count = 0;
      bool bad = false;
    };
    std::unordered_map<std::uint64_t, Group> groups;
    std::vector<std::vector<std::uint8_t>> cols(vectors);
    for (std::uint64_t c = 0; c < vectors; ++c) cols[c] = decode(*F_, c, n_);
    for (auto code : T2.elements()) {
      auto m = decode(*F_, code, 2 * n_);
      std::vector<std::uint64_t> b1, b2;
      for (std::uint64_t c = 0; c < vectors; ++c) {
        std::uint8_t r0 = 0, r1 = 0;
        for (std::size_t i = 0; i < n_; ++i) {
          r0 = F_->add(r0, F_->mul(m[i], cols[c][i]));
          r1 = F_->add(r1, F_->mul(m[n_ + i], cols[c][i]));
        }
        if (r0 == F_->one() && r1 == 0) b1.push_back(c);
        if (r0 == 0 && r1 == F_->one()) b2.push_back(c);
      }
      int o = T2.orbit_of(code);
      for (auto c1 : b1)
        for (auto c2 : b2) {
          std::vector<std::uint8_t> nd(2 * n_);
          for (std::size_t i = 0; i < n_; ++i) {
            nd[2 * i] = cols[c1][i];
            nd[2 * i + 1] = cols[c2][i];
          }
          auto [it, fresh] = groups.try_emplace(encode(*F_, nd), Group{o, code});
          Group& g = it->second;
          ++g.count;
          if (!fresh && g.orbit != o && !g.bad) {
            g.bad = true;
            g.clash = code;
          }
        }
    }
    std::vector<std::uint64_t> keys;
    for (const auto& [k, g] : groups)
      if (g.count >= 2) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    for (auto k : keys) {
      const Group& g = groups.at(k);
      Matrix N = decode_matrix(*F_, k, n_, 2);
      std::string detail;
      if (g.bad)
        detail = decode_matrix(*F_, g.first, 2, n_).to_string() + " and " +
                 decode_matrix(*F_, g.clash, 2, n_).to_string() + " share N but not an orbit";
      emit(N.to_string(), g.bad ? Verdict::Refuted : Verdict::Proven, std::move(detail));
    }
  }

  void exactness() {
    const OrbitTable& T1 = rows();
    const OrbitTable& T2 = matrices();
    const int trivial = T1.orbit_of(e1());
    std::set<int> image;
    for (auto code : enumerate_um(*F_, 1, n_ - 1, opts_.enumeration_cap))
      image.insert(T2.orbit_of(stabilize(decode_matrix(*F_, code, 1, n_ - 1)).M()));
    for (std::size_t o = 0; o < T2.orbit_count(); ++o) {
      Matrix M = decode_matrix(*F_, T2.representative(static_cast<int>(o)), 2, n_);
      bool kernel = T1.orbit_of(row1(M).M()) == trivial;
      bool meets = image.count(static_cast<int>(o)) > 0;
      std::string detail;
      if (kernel != meets)
        detail = std::string("first row orbit ") + (kernel ? "trivial" : "nontrivial") +
                 ", stabilize image " + (meets ? "meets" : "misses") + " this orbit";
      emit(M.to_string(), kernel == meets ? Verdict::Proven : Verdict::Refuted, detail);
    }
  }

  RingHandle R_;
  std::size_t n_;
  AuditOptions opts_;
  AuditReport& out_;
  OrbitDecider dec_;
  const FiniteRingTable* F_ = nullptr;
};

}  // namespace

std::string to_string(AuditKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "?";
}

std::optional<AuditKind> parse_audit_kind(std::string_view tag) {
  for (const auto& [kind, name] : kNames)
    if (tag == name) return kind;
  return std::nullopt;
}

const std::vector<AuditKind>& all_audit_kinds() {
  static const std::vector<AuditKind> kinds = [] {
    std::vector<AuditKind> v;
    for (const auto& [kind, name] : kNames) v.push_back(kind);
    return v;
  }();
  return kinds;
}

std::string AuditReport::summary() const {
  std::ostringstream s;
  s << to_string(what) << " " << ring << " n=" << n << ": " << instances() << " instances, "
    << violations << " violations, " << unknown << " unknown";
  if (informative && violations) s << " (informative)";
  return s.str();
}

std::string format_text(const AuditReport& r, bool timing) {
  std::string s;
  for (const auto& l : r.lines) {
    s += l.tag + " " + l.rows + " " + to_string(l.verdict) + "\n";
    if (!l.detail.empty()) s += "  witness: " + l.detail + "\n";
  }
  s += r.summary() + "\n";
  if (timing) {
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << "runtime " << r.seconds << " s\n";
    s += t.str();
  }
  return s;
}

AuditReport audit(const RingHandle& R, std::size_t n, AuditKind what, const AuditOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  AuditReport out;
  out.ring = R->descriptor();
  out.n = n;
  out.what = what;
  out.informative = what == AuditKind::MS2;
  Auditor(R, n, opts, out).run(what);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::vector<StarBlocks> enumerate_star_forms(const FiniteRingTable& F, std::size_t n,
                                             std::uint64_t cap) {
  if (n < 4) throw PreconditionError("StarForms need n >= 4");
  const std::size_t k = n - 4, digits = 7 + 2 * k;
  const std::uint64_t total = checked_power(F.size(), digits, cap);
  std::vector<StarBlocks> out;
  std::vector<std::uint8_t> left(2 * n), right(2 * n);
  for (std::uint64_t c = 0; c < total; ++c) {
    auto d = decode(F, c, digits);
    std::uint8_t x[2][2] = {{d[0], d[1]}, {d[2], F.neg(d[0])}};
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t j = 0; j < 2; ++j) {
        left[r * n + j] = x[r][j];
        right[r * n + j] = F.sub(r == j ? F.one() : F.zero(), x[r][j]);
        left[r * n + 2 + j] = right[r * n + 2 + j] = d[3 + 2 * r + j];
      }
      for (std::size_t j = 0; j < k; ++j) left[r * n + 4 + j] = right[r * n + 4 + j] = d[7 + r * k + j];
    }
    if (!finite_unimodular(F, left, 2, n) || !finite_unimodular(F, right, 2, n)) continue;
    Matrix L = decode_matrix(F, encode(F, left), 2, n);
    out.push_back({L.block(0, 0, 2, 2), L.block(0, 2, 2, 2), L.block(0, 4, 2, k)});
  }
  return out;
}

}  // namespace umk
