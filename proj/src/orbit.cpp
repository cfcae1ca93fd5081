#include "umk/orbit.hpp"

#include <deque>
#include <unordered_map>

#include "umk/error.hpp"

namespace umk {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Proven:
      return "proven";
    case Verdict::Refuted:
      return "refuted";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

struct Node {
  Matrix value;
  std::string parent;
  ElementaryMove move;  // move applied to the parent to reach this node
  bool root = false;
};

using Frontier = std::unordered_map<std::string, Node>;

Transcript path_to(const Frontier& side, const std::string& key, std::size_t n) {
  std::vector<ElementaryMove> rev;
  std::string cur = key;
  while (!side.at(cur).root) {
    rev.push_back(side.at(cur).move);
    cur = side.at(cur).parent;
  }
  Transcript T(n);
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) T.push(*it);
  return T;
}

}  // namespace

std::optional<Transcript> connect_by_search(const Matrix& a, const Matrix& b,
                                            const SearchOptions& opts) {
  if (opts.budget == 0) return std::nullopt;
  require_same_ring(a.ring(), b.ring());
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
  const std::size_t n = a.cols();
  if (a == b) return Transcript(n);
  // Small constants and the variables up to sign; all nonzero elements of small finite rings.
  const auto& R = a.ring();
  std::vector<RingElement> params;
  if (auto size = finite_ring_size(R); size && *size <= kDefaultRingCap) {
    auto pool = candidate_pool(R, opts.seed);
    params.assign(pool.begin() + 1, pool.end());
  } else {
    for (long long k : {1, -1, 2, -2}) params.push_back(R->constant(k));
    for (std::size_t i = 0; i < R->poly().nvars(); ++i) {
      params.push_back(R->variable(i));
      params.push_back(-R->variable(i));
    }
  }

  Frontier fa, fb;
  fa.emplace(a.to_string(), Node{a, "", {}, true});
  fb.emplace(b.to_string(), Node{b, "", {}, true});
  std::deque<std::string> qa{a.to_string()}, qb{b.to_string()};
  std::size_t expanded = 0;
  while (!qa.empty() || !qb.empty()) {
    for (int side = 0; side < 2; ++side) {
      Frontier& mine = side == 0 ? fa : fb;
      Frontier& other = side == 0 ? fb : fa;
      auto& queue = side == 0 ? qa : qb;
      if (queue.empty()) continue;
      if (++expanded > opts.budget) return std::nullopt;
      std::string key = queue.front();
      queue.pop_front();
      Matrix cur = mine.at(key).value;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          for (const auto& t : params) {
            ElementaryMove mv{Side::Column, i, j, t, n};
            Matrix next = apply_move(cur, mv);
            std::string nk = next.to_string();
            if (mine.count(nk)) continue;
            mine.emplace(nk, Node{next, key, mv, false});
            if (other.count(nk)) {
              Transcript from_a = path_to(fa, nk, n);
              Transcript from_b = path_to(fb, nk, n);
              from_a.append(from_b.inverse());
              if (apply_transcript(a, from_a) != b)
                throw InvariantViolation("transcript search produced a bad path");
              return from_a;
            }
            queue.push_back(nk);
          }
        }
    }
  }
  return std::nullopt;
}

OrbitDecider::OrbitDecider(OracleMode mode, std::size_t ring_cap, std::uint64_t enumeration_cap)
    : mode_(mode), ring_cap_(ring_cap), enumeration_cap_(enumeration_cap) {}

const FiniteRingTable* OrbitDecider::table(const RingHandle& R) {
  if (mode_ == OracleMode::Off) return nullptr;
  auto size = finite_ring_size(R);
  if (!size || *size > ring_cap_) return nullptr;
  auto& slot = tables_[R->descriptor()];
  if (!slot) slot = std::make_unique<FiniteRingTable>(R, ring_cap_);
  return slot.get();
}

const OrbitTable* OrbitDecider::orbits(const RingHandle& R, std::size_t m, std::size_t n) {
  const FiniteRingTable* F = table(R);
  if (!F) return nullptr;
  auto key = std::make_tuple(R->descriptor(), m, n);
  auto it = orbits_.find(key);
  if (it != orbits_.end()) return it->second.get();
  std::unique_ptr<OrbitTable> t;
  try {
    t = std::make_unique<OrbitTable>(*F, m, n, enumeration_cap_);
  } catch (const CapExceeded&) {
    orbits_.emplace(key, nullptr);
    return nullptr;
  }
  return orbits_.emplace(key, std::move(t)).first->second.get();
}

std::optional<Matrix> OrbitDecider::canonical(const Matrix& M) {
  if (M.rows() > 2) return std::nullopt;
  const OrbitTable* t = orbits(M.ring(), M.rows(), M.cols());
  if (!t) return std::nullopt;
  int o = t->orbit_of(M);
  if (o < 0) throw NotUnimodularError("orbit query on a non-unimodular matrix");
  return decode_matrix(*table(M.ring()), t->representative(o), M.rows(), M.cols());
}

Verdict OrbitDecider::same_orbit(const Matrix& a, const Matrix& b, const SearchOptions& opts) {
  require_same_ring(a.ring(), b.ring());
  if (a.rows() != b.rows() || a.cols() != b.cols()) return Verdict::Refuted;
  if (a.rows() <= 2) {
    if (const OrbitTable* t = orbits(a.ring(), a.rows(), a.cols())) {
      int oa = t->orbit_of(a), ob = t->orbit_of(b);
      if (oa < 0 || ob < 0) throw NotUnimodularError("orbit query on a non-unimodular matrix");
      return oa == ob ? Verdict::Proven : Verdict::Refuted;
    }
  }
  return connect_by_search(a, b, opts) ? Verdict::Proven : Verdict::Unknown;
}

}  // namespace umk
