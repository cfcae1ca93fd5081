#include "umk/finite.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "umk/error.hpp"

namespace umk {

namespace {

std::vector<Monomial> standard_monomials(const Ring& R) {
  const std::size_t nv = R.poly().nvars();
  std::vector<Monomial> out;
  std::set<std::vector<std::uint32_t>> seen;
  std::deque<Monomial> queue{Monomial(nv)};
  seen.insert(queue.front().exp);
  auto standard = [&](const Monomial& m) {
    for (const auto& g : R.basis())
      if (g.front().mono.divides(m)) return false;
    return true;
  };
  while (!queue.empty()) {
    Monomial m = queue.front();
    queue.pop_front();
    if (!standard(m)) continue;
    out.push_back(m);
    if (out.size() > 64) throw CapExceeded("quotient has too many standard monomials");
    for (std::size_t v = 0; v < nv; ++v) {
      Monomial next = m;
      ++next.exp[v];
      ++next.deg;
      if (seen.insert(next.exp).second) queue.push_back(next);
    }
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    return R.poly().compare(a, b) < 0;
  });
  return out;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t k = 0; k < exp; ++k) {
    if (r > (std::uint64_t{1} << 62) / base) return std::uint64_t{1} << 62;
    r *= base;
  }
  return r;
}

}  // namespace

std::optional<std::uint64_t> finite_ring_size(const RingHandle& R) {
  if (!R->is_finite()) return std::nullopt;
  if (R->kind() == RingKind::Zmod) return R->domain().modulus();
  return checked_pow(R->domain().modulus(), standard_monomials(*R).size());
}

std::vector<RingElement> enumerate_elements(const RingHandle& R, std::size_t cap) {
  auto size = finite_ring_size(R);
  if (!size) throw Unsupported("ring '" + R->descriptor() + "' is not finite");
  if (*size > cap)
    throw CapExceeded("ring '" + R->descriptor() + "' has " + std::to_string(*size) +
                      " elements, cap is " + std::to_string(cap));
  std::vector<RingElement> out;
  if (R->kind() == RingKind::Zmod) {
    for (std::uint64_t k = 0; k < *size; ++k) out.push_back(R->constant(static_cast<long long>(k)));
    return out;
  }
  auto monos = standard_monomials(*R);
  const std::uint64_t p = R->domain().modulus();
  for (std::uint64_t code = 0; code < *size; ++code) {
    std::vector<Term> terms;
    std::uint64_t c = code;
    for (const auto& m : monos) {
      terms.push_back(Term{m, mpq_class(static_cast<unsigned long>(c % p))});
      c /= p;
    }
    out.push_back(R->element(R->poly().canonical(std::move(terms))));
  }
  return out;
}

std::vector<RingElement> additive_generators(const RingHandle& R) {
  if (R->kind() == RingKind::Zmod) return {R->one()};
  std::vector<RingElement> out;
  for (const auto& m : standard_monomials(*R)) out.push_back(R->element(R->poly().monomial(m, 1)));
  return out;
}

FiniteRingTable::FiniteRingTable(const RingHandle& R, std::size_t cap) : ring_(R) {
  if (cap > 255) throw CapExceeded("finite ring tables hold at most 255 elements");
  elements_ = enumerate_elements(R, cap);
  q_ = elements_.size();
  for (std::size_t i = 0; i < q_; ++i) index_.emplace(elements_[i].to_string(), static_cast<std::uint8_t>(i));
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  for (std::size_t a = 0; a < q_; ++a) {
    neg_[a] = index_of(-elements_[a]);
    for (std::size_t b = 0; b < q_; ++b) {
      add_[a * q_ + b] = index_of(elements_[a] + elements_[b]);
      mul_[a * q_ + b] = index_of(elements_[a] * elements_[b]);
    }
  }
  one_ = index_of(R->one());
  unit_.assign(q_, false);
  for (std::size_t a = 0; a < q_; ++a)
    for (std::size_t b = 0; b < q_; ++b)
      if (mul_[a * q_ + b] == one_) unit_[a] = true;
  for (const auto& g : umk::additive_generators(R)) additive_.push_back(index_of(g));
  principal_.resize(q_);
  for (std::size_t a = 0; a < q_; ++a) {
    std::vector<bool> bits(q_, false);
    for (std::size_t r = 0; r < q_; ++r) bits[mul_[r * q_ + a]] = true;
    principal_[a] = intern(std::move(bits));
  }
}

std::uint8_t FiniteRingTable::index_of(const RingElement& e) const {
  auto it = index_.find(e.to_string());
  if (it == index_.end()) throw Error("element " + e.to_string() + " is not in the table");
  return it->second;
}

int FiniteRingTable::intern(std::vector<bool> bits) const {
  for (std::size_t k = 0; k < ideals_.size(); ++k)
    if (ideals_[k] == bits) return static_cast<int>(k);
  ideal_has_one_.push_back(bits[one_]);
  ideals_.push_back(std::move(bits));
  for (auto& row : join_) row.push_back(-1);
  join_.emplace_back(ideals_.size(), -1);
  return static_cast<int>(ideals_.size() - 1);
}

int FiniteRingTable::join(int I, int J) const {
  int cached = join_[I][J];
  if (cached >= 0) return cached;
  std::vector<bool> bits(q_, false);
  for (std::size_t a = 0; a < q_; ++a) {
    if (!ideals_[I][a]) continue;
    for (std::size_t b = 0; b < q_; ++b)
      if (ideals_[J][b]) bits[add_[a * q_ + b]] = true;
  }
  int K = intern(std::move(bits));
  join_[I][J] = join_[J][I] = K;
  return K;
}

bool FiniteRingTable::ideal_contains(int I, std::uint8_t a) const { return ideals_[I][a]; }

std::uint64_t encode(const FiniteRingTable& F, const std::vector<std::uint8_t>& digits) {
  std::uint64_t code = 0;
  for (auto d : digits) code = code * F.size() + d;
  return code;
}

std::vector<std::uint8_t> decode(const FiniteRingTable& F, std::uint64_t code, std::size_t count) {
  std::vector<std::uint8_t> d(count);
  for (std::size_t k = count; k-- > 0;) {
    d[k] = static_cast<std::uint8_t>(code % F.size());
    code /= F.size();
  }
  return d;
}

std::uint64_t encode_matrix(const FiniteRingTable& F, const Matrix& M) {
  std::vector<std::uint8_t> d;
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) d.push_back(F.index_of(M(i, j)));
  return encode(F, d);
}

Matrix decode_matrix(const FiniteRingTable& F, std::uint64_t code, std::size_t m, std::size_t n) {
  auto d = decode(F, code, m * n);
  Matrix M(F.ring(), m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = F.element(d[i * n + j]);
  return M;
}

bool finite_unimodular(const FiniteRingTable& F, const std::vector<std::uint8_t>& d,
                       std::size_t m, std::size_t n) {
  int I = F.principal(0);
  if (m == 1) {
    for (std::size_t k = 0; k < n; ++k) {
      I = F.join(I, F.principal(d[k]));
      if (F.contains_one(I)) return true;
    }
    return F.contains_one(I);
  }
  if (m != 2) throw Unsupported("finite unimodularity is implemented for m = 1, 2");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::uint8_t minor = F.sub(F.mul(d[i], d[n + j]), F.mul(d[j], d[n + i]));
      I = F.join(I, F.principal(minor));
      if (F.contains_one(I)) return true;
    }
  return false;
}

std::vector<std::uint64_t> enumerate_um(const FiniteRingTable& F, std::size_t m, std::size_t n,
                                        std::uint64_t cap) {
  if (m < 1 || m > 2 || n < m) throw ShapeError("enumerate_um needs m in {1,2} and n >= m");
  const std::uint64_t total = checked_pow(F.size(), m * n);
  if (total > cap)
    throw CapExceeded(std::to_string(F.size()) + "^" + std::to_string(m * n) +
                      " candidates exceed the enumeration cap " + std::to_string(cap));
  std::vector<std::uint64_t> out;
  std::vector<std::uint8_t> d(m * n, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    if (finite_unimodular(F, d, m, n)) out.push_back(code);
    for (std::size_t k = d.size(); k-- > 0;) {
      if (++d[k] < F.size()) break;
      d[k] = 0;
    }
  }
  return out;
}

std::vector<ColumnGenerator> column_generators(const FiniteRingTable& F, std::size_t n,
                                               bool additive_only) {
  std::vector<ColumnGenerator> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (additive_only) {
        for (auto t : F.additive_generators()) gens.push_back({i, j, t});
      } else {
        for (std::size_t t = 1; t < F.size(); ++t) gens.push_back({i, j, static_cast<std::uint8_t>(t)});
      }
    }
  return gens;
}

std::uint64_t apply_generator(const FiniteRingTable& F, std::uint64_t code, std::size_t m,
                              std::size_t n, const ColumnGenerator& g) {
  auto d = decode(F, code, m * n);
  for (std::size_t r = 0; r < m; ++r)
    d[r * n + g.j] = F.add(d[r * n + g.j], F.mul(g.t, d[r * n + g.i]));
  return encode(F, d);
}

std::uint64_t apply_row_generator(const FiniteRingTable& F, std::uint64_t code, std::size_t n,
                                  std::size_t i, std::size_t j, std::uint8_t t) {
  auto d = decode(F, code, 2 * n);
  for (std::size_t c = 0; c < n; ++c) d[i * n + c] = F.add(d[i * n + c], F.mul(t, d[j * n + c]));
  return encode(F, d);
}

std::vector<std::uint64_t> orbit_bfs(const FiniteRingTable& F, std::uint64_t start, std::size_t m,
                                     std::size_t n, const std::vector<ColumnGenerator>& gens) {
  std::set<std::uint64_t> seen{start};
  std::deque<std::uint64_t> queue{start};
  while (!queue.empty()) {
    std::uint64_t c = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      std::uint64_t next = apply_generator(F, c, m, n, g);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return {seen.begin(), seen.end()};
}

OrbitTable::OrbitTable(const FiniteRingTable& F, std::size_t m, std::size_t n, std::uint64_t cap)
    : F_(&F), m_(m), n_(n) {
  codes_ = enumerate_um(F, m, n, cap);
  const std::size_t N = codes_.size();
  std::vector<std::size_t> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index = [&](std::uint64_t code) {
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code)
      throw InvariantViolation("elementary move left the unimodular set");
    return static_cast<std::size_t>(it - codes_.begin());
  };
  auto gens = column_generators(F, n, true);
  generators_ = gens.size();
  for (std::size_t k = 0; k < N; ++k)
    for (const auto& g : gens) {
      std::size_t a = find(k), b = find(index(apply_generator(F, codes_[k], m, n, g)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  // Roots are the smallest index in each class, hence the smallest code.
  orbit_.assign(N, -1);
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t r = find(k);
    if (orbit_[r] < 0) {
      orbit_[r] = static_cast<int>(reps_.size());
      reps_.push_back(codes_[r]);
      sizes_.push_back(0);
    }
    orbit_[k] = orbit_[r];
    ++sizes_[orbit_[k]];
  }
  // Closure pass under every e_ij(t), t != 0.
  for (const auto& g : column_generators(F, n, false))
    for (std::size_t k = 0; k < N; ++k)
      if (orbit_[index(apply_generator(F, codes_[k], m, n, g))] != orbit_[k])
        throw InvariantViolation("orbit partition is not closed under the generators");
}

bool OrbitTable::contains(std::uint64_t code) const {
  return std::binary_search(codes_.begin(), codes_.end(), code);
}

int OrbitTable::orbit_of(std::uint64_t code) const {
  auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return -1;
  return orbit_[it - codes_.begin()];
}

}  // namespace umk
