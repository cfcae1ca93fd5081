#include <cstdint>

#include "doctest.h"
#include "umk/audit.hpp"
#include "umk/error.hpp"

using namespace umk;

namespace {

// Over a prime field a 2 x n matrix is unimodular iff some 2 x 2 minor is nonzero.
bool rank_two_mod_p(const std::vector<int>& m, std::size_t n, int p) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (((m[i] * m[n + j] - m[j] * m[n + i]) % p + p) % p) return true;
  return false;
}

std::size_t star_form_count(int p, std::size_t n) {
  const std::size_t k = n - 4, digits = 7 + 2 * k;
  std::size_t total = 1, count = 0;
  for (std::size_t d = 0; d < digits; ++d) total *= p;
  for (std::size_t c = 0; c < total; ++c) {
    std::vector<int> d(digits);
    for (std::size_t i = 0, x = c; i < digits; ++i, x /= p) d[digits - 1 - i] = static_cast<int>(x % p);
    std::vector<int> L(2 * n), R(2 * n);
    int X[2][2] = {{d[0], d[1]}, {d[2], -d[0]}};
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t j = 0; j < 2; ++j) {
        L[r * n + j] = X[r][j];
        R[r * n + j] = (r == j) - X[r][j];
        L[r * n + 2 + j] = R[r * n + 2 + j] = d[3 + 2 * r + j];
      }
      for (std::size_t j = 0; j < k; ++j) L[r * n + 4 + j] = R[r * n + 4 + j] = d[7 + r * k + j];
    }
    count += rank_two_mod_p(L, n, p) && rank_two_mod_p(R, n, p);
  }
  return count;
}

}  // namespace

TEST_CASE("tags") {
  for (auto k : all_audit_kinds()) CHECK(parse_audit_kind(to_string(k)) == k);
  CHECK(all_audit_kinds().size() == 13);
  CHECK_FALSE(parse_audit_kind("MS8"));
  CHECK(to_string(AuditKind::AdjointOrbit) == "adjoint-orbit");
}

TEST_CASE("reference audits have no violations") {
  auto Z4 = make_zmod(4);
  auto ms3 = audit(Z4, 3, AuditKind::MS3);
  CHECK(ms3.violations == 0);
  CHECK(ms3.unknown == 0);
  CHECK(ms3.instances() > 0);
  CHECK(ms3.summary().find("0 violations") != std::string::npos);
  auto left = audit(Z4, 3, AuditKind::LeftAction);
  CHECK(left.violations == 0);
  CHECK(left.instances() == 2688);  // 42 surjections mod 2, times 2^6 lifts
  auto r1 = audit(make_zmod(2), 4, AuditKind::Row1Hom);
  CHECK(r1.violations == 0);
  CHECK(r1.unknown == 0);
  CHECK(r1.instances() == star_form_count(2, 4));
}

TEST_CASE("star form enumeration matches a rank count") {
  for (int p : {2, 3}) {
    auto R = make_zmod(p);
    FiniteRingTable F(R);
    auto forms = enumerate_star_forms(F, 4);
    CHECK(forms.size() == star_form_count(p, 4));
    for (const auto& f : forms) CHECK(trace(f.X).is_zero());
  }
  FiniteRingTable F2(make_zmod(2));
  CHECK(enumerate_star_forms(F2, 5).size() == star_form_count(2, 5));
}

TEST_CASE("adjoint orbit instances are the right inverses with several left inverses") {
  // Over F_2 at n = 3 every rank two 3 x 2 matrix has 2^2 left inverses.
  auto r = audit(make_zmod(2), 3, AuditKind::AdjointOrbit);
  CHECK(r.instances() == 42);
  CHECK(r.violations == 0);
}

TEST_CASE("every tag runs on a small ring") {
  for (auto k : all_audit_kinds()) {
    auto r = audit(make_zmod(2), 4, k);
    CHECK_MESSAGE(r.violations == 0, r.summary());
    CHECK(r.unknown == 0);
    std::string text = format_text(r);
    CHECK(text.rfind(to_string(k) + " ", 0) == 0);
    CHECK(text.find("runtime") == std::string::npos);
    CHECK(format_text(r, true).find("runtime") != std::string::npos);
  }
  CHECK(audit(make_zmod(2), 4, AuditKind::MS2).informative);
}

TEST_CASE("deterministic reports") {
  auto a = audit(make_zmod(3), 3, AuditKind::MS5), b = audit(make_zmod(3), 3, AuditKind::MS5);
  CHECK(format_text(a) == format_text(b));
}

TEST_CASE("audit errors") {
  CHECK_THROWS_AS(audit(make_ring("poly Q[x]/(0) sdim 1"), 3, AuditKind::MS3), Unsupported);
  CHECK_THROWS_AS(audit(make_zmod(2), 3, AuditKind::StarWelldef), PreconditionError);
  CHECK_THROWS_AS(audit(make_zmod(2), 2, AuditKind::MS3), PreconditionError);
  AuditOptions tight;
  tight.enumeration_cap = 10;
  CHECK_THROWS_AS(audit(make_zmod(4), 3, AuditKind::LeftAction, tight), CapExceeded);
  tight.enumeration_cap = kDefaultEnumerationCap;
  tight.ring_cap = 4;
  CHECK_THROWS_AS(audit(make_zmod(5), 3, AuditKind::MS3, tight), CapExceeded);
}
