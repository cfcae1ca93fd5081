#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "umk/error.hpp"
#include "umk/finite.hpp"
#include "umk/orbit.hpp"
#include "umk/ummat.hpp"

using namespace umk;

TEST_CASE("enumeration ground truth") {
  auto z2 = make_zmod(2), z4 = make_zmod(4);
  FiniteRingTable F2(z2), F4(z4);

  OrbitTable r2(F2, 1, 3);
  CHECK(r2.elements().size() == 7);
  CHECK(r2.orbit_count() == 1);
  CHECK(oracle::int_orbits(2, 1, 3).um.size() == 7);

  OrbitTable r4(F4, 1, 3);
  CHECK(r4.elements().size() == 56);
  CHECK(r4.orbit_count() == 1);
  CHECK(oracle::int_orbits(4, 1, 3).um.size() == 56);

  OrbitTable m2(F2, 2, 3);
  CHECK(m2.elements().size() == 42);
  CHECK(oracle::int_orbits(2, 2, 3).um.size() == 42);
  CHECK(orbit_bfs(F2, encode_matrix(F2, Matrix(z2, {{z2->one(), z2->zero(), z2->zero()}})), 1, 3,
                  column_generators(F2, 3, false))
            .size() == 7);
}

TEST_CASE("orbit tables match the integer oracle over Z/m") {
  for (int q : {2, 3, 4, 5, 6})
    for (std::size_t m : {1u, 2u})
      for (std::size_t n : {2u, 3u}) {
        if (m == 2 && q > 4 && n == 3) continue;
        CAPTURE(q);
        CAPTURE(m);
        CAPTURE(n);
        auto R = make_zmod(q);
        FiniteRingTable F(R);
        OrbitTable t(F, m, n);
        auto ref = oracle::int_orbits(q, m, n);
        std::vector<std::uint64_t> ref_codes;
        for (const auto& d : ref.um) ref_codes.push_back(oracle::int_code(d, q));
        std::sort(ref_codes.begin(), ref_codes.end());
        CHECK(t.elements() == ref_codes);
        CHECK(t.orbit_count() == ref.orbits);
        auto sizes = t.orbit_sizes();
        std::sort(sizes.begin(), sizes.end());
        CHECK(sizes == ref.sizes);
        // Representatives are orbit minima.
        for (std::size_t o = 0; o < t.orbit_count(); ++o)
          for (auto c : t.elements())
            if (t.orbit_of(c) == static_cast<int>(o)) CHECK(c >= t.representative(static_cast<int>(o)));
      }
}

TEST_CASE("fields have one orbit of rows") {
  for (int p : {2, 3})
    for (std::size_t n : {3u, 4u}) {
      FiniteRingTable F(make_zmod(p));
      CHECK(OrbitTable(F, 1, n).orbit_count() == 1);
    }
}

TEST_CASE("row certificates agree with the finite oracle") {
  std::size_t disagreements = 0;
  for (int q = 2; q <= 8; ++q) {
    auto R = make_zmod(q);
    FiniteRingTable F(R);
    for (std::size_t n = 1; n <= 4; ++n) {
      if (std::pow(q, n) > 5000) continue;
      auto um = enumerate_um(F, 1, n);
      std::set<std::uint64_t> uset(um.begin(), um.end());
      std::uint64_t total = 1;
      for (std::size_t k = 0; k < n; ++k) total *= q;
      for (std::uint64_t c = 0; c < total; ++c) {
        Matrix v = decode_matrix(F, c, 1, n);
        auto cert = row_certificate(v);
        if (cert.has_value() != (uset.count(c) > 0)) ++disagreements;
        if (cert) CHECK(verify_split(cert->M(), cert->N()));
      }
    }
  }
  CHECK(disagreements == 0);
}

TEST_CASE("finite polynomial quotients") {
  auto R = make_ring("poly F2[t]/(t^2) sdim 0");
  CHECK(finite_ring_size(R) == 4u);
  FiniteRingTable F(R);
  CHECK(F.size() == 4);
  std::size_t units = 0;
  for (std::size_t i = 0; i < F.size(); ++i) units += F.is_unit(static_cast<std::uint8_t>(i));
  CHECK(units == 2);
  // F2[t]/(t^2) is local with residue field F2, so Um_{1,3} has 4^3 - 2^3 rows.
  OrbitTable t(F, 1, 3);
  CHECK(t.elements().size() == 56);
  CHECK(t.orbit_count() == 1);
}

TEST_CASE("orbit decider") {
  auto z4 = make_zmod(4);
  OrbitDecider dec;
  Matrix a = parse_matrix(z4, "[[1, 0, 0]]"), b = parse_matrix(z4, "[[3, 2, 1]]");
  CHECK(dec.same_orbit(a, b) == Verdict::Proven);
  Matrix s = parse_matrix(z4, "[[1, 0, 0], [0, 1, 0]]"), u = parse_matrix(z4, "[[1, 0, 0], [0, 3, 0]]");
  CHECK(dec.same_orbit(s, u) == Verdict::Proven);

  // Over Z/5 at n = 2 the determinant separates orbits of 2 x 2 matrices.
  auto z5 = make_zmod(5);
  Matrix i2 = parse_matrix(z5, "[[1, 0], [0, 1]]"), d2 = parse_matrix(z5, "[[1, 0], [0, 2]]");
  CHECK(dec.same_orbit(i2, d2) == Verdict::Refuted);

  OrbitDecider off(OracleMode::Off);
  CHECK(off.same_orbit(a, b) == Verdict::Proven);
  CHECK(off.same_orbit(i2, d2, SearchOptions{0, 200}) == Verdict::Unknown);

  auto Q = make_ring("poly Q[x]/(0) sdim 1");
  Matrix p = parse_matrix(Q, "[[1, 0, 0]]"), r = parse_matrix(Q, "[[1, x, 3]]");
  CHECK(dec.same_orbit(p, r) == Verdict::Proven);
  CHECK(dec.same_orbit(p, r, SearchOptions{0, 0}) == Verdict::Unknown);
  auto path = connect_by_search(p, r, SearchOptions{});
  REQUIRE(path);
  CHECK(apply_transcript(p, *path) == r);
}
