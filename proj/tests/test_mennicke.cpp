#include <random>

#include "doctest.h"
#include "support.hpp"
#include "umk/error.hpp"
#include "umk/mennicke.hpp"

using namespace umk;
using namespace umk::testing;

namespace {

// A unimodular row as (1, 0, ..., 0) pushed through random column moves.
Matrix random_um_row(const RingHandle& R, std::mt19937_64& rng, std::size_t n, int moves = 4) {
  std::vector<RingElement> e(n, R->zero());
  e[0] = R->one();
  Matrix v = Matrix::row(R, e);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  for (int k = 0; k < moves; ++k) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    apply_move_inplace(v, ElementaryMove{Side::Column, i, j, random_element(R, rng, 1, 2, 2), n});
  }
  return v;
}

}  // namespace

TEST_CASE("normalize_pair on the identity row") {
  auto R = make_ring("poly Q[]/(0) sdim 0");
  Matrix e = parse_row(R, "[1, 0, 0]");
  auto np = normalize_pair(e, e);
  CHECK(np.x.is_one());
  CHECK(np.y.is_zero());
  CHECK(format_entries(np.tail) == "[1, 0]");
  CHECK(serialize(np.eps) == "E C 1 2 1\n");
  CHECK(serialize(np.delta) == "E C 1 2 1\nE C 2 1 -1\n");
  CHECK(apply_transcript(e, np.eps) == parse_row(R, "[1, 1, 0]"));
  CHECK(apply_transcript(e, np.delta) == parse_row(R, "[0, 1, 0]"));
}

TEST_CASE("normalize_pair over Z/6") {
  auto R = make_zmod(6);
  auto np = normalize_pair(parse_row(R, "[2, 3, 0]"), parse_row(R, "[3, 2, 0]"));
  CHECK((np.x + np.y).is_one());
  CHECK_NOTHROW(np.verify());
}

TEST_CASE("dimension gates") {
  auto R = make_ring("poly Q[x]/(0) sdim 4");
  Matrix e = parse_row(R, "[1, 0, 0]");
  CHECK_THROWS_AS(normalize_pair(e, e), DimensionGate);
  auto R3 = make_ring("poly Q[x]/(0) sdim 3");
  Matrix e3 = parse_row(R3, "[1, 0, 0]");
  CHECK_NOTHROW(normalize_pair(e3, e3));
  CHECK_THROWS_AS(wms_mul(e3, e3), DimensionGate);
  CHECK_THROWS_AS(normalize_pair(parse_row(R3, "[x, 0, 0]"), e3), NotUnimodularError);
}

TEST_CASE("wms_mul on normalized input multiplies heads") {
  auto R = make_zmod(5);
  auto prod = wms_mul(parse_row(R, "[3, 1, 0]"), parse_row(R, "[3, 1, 0]"));
  CHECK(prod.product.M() == parse_row(R, "[4, 1, 0]"));
  auto Q = make_ring("poly Q[x]/(0) sdim 1");
  auto p2 = wms_mul(parse_row(Q, "[x, x^2+1, x]"), parse_row(Q, "[1-x, x^2+1, x]"));
  CHECK(p2.product.M() == parse_row(Q, "[x-x^2, x^2+1, x]"));
}

TEST_CASE("normalize_pair and wms_mul postconditions on random rows") {
  std::mt19937_64 rng(11);
  std::vector<RingHandle> rings{make_ring("poly Q[x]/(0) sdim 1"),
                                make_ring("poly Q[x,y,z]/(x^2+y^2+z^2-1) sdim 2"),
                                make_ring("poly F5[t]/(0) sdim 1"), make_zmod(12)};
  int done = 0;
  for (const auto& R : rings)
    for (std::size_t n : {3u, 4u})
      for (int k = 0; k < 6; ++k) {
        Matrix v = random_um_row(R, rng, n), w = random_um_row(R, rng, n);
        auto np = normalize_pair(v, w);
        CHECK_NOTHROW(np.verify());
        CHECK(apply_transcript(v, np.eps) == np.v_normalized());
        auto prod = wms_mul(v, w);
        CHECK(verify_split(prod.product.M(), prod.product.N()));
        CHECK(prod.product.M()(0, 0) == prod.pair.x * prod.pair.y);
        ++done;
      }
  CHECK(done == 48);
}

TEST_CASE("wms identity and inverse") {
  OrbitDecider dec;
  auto R = make_zmod(4);
  Matrix e = parse_row(R, "[1, 0, 0]");
  auto inv = wms_inverse(SplitUnimodular(e, e.transpose()));
  CHECK(dec.same_orbit(inv.product.M(), e) == Verdict::Proven);

  FiniteRingTable F(make_zmod(4));
  OrbitTable t(F, 1, 3);
  for (auto code : t.elements()) {
    Matrix v = decode_matrix(F, code, 1, 3);
    CHECK(dec.same_orbit(wms_mul(v, e).product.M(), v) == Verdict::Proven);
    auto s = require_unimodular(v, "v");
    auto prod = wms_mul(s, wms_inverse(s).product);
    CHECK(dec.same_orbit(prod.product.M(), e) == Verdict::Proven);
  }

  auto Q = make_ring("poly Q[x]/(0) sdim 1");
  Matrix a = parse_row(Q, "[x, 1-x, x^2]");
  auto sa = require_unimodular(a, "a");
  auto back = wms_mul(sa, wms_inverse(sa).product);
  CHECK(dec.same_orbit(back.product.M(), parse_row(Q, "[1, 0, 0]")) == Verdict::Proven);
}

TEST_CASE("relation instances") {
  OrbitDecider dec;
  auto R = make_zmod(4);
  auto c = [&](int k) { return R->constant(k); };
  auto ms3 = ms3_instance(c(3), c(2), {c(1), c(0)});
  CHECK(check_relation(ms3, dec) == Verdict::Proven);
  CHECK(ms3.rows() == "[3, 1, 0]*[2, 1, 0]=[2, 1, 0]");
  CHECK_THROWS_AS(ms3_instance(c(1), c(1), {c(1), c(0)}), PreconditionError);

  // r = q = 1 leaves r(1+q) - q = 1, outside (2); the tail (1, 0) generates everything.
  CHECK_THROWS_AS(ms5_instance(c(1), c(1), {c(2), c(0)}), PreconditionError);
  auto ms5 = ms5_instance(c(1), c(1), {c(1), c(0)});
  REQUIRE(ms5.witness);
  CHECK(ms5.witness->verify());
  CHECK(check_relation(ms5, dec) == Verdict::Proven);

  CHECK(check_relation(ms6_instance(c(1), {c(2), c(1)}), dec) == Verdict::Proven);
  CHECK(check_relation(ms7_instance(c(3), {c(2), c(1)}, 3), dec) == Verdict::Proven);
  CHECK(check_relation(ms4_instance(c(3), c(1), {c(2), c(0)}), dec) == Verdict::Proven);

  Transcript T(3);
  T.push(Side::Column, 0, 1, c(3));
  CHECK(check_relation(ms1_instance(parse_row(R, "[1, 2, 0]"), T), dec) == Verdict::Proven);

  auto Q = make_ring("poly Q[x]/(0) sdim 1");
  auto q3 = ms3_instance(Q->parse("x"), Q->parse("1-x"), {Q->one(), Q->zero()});
  CHECK(check_relation(q3, dec) == Verdict::Proven);
  CHECK(check_relation(q3, dec, SearchOptions{0, 0}) == Verdict::Unknown);
}
