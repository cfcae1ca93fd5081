#include <random>

#include "doctest.h"
#include "support.hpp"
#include "umk/error.hpp"
#include "umk/homotopy.hpp"

using namespace umk;
using namespace umk::testing;

TEST_CASE("witness verification") {
  auto Q = make_ring("poly Q[]/(0) sdim 0");
  auto Qt = polynomial_extension(Q);
  CHECK(Qt->sdim() == 1);
  Matrix e = parse_row(Q, "[1, 0, 0]");
  CHECK(verify_homotopy(make_witness(Q, Qt, parse_row(Qt, "[1, 0, 0]")), e, e));
  auto h = make_witness(Q, Qt, parse_row(Qt, "[1, t, 0]"));
  CHECK(verify_homotopy(h, e, parse_row(Q, "[1, 1, 0]")));
  CHECK_FALSE(verify_homotopy(h, e, e));
  auto bad = make_witness(Q, Qt, parse_row(Qt, "[t, 0, 0]"));
  CHECK_FALSE(bad.cert.has_value());
  CHECK_FALSE(verify_homotopy(bad, parse_row(Q, "[0, 0, 0]"), e));
  CHECK_THROWS_AS(verify_homotopy(h, parse_row(make_zmod(5), "[1, 0, 0]"), e), RingMismatch);
}

TEST_CASE("homotopies from transcripts") {
  auto Q = make_ring("poly Q[]/(0) sdim 0");
  Matrix e = parse_row(Q, "[1, 0, 0]");
  Transcript T(3);
  T.push(Side::Column, 0, 1, Q->one());
  auto h = homotopy_from_transcript(e, T);
  CHECK(h.z == parse_row(h.extension, "[1, t, 0]"));
  auto c = homotopy_from_transcript(e, Transcript(3));
  CHECK(c.z == parse_row(c.extension, "[1, 0, 0]"));

  auto Z6 = make_zmod(6);
  Matrix v = parse_row(Z6, "[2, 3, 0]");
  Transcript U(3);
  U.push(Side::Column, 0, 2, Z6->constant(5));
  U.push(Side::Column, 1, 0, Z6->constant(2));
  U.push(Side::Column, 2, 1, Z6->constant(1));
  auto hz = homotopy_from_transcript(v, U);
  CHECK(hz.start() == v);
  CHECK(hz.end() == apply_transcript(v, U));
  CHECK(verify_homotopy(hz, v, apply_transcript(v, U)));
}

TEST_CASE("transcript homotopies verify on random rows") {
  std::mt19937_64 rng(29);
  std::vector<RingHandle> rings{make_ring("poly Q[x]/(0) sdim 1"),
                                make_ring("poly F5[s]/(s^2-2) sdim 0"), make_zmod(10)};
  std::uniform_int_distribution<std::size_t> idx(0, 3);
  for (const auto& R : rings)
    for (int k = 0; k < 8; ++k) {
      Transcript build(4), T(4);
      for (int m = 0; m < 6; ++m) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        build.push(Side::Column, i, j, random_element(R, rng, 1, 2, 2));
        i = idx(rng), j = idx(rng);
        if (i != j) T.push(Side::Column, i, j, random_element(R, rng, 1, 2, 2));
      }
      Matrix v = apply_transcript(parse_row(R, "[1, 0, 0, 0]"), build);
      auto h = homotopy_from_transcript(v, T);
      CHECK(verify_homotopy(h, v, apply_transcript(v, T)));
      // Substitution commutes with normal forms: z(1) replays T exactly.
      CHECK(h.at(R->one()) == apply_transcript(v, specialize(elementary_path(T, h.extension), R->one())));
    }
}

TEST_CASE("witness files round-trip") {
  auto S = make_ring("poly Q[x,y,z]/(x^2+y^2+z^2-1) sdim 2");
  Matrix v = parse_row(S, "[x, y, z]");
  Transcript T(3);
  T.push(Side::Column, 0, 1, S->parse("z"));
  auto h = homotopy_from_transcript(v, T, "s");
  std::string text = serialize(h, v, apply_transcript(v, T));
  auto back = parse_witness(text);
  CHECK(back.witness.z.to_string() == h.z.to_string());
  REQUIRE(back.v);
  REQUIRE(back.w);
  CHECK(verify_homotopy(back.witness, *back.v, *back.w));
  CHECK(serialize(back.witness, back.v, back.w) == text);
  CHECK_THROWS_AS(parse_witness("ring: zmod 4\nfoo: 1\n"), ParseError);
}
