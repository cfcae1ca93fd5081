#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "umk/error.hpp"
#include "umk/groebner.hpp"
#include "umk/parse.hpp"
#include "umk/ring.hpp"

using namespace umk;

namespace {
const char* kSphere = "poly Q[x,y,z]/(x^2+y^2+z^2-1) grevlex sdim 2";
}

TEST_CASE("ring descriptors") {
  auto z6 = make_ring("zmod 6");
  CHECK(z6->kind() == RingKind::Zmod);
  CHECK(z6->sdim() == 0);
  CHECK(z6->is_finite());
  CHECK(z6->constant(7) == z6->constant(1));
  CHECK(z6->constant(-1).to_string() == "5");

  auto S = make_ring(kSphere);
  CHECK(S->kind() == RingKind::PolyQuotient);
  CHECK(S->sdim() == 2);
  CHECK_FALSE(S->is_finite());

  auto Qx = make_ring("poly Q[x]/(0) sdim 1");
  CHECK(Qx->basis().empty());
  CHECK(Qx->sdim() == 1);

  auto Q0 = make_ring("poly Q[]/(0) sdim 0");
  CHECK(Q0->parse("4/2") == Q0->constant(2));

  CHECK(make_ring("poly F3[t]/(t^2+1) sdim 0")->is_finite());
  CHECK_FALSE(make_ring("poly F3[t]/(0) sdim 1")->is_finite());

  CHECK_THROWS_AS(make_ring("zmod 0"), ParseError);
  CHECK_THROWS_AS(make_ring("poly F6[x]/(0) sdim 1"), ParseError);
  CHECK_THROWS_AS(make_ring("poly Q[x]/(x) grevlex"), ParseError);
  CHECK_THROWS_AS(make_ring("ring Q"), ParseError);
  CHECK_THROWS(make_ring("poly Q[x]/(1) sdim 0"));
}

TEST_CASE("descriptors round-trip and orders distinguish rings") {
  auto a = make_ring("poly Q[x,y]/(x^2-y) grevlex sdim 1");
  auto b = make_ring(a->descriptor());
  CHECK(a->same_as(*b));
  auto c = make_ring("poly Q[x,y]/(x^2-y) lex sdim 1");
  CHECK_FALSE(a->same_as(*c));
  CHECK_THROWS_AS(a->one() + c->one(), RingMismatch);
}

TEST_CASE("normal forms") {
  auto S = make_ring(kSphere);
  CHECK(S->parse("x^2+y^2+z^2-1").is_zero());
  // x^2 - (x^2+y^2+z^2-1) = 1 - y^2 - z^2 in one division step.
  CHECK(S->parse("x^2").to_string() == "-y^2 - z^2 + 1");
  auto Qx = make_ring("poly Q[x]/(0) sdim 1");
  CHECK(Qx->parse("5").to_string() == "5");

  Ideal I(S, {S->parse("x"), S->parse("y")});
  auto f = S->parse("x*z + y^3 + z^2");
  auto nf = I.normal_form(f);
  CHECK(I.normal_form(nf) == nf);
  // z^2 = 1 once x and y vanish on the sphere
  CHECK(nf == S->one());
}

TEST_CASE("buchberger examples") {
  PolyRing P(CoeffDomain::rationals(), {"x", "y"}, MonomialOrder::Grevlex);
  auto G = buchberger(P, {parse_poly(P, "x")});
  REQUIRE(G.size() == 1);
  CHECK(P.to_string(G[0]) == "x");

  G = buchberger(P, {parse_poly(P, "x^2+y^2-1"), parse_poly(P, "x")});
  bool has = false;
  for (const auto& g : G) has = has || P.to_string(g) == "y^2 - 1";
  CHECK(has);
  CHECK(is_groebner_basis(P, G));
  CHECK(buchberger(P, {}).empty());
}

TEST_CASE("membership certificates") {
  auto Qx = make_ring("poly Q[x]/(0) sdim 1");
  auto c = membership_certificate(Qx->one(), {Qx->parse("x"), Qx->parse("x-1")});
  REQUIRE(c);
  CHECK(c->cofactors[0] == Qx->one());
  CHECK(c->cofactors[1] == -Qx->one());

  auto Qxy = make_ring("poly Q[x,y]/(0) sdim 2");
  CHECK_FALSE(membership_certificate(Qxy->one(), {Qxy->parse("x^2"), Qxy->parse("y")}));

  auto S = make_ring(kSphere);
  auto s = membership_certificate(S->one(), {S->parse("x^2"), S->parse("y"), S->parse("z")});
  REQUIRE(s);
  CHECK(s->verify());
  CHECK(s->cofactors[0] == S->one());
  CHECK(s->cofactors[1] == S->parse("y"));
  CHECK(s->cofactors[2] == S->parse("z"));
}

TEST_CASE("zmod membership uses the gcd with the modulus") {
  auto R = make_zmod(12);
  Ideal I(R, {R->constant(8), R->constant(6)});
  CHECK(I.contains(R->constant(2)));
  CHECK_FALSE(I.contains(R->constant(1)));
  auto c = membership_certificate(R->constant(10), I);
  REQUIRE(c);
  CHECK(c->verify());
  CHECK(I.normal_form(R->constant(5)) == R->constant(1));
}

TEST_CASE("composite coefficients with a variable: unit ideal via CRT") {
  auto R = polynomial_extension(make_zmod(6), "t");
  // (2 + 3t, 3 + 2t): mod 2 it is (t, 1), mod 3 it is (2, 2t).
  std::vector<RingElement> g{R->parse("2 + 3*t"), R->parse("3 + 2*t")};
  auto c = membership_certificate(R->one(), g);
  REQUIRE(c);
  CHECK(c->verify());
  CHECK_FALSE(membership_certificate(R->one(), {R->parse("2*t"), R->parse("4")}));
  auto r4 = polynomial_extension(make_zmod(4), "t");
  // 1 + 2t is a unit in Z/4[t].
  auto u = membership_certificate(r4->one(), {r4->parse("1 + 2*t")});
  REQUIRE(u);
  CHECK(u->verify());
}

TEST_CASE("localization") {
  auto Qx = make_ring("poly Q[x]/(0) sdim 1");
  auto L = localize(Qx, Qx->parse("x"));
  CHECK(L->poly().vars().back() == "u");
  CHECK(L->parse("u*x") == L->one());
  CHECK(L->sdim() == 1);
  auto S = make_ring(kSphere);
  auto LS = localize(S, S->parse("x"));
  CHECK(LS->parse("u*x") == LS->one());
  CHECK_THROWS_AS(localize(Qx, Qx->zero()), PreconditionError);
  auto N = make_ring("poly Q[x]/(x^2) sdim 0");
  CHECK_THROWS_AS(localize(N, N->parse("x")), PreconditionError);
}

TEST_CASE("ring axioms on random samples") {
  std::mt19937_64 rng(7);
  for (const char* d : {"zmod 12", "poly Q[x,y,z]/(x^2+y^2+z^2-1) grevlex sdim 2",
                        "poly F5[s,t]/(s^3-t; t^2+1) lex sdim 0", "poly Q[x,y]/(x*y-1) sdim 1"}) {
    auto R = make_ring(d);
    for (int k = 0; k < 1000; ++k) {
      auto a = testing::random_element(R, rng), b = testing::random_element(R, rng),
           c = testing::random_element(R, rng);
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE((a + (-a)).is_zero());
      REQUIRE(a * b == b * a);
      auto nf = R->element(a.poly());
      REQUIRE(nf == a);
    }
  }
}

TEST_CASE("groebner membership agrees with bounded-degree linear algebra") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> names{"x", "y", "z"};
  for (int trial = 0; trial < 20; ++trial) {
    int nv = 1 + static_cast<int>(rng() % 3);
    std::vector<std::string> vars(names.begin(), names.begin() + nv);
    auto R = make_poly_ring(CoeffDomain::rationals(), vars, {}, MonomialOrder::Grevlex, 0);
    int ng = 1 + static_cast<int>(rng() % 3);
    std::vector<oracle::OPoly> gens;
    std::vector<RingElement> lg;
    for (int g = 0; g < ng; ++g) {
      gens.push_back(oracle::random_poly(rng, nv, 2, 3));
      lg.push_back(R->parse(oracle::to_string(gens.back(), vars)));
    }
    oracle::OPoly member;
    for (int g = 0; g < ng; ++g) member = oracle::add(member, oracle::mul(oracle::random_poly(rng, nv, 1, 2), gens[g]));
    auto lib = membership_certificate(R->parse(oracle::to_string(member, vars)), lg);
    REQUIRE(lib);
    CHECK(lib->verify());
    CHECK(oracle::bounded_membership(member, gens, nv, 1));
  }
}
