#include <random>

#include "doctest.h"
#include "support.hpp"
#include "umk/error.hpp"
#include "umk/ummat.hpp"

using namespace umk;
using namespace umk::testing;

TEST_CASE("row certificates") {
  auto S = make_ring("poly Q[x,y,z]/(x^2+y^2+z^2-1) sdim 2");
  auto s = row_certificate(parse_row(S, "[x, y, z]"));
  REQUIRE(s);
  CHECK(s->N() == parse_row(S, "[x, y, z]").transpose());

  auto Z6 = make_zmod(6);
  auto z = row_certificate(parse_row(Z6, "[2, 3, 0]"));
  REQUIRE(z);
  CHECK(z->N() == parse_row(Z6, "[2, 1, 0]").transpose());

  auto P = make_ring("poly Q[x,y]/(0) sdim 2");
  CHECK_FALSE(row_certificate(parse_row(P, "[x, y]")));
  CHECK_FALSE(is_unimodular(parse_row(P, "[x, y]")));
  CHECK_THROWS_AS(require_unimodular(parse_row(P, "[x, y]"), "v"), NotUnimodularError);
}

TEST_CASE("matrix right inverses") {
  auto Q = make_ring("poly Q[]/(0) sdim 0");
  auto a = matrix_right_inverse(parse_matrix(Q, "[[1, 0, 0], [0, 1, 0]]"));
  REQUIRE(a);
  CHECK(a->N() == parse_matrix(Q, "[[1, 0], [0, 1], [0, 0]]"));
  auto b = matrix_right_inverse(parse_matrix(Q, "[[1, 2, 3, 4], [0, 1, 0, 0]]"));
  REQUIRE(b);
  CHECK(b->N() == parse_matrix(Q, "[[1, -2], [0, 1], [0, 0], [0, 0]]"));
  auto P = make_ring("poly Q[x,y]/(0) sdim 2");
  CHECK_FALSE(matrix_right_inverse(parse_matrix(P, "[[x, y], [y, x]]")));
  CHECK_THROWS_AS(matrix_right_inverse(parse_matrix(Q, "[[1], [0]]")), ShapeError);
}

TEST_CASE("budget failures are distinct from non-unimodularity") {
  auto S = make_ring("poly Q[x,y,z]/(x^2+y^2+z^2-1) sdim 2");
  Matrix M = parse_matrix(S, "[[x, y, z, 0], [0, x*y, y*z+1, x]]");
  CHECK_THROWS_AS(matrix_right_inverse(M, 1), SolveBudgetExceeded);
}

TEST_CASE("minor ideals") {
  auto Q = make_ring("poly Q[]/(0) sdim 0");
  CHECK(minors_ideal(parse_matrix(Q, "[[1, 0, 0], [0, 1, 0]]"), 2).is_unit_ideal());
  auto P = make_ring("poly Q[x,y]/(0) sdim 2");
  Ideal I = minors_ideal(parse_matrix(P, "[[x, y, 0], [0, x, y]]"), 2);
  Ideal ref(P, {P->parse("x^2"), P->parse("x*y"), P->parse("y^2")});
  for (const auto& g : ref.generators()) CHECK(I.contains(g));
  for (const auto& g : I.generators()) CHECK(ref.contains(g));
  Ideal e = minors_ideal(parse_matrix(P, "[[x, y, 0], [0, x, y]]"), 1);
  CHECK(e.contains(P->parse("x")));
  CHECK(e.contains(P->parse("y")));
  CHECK_FALSE(e.contains(P->one()));
}

TEST_CASE("verify_split") {
  auto Q = make_ring("poly Q[]/(0) sdim 0");
  CHECK(verify_split(parse_matrix(Q, "[[1, 0, 0], [0, 1, 0]]"),
                     parse_matrix(Q, "[[1, 0], [0, 1], [0, 0]]")));
  auto Z6 = make_zmod(6);
  CHECK(verify_split(parse_row(Z6, "[2, 3, 0]"), parse_row(Z6, "[2, 1, 0]").transpose()));
  CHECK_FALSE(verify_split(parse_row(Q, "[1, 0]"), parse_row(Q, "[0, 1]").transpose()));
  CHECK_THROWS_AS(verify_split(parse_row(Q, "[1, 0]"), parse_row(Q, "[0, 1]")), ShapeError);
  CHECK_THROWS_AS(SplitUnimodular(parse_row(Q, "[1, 0]"), parse_row(Q, "[0, 1]").transpose()),
                  InvariantViolation);
}

TEST_CASE("certification agrees with the entry ideal and is sound") {
  std::mt19937_64 rng(41);
  std::vector<RingHandle> rings{make_ring("poly Q[x,y]/(0) sdim 2"),
                                make_ring("poly F5[x]/(0) sdim 1"),
                                make_ring("poly Q[x,y,z]/(x^2+y^2+z^2-1) sdim 2")};
  int certified = 0;
  for (const auto& R : rings)
    for (int k = 0; k < 40; ++k) {
      Matrix v = random_matrix(R, rng, 1, 3, 1);
      if (k % 3 == 0) v(0, 2) = R->one() - v(0, 0) * v(0, 1);  // often unimodular
      auto s = row_certificate(v);
      CHECK(s.has_value() == minors_ideal(v, 1).contains(R->one()));
      if (s) {
        CHECK(verify_split(s->M(), s->N()));
        ++certified;
      }
      Matrix M = random_matrix(R, rng, 2, 3, 1);
      if (auto t = matrix_right_inverse(M)) CHECK(verify_split(t->M(), t->N()));
      else CHECK_FALSE(minors_ideal(M, 2).is_unit_ideal());
    }
  CHECK(certified > 0);
}
