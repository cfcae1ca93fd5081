#pragma once

#include <string>

#include "umk/elementary.hpp"
#include "umk/mennicke.hpp"
#include "umk/orbit.hpp"

namespace umk {

// Representatives (X|Y|Z) and (I-X|Y|Z) with trace X = 0.
struct StarForm {
  Matrix X, Y, Z;
  Matrix M, N;  // sources
  // Column moves carry the sources into shape; row moves act on the left and commute with them.
  Transcript m_columns, m_rows, n_columns, n_rows;
  SplitUnimodular left_cert, right_cert;

  const Matrix& left() const { return left_cert.M(); }
  const Matrix& right() const { return right_cert.M(); }
  std::size_t n() const { return M.cols(); }
  void verify() const;
};

// Wraps already shaped blocks; checks trace zero and certifies both matrices.
StarForm make_star_form(const Matrix& X, const Matrix& Y, const Matrix& Z);

// Requires n >= 4 and sdim <= 2n - 5.
StarForm normalize_for_star(const Matrix& M, const Matrix& N, const SearchOptions& opts = {});

// (X(I-X) | (I-X)Y+YX | Z), certified.
SplitUnimodular star(const StarForm& f);

SplitUnimodular row1(const Matrix& M);
SplitUnimodular stabilize(const SplitUnimodular& v);
SplitUnimodular stabilize(const Matrix& v);

// Compares the orbit of row1(star) with the orbit of wms_mul(row1 left, row1 right).
Verdict check_row1_homomorphism(const StarForm& f, OrbitDecider& decider,
                                const SearchOptions& opts = {});

std::string serialize(const StarForm& f);

}  // namespace umk
