#include "umk/completion.hpp"

#include "umk/error.hpp"

namespace umk {

namespace {

void check_square(const Matrix& row, const RingElement& root) {
  if (row.rows() != 1) throw ShapeError("completion takes a row");
  require_same_ring(row.ring(), root.ring());
  if (row(0, 0) != root * root)
    throw PreconditionError("first entry " + row(0, 0).to_string() + " is not the square of " +
                            root.to_string());
}

// 3 x 3 matrix with first row (a^2, b, c). Determinant 1 when a p + b q + c r = 1, and
// congruent to 1 modulo (a p + b q + c r - 1) in general.
Matrix square_lift(const RingElement& a, const RingElement& b, const RingElement& c,
                   const RingElement& p, const RingElement& q, const RingElement& r) {
  const RingHandle& R = a.ring();
  const RingElement u = R->one() + a * p;
  return Matrix(R, {{a * a, b, c},
                    {u * (c - a * q), p + q * r, -(q * q)},
                    {-(u * (b + a * r)), r * r, p - q * r}});
}

}  // namespace

CompletionResult complete_square_3(const Matrix& row, const RingElement& root, std::size_t budget) {
  check_square(row, root);
  if (row.cols() != 3) throw ShapeError("complete_square_3 takes three entries");
  auto cert = membership_certificate(row.ring()->one(), row.row_entries(0), budget);
  if (!cert) throw NotUnimodularError("(a^2, b, c) is not unimodular: " + row.to_string());
  const auto& h = cert->cofactors;
  RingElement p = root * h[0];
  Matrix M = square_lift(root, row(0, 1), row(0, 2), p, h[1], h[2]);
  if (!determinant(M).is_one())
    throw InvariantViolation("complete_square_3: determinant " + determinant(M).to_string());
  CompletionResult out{row, M, adjugate(M), {}};
  out.log.push_back("cofactors " + format_entries(h));
  out.log.push_back("p q r " + format_entries({p, h[1], h[2]}));
  return out;
}

CompletionResult second_row_odd(const Matrix& row, const RingElement& root, std::size_t budget) {
  check_square(row, root);
  const std::size_t n = row.cols();
  if (n < 3 || n % 2 == 0) throw PreconditionError("second_row_odd needs odd n >= 3");
  const RingHandle& R = row.ring();
  if (n == 3) {
    CompletionResult sq = complete_square_3(row, root, budget);
    Matrix top = sq.matrix.block(0, 0, 2, 3);
    CompletionResult out{row, top, sq.inverse.block(0, 0, 3, 2), sq.log};
    if (!verify_split(out.matrix, out.inverse))
      throw InvariantViolation("second_row_odd: truncated completion is not split");
    return out;
  }

  auto cert = membership_certificate(R->one(), row.row_entries(0), budget);
  if (!cert) throw NotUnimodularError("row is not unimodular: " + row.to_string());
  const auto& h = cert->cofactors;
  // Completion modulo J = (a4, ..., an): a p + b q + c r = 1 - sum h_k a_k.
  Matrix lift = square_lift(root, row(0, 1), row(0, 2), root * h[0], h[1], h[2]);
  RingElement gap = determinant(lift) - R->one();
  const auto entries = row.row_entries(0);
  std::vector<RingElement> J(entries.begin() + 3, entries.end());
  std::vector<RingElement> c(J.size(), R->zero());
  if (!gap.is_zero()) {
    auto jc = membership_certificate(gap, J, budget);
    if (!jc) throw InvariantViolation("second_row_odd: det(M) - 1 is not in J");
    c = jc->cofactors;
  }
  // sum over pairs (a_{2i} b_{2i+1} - a_{2i+1} b_{2i}) = det(M) - 1.
  Matrix out(R, 2, n);
  for (std::size_t j = 0; j < n; ++j) out(0, j) = row(0, j);
  for (std::size_t j = 0; j < 3; ++j) out(1, j) = lift(1, j);
  for (std::size_t k = 0; k + 1 < J.size(); k += 2) {
    out(1, 3 + k) = -c[k + 1];
    out(1, 4 + k) = c[k];
  }
  auto split = matrix_right_inverse(out, budget);
  if (!split) throw InvariantViolation("second_row_odd: result is not unimodular: " + out.to_string());
  CompletionResult res{row, out, split->N(), {}};
  res.log.push_back("cofactors " + format_entries(h));
  res.log.push_back("lift " + lift.to_string());
  res.log.push_back("det(M) - 1 = " + gap.to_string());
  res.log.push_back("J cofactors " + format_entries(c));
  return res;
}

CompletionResult bass_even_second_row(const SplitUnimodular& s) {
  if (s.m() != 1) throw ShapeError("bass_even_second_row takes a split row");
  const std::size_t n = s.n();
  if (n % 2) throw PreconditionError("bass_even_second_row needs even n");
  const RingHandle& R = s.ring();
  const Matrix& a = s.M();
  const Matrix& b = s.N();
  Matrix M(R, 2, n), N(R, n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    M(0, i) = a(0, i);
    N(i, 0) = b(i, 0);
  }
  for (std::size_t i = 0; i < n; i += 2) {
    M(1, i) = -b(i + 1, 0);
    M(1, i + 1) = b(i, 0);
    N(i, 1) = -a(0, i + 1);
    N(i + 1, 1) = a(0, i);
  }
  if (!verify_split(M, N)) throw InvariantViolation("bass_even_second_row: M N != I");
  return CompletionResult{a, M, N, {"b " + format_entries(b.col_entries(0))}};
}

}  // namespace umk
