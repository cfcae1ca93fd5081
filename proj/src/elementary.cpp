#include "umk/elementary.hpp"

#include <sstream>

#include "umk/error.hpp"
#include "umk/parse.hpp"

namespace umk {

void Transcript::push(ElementaryMove mv) {
  if (mv.size != n_)
    throw ShapeError("move of size " + std::to_string(mv.size) + " in a transcript of size " +
                     std::to_string(n_));
  if (mv.i == mv.j || mv.i >= n_ || mv.j >= n_) throw ShapeError("bad move indices");
  if (!moves_.empty()) require_same_ring(moves_.front().t.ring(), mv.t.ring());
  moves_.push_back(std::move(mv));
}

void Transcript::push(Side side, std::size_t i, std::size_t j, RingElement t) {
  push(ElementaryMove{side, i, j, std::move(t), n_});
}

void Transcript::append(const Transcript& o) {
  if (o.n_ != n_ && !o.empty()) throw ShapeError("cannot concatenate transcripts of different size");
  for (const auto& mv : o.moves_) push(mv);
}

Transcript Transcript::inverse() const {
  Transcript inv(n_);
  for (auto it = moves_.rbegin(); it != moves_.rend(); ++it) {
    ElementaryMove mv = *it;
    mv.t = -mv.t;
    inv.moves_.push_back(std::move(mv));
  }
  return inv;
}

void apply_move_inplace(Matrix& M, const ElementaryMove& mv) {
  if (mv.side == Side::Column) {
    if (mv.size != M.cols()) throw ShapeError("column move size does not match the matrix");
    for (std::size_t r = 0; r < M.rows(); ++r)
      if (!M(r, mv.i).is_zero()) M(r, mv.j) += mv.t * M(r, mv.i);
  } else {
    if (mv.size != M.rows()) throw ShapeError("row move size does not match the matrix");
    for (std::size_t c = 0; c < M.cols(); ++c)
      if (!M(mv.j, c).is_zero()) M(mv.i, c) += mv.t * M(mv.j, c);
  }
}

Matrix apply_move(const Matrix& M, const ElementaryMove& mv) {
  Matrix r = M;
  apply_move_inplace(r, mv);
  return r;
}

Matrix apply_transcript(const Matrix& M, const Transcript& T) {
  Matrix r = M;
  for (const auto& mv : T.moves()) apply_move_inplace(r, mv);
  return r;
}

Matrix transcript_matrix(const RingHandle& ring, const Transcript& T) {
  return apply_transcript(Matrix::identity(ring, T.size()), T);
}

Matrix block_sum(const Matrix& A, const Matrix& B) {
  require_same_ring(A.ring(), B.ring());
  Matrix r(A.ring(), A.rows() + B.rows(), A.cols() + B.cols());
  r.set_block(0, 0, A);
  r.set_block(A.rows(), A.cols(), B);
  return r;
}

ConjugatorResult whitehead_conjugator(const SplitUnimodular& S, const Matrix& T,
                                      const Matrix& T_inv) {
  const std::size_t m = S.m(), n = S.n();
  if (T.rows() != m || T.cols() != m || T_inv.rows() != m || T_inv.cols() != m)
    throw ShapeError("conjugator needs m x m matrices T and T^-1");
  Matrix Im = Matrix::identity(S.ring(), m);
  if (!(T * T_inv).is_identity() || !(T_inv * T).is_identity())
    throw PreconditionError("supplied T^-1 is not the inverse of T");
  Matrix In = Matrix::identity(S.ring(), n);
  ConjugatorResult res{In + S.N() * (T - Im) * S.M(), In + S.N() * (T_inv - Im) * S.M()};
  if (!(res.G * res.G_inv).is_identity() || T * S.M() != S.M() * res.G)
    throw InvariantViolation("conjugator identities fail for M = " + S.M().to_string());
  return res;
}

Matrix involution_S(const SplitUnimodular& S) {
  if (S.m() != 2) throw ShapeError("involution_S needs a 2 x n split pair");
  const std::size_t n = S.n();
  const RingHandle& R = S.ring();
  Matrix z = S.N().block(0, 1, n, 1);
  Matrix w = S.M().block(1, 0, 1, n);
  Matrix In = Matrix::identity(R, n);
  Matrix P = In - (z * w).scaled(R->constant(2));
  Matrix D = In;
  D(0, 0) = -R->one();
  Matrix result = P * D;
  Matrix v = S.M().block(0, 0, 1, n);
  if (v * result != v * D || !(P * P).is_identity())
    throw InvariantViolation("involution identities fail for M = " + S.M().to_string());
  if (n <= 6 && !determinant(result).is_one())
    throw InvariantViolation("det S != 1 for M = " + S.M().to_string());
  return result;
}

Transcript elementary_path(const Transcript& T, const RingHandle& extension) {
  Transcript out(T.size());
  RingElement t = extension->variable(extension->poly().nvars() - 1);
  for (const auto& mv : T.moves())
    out.push(mv.side, mv.i, mv.j, t * embed(mv.t, extension));
  return out;
}

Transcript specialize(const Transcript& T, const RingElement& value) {
  Transcript out(T.size());
  for (const auto& mv : T.moves()) out.push(mv.side, mv.i, mv.j, substitute_last(mv.t, value));
  return out;
}

std::string serialize(const Transcript& T) {
  std::ostringstream out;
  for (const auto& mv : T.moves())
    out << "E " << (mv.side == Side::Row ? 'R' : 'C') << ' ' << mv.i + 1 << ' ' << mv.j + 1 << ' '
        << mv.t.to_string() << '\n';
  return out.str();
}

Transcript parse_transcript(std::string_view text, const RingHandle& ring, std::size_t n) {
  Transcript T(n);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::istringstream ls(s);
    std::string tag, side;
    long long i = 0, j = 0;
    if (!(ls >> tag >> side >> i >> j) || tag != "E" || (side != "R" && side != "C"))
      throw ParseError("transcript line " + std::to_string(lineno) + ": expected 'E <R|C> <i> <j> <t>'");
    std::string expr;
    std::getline(ls, expr);
    if (trim(expr).empty()) throw ParseError("transcript line " + std::to_string(lineno) + ": missing t");
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n || i == j)
      throw ParseError("transcript line " + std::to_string(lineno) + ": bad indices");
    T.push(side == "R" ? Side::Row : Side::Column, static_cast<std::size_t>(i - 1),
           static_cast<std::size_t>(j - 1), ring->parse(expr));
  }
  return T;
}

}  // namespace umk
