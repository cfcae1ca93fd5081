#include "umk/starop.hpp"

#include "umk/error.hpp"

namespace umk {

namespace {

Matrix assemble(const Matrix& X, const Matrix& Y, const Matrix& Z) {
  return hconcat(hconcat(X, Y), Z);
}

// Column j += t column i, skipped when it changes nothing.
void column_move(Matrix& A, Transcript& T, std::size_t i, std::size_t j, const RingElement& t) {
  if (t.is_zero()) return;
  bool effect = false;
  for (std::size_t r = 0; r < A.rows() && !effect; ++r) effect = !(t * A(r, i)).is_zero();
  if (!effect) return;
  T.push(Side::Column, i, j, t);
  apply_move_inplace(A, T.moves().back());
}

void row_move(Matrix& A, Transcript& T, std::size_t i, std::size_t j, const RingElement& t) {
  if (t.is_zero()) return;
  T.push(Side::Row, i, j, t);
  apply_move_inplace(A, T.moves().back());
}

// Right inverse of L A E from one of A, for row transcript L and column transcript E.
SplitUnimodular transport(const SplitUnimodular& s, const Matrix& shaped, const Transcript& cols,
                          const Transcript& rows) {
  const RingHandle& R = s.ring();
  Matrix Einv = transcript_matrix(R, cols.inverse());
  // Row moves act as left multiplication; L^-1 is the row transcript inverse applied to I.
  Matrix Linv = apply_transcript(Matrix::identity(R, s.m()), rows.inverse());
  return SplitUnimodular(shaped, Einv * s.N() * Linv);
}

bool shaped(const Matrix& A, const Matrix& B) {
  const RingHandle& R = A.ring();
  Matrix X = A.block(0, 0, 2, 2);
  if (!trace(X).is_zero()) return false;
  Matrix I = Matrix::identity(R, 2);
  return B.block(0, 0, 2, 2) == I - X &&
         B.block(0, 2, 2, A.cols() - 2) == A.block(0, 2, 2, A.cols() - 2);
}

StarForm finish(const Matrix& M, const Matrix& N, const Matrix& A, const Matrix& B,
                Transcript mc, Transcript mr, Transcript nc, Transcript nr,
                const SplitUnimodular& sm, const SplitUnimodular& sn) {
  const std::size_t n = A.cols();
  SplitUnimodular lc = transport(sm, A, mc, mr), rc = transport(sn, B, nc, nr);
  StarForm f{A.block(0, 0, 2, 2), A.block(0, 2, 2, 2), A.block(0, 4, 2, n - 4),
             M, N, std::move(mc), std::move(mr), std::move(nc), std::move(nr),
             std::move(lc), std::move(rc)};
  f.verify();
  return f;
}

}  // namespace

void StarForm::verify() const {
  const RingHandle& R = X.ring();
  if (X.rows() != 2 || X.cols() != 2 || Y.rows() != 2 || Y.cols() != 2 || Z.rows() != 2)
    throw InvariantViolation("StarForm blocks have the wrong shape");
  if (!trace(X).is_zero()) throw InvariantViolation("StarForm: trace X != 0");
  Matrix I = Matrix::identity(R, 2);
  if (left() != assemble(X, Y, Z) || right() != assemble(I - X, Y, Z))
    throw InvariantViolation("StarForm matrices differ from their blocks");
  if (apply_transcript(apply_transcript(M, m_columns), m_rows) != left() ||
      apply_transcript(apply_transcript(N, n_columns), n_rows) != right())
    throw InvariantViolation("StarForm transcripts do not replay");
  if (!verify_split(left_cert.M(), left_cert.N()) || !verify_split(right_cert.M(), right_cert.N()))
    throw InvariantViolation("StarForm certificates fail");
}

StarForm make_star_form(const Matrix& X, const Matrix& Y, const Matrix& Z) {
  const RingHandle& R = X.ring();
  if (X.rows() != 2 || X.cols() != 2 || Y.rows() != 2 || Y.cols() != 2 || Z.rows() != 2)
    throw ShapeError("StarForm needs 2x2 X, 2x2 Y and 2xk Z");
  if (!trace(X).is_zero()) throw PreconditionError("StarForm needs trace X = 0");
  Matrix I = Matrix::identity(R, 2);
  Matrix L = assemble(X, Y, Z), Rt = assemble(I - X, Y, Z);
  const std::size_t n = L.cols();
  return finish(L, Rt, L, Rt, Transcript(n), Transcript(2), Transcript(n), Transcript(2),
                require_unimodular(L, "(X|Y|Z)"), require_unimodular(Rt, "(I-X|Y|Z)"));
}

StarForm normalize_for_star(const Matrix& M, const Matrix& N, const SearchOptions& opts) {
  require_same_ring(M.ring(), N.ring());
  if (M.rows() != 2 || N.rows() != 2 || M.cols() != N.cols())
    throw ShapeError("normalize_for_star needs two 2 x n matrices");
  const std::size_t n = M.cols();
  if (n < 4) throw PreconditionError("normalize_for_star needs n >= 4");
  const RingHandle& R = M.ring();
  if (R->sdim() + 5 > 2 * n)
    throw DimensionGate("normalize_for_star: sdim " + std::to_string(R->sdim()) +
                        " exceeds 2n-5 = " + std::to_string(2 * n - 5));
  SplitUnimodular sm = require_unimodular(M, "M", opts.groebner_budget);
  SplitUnimodular sn = require_unimodular(N, "N", opts.groebner_budget);
  Transcript mc(n), nc(n), mr(2), nr(2);
  if (shaped(M, N)) return finish(M, N, M, N, mc, mr, nc, nr, sm, sn);

  Matrix A = M, B = N;
  const RingElement one = R->one();
  const auto pool = candidate_pool(R, opts.seed);
  const std::size_t rest = n - 2;

  // (1,1) entries summing to one.
  auto np = normalize_pair(A.block(0, 0, 1, n), B.block(0, 0, 1, n), opts);
  for (const auto& mv : np.eps.moves()) column_move(A, mc, mv.i, mv.j, mv.t);
  for (const auto& mv : np.delta.moves()) column_move(B, nc, mv.i, mv.j, mv.t);

  // First column into shape (a, g) and (1-a, -g).
  {
    RingElement s = A(1, 0) + B(1, 0);
    row_move(A, mr, 1, 0, -s);
    row_move(B, nr, 1, 0, -s);
  }

  // z + v = 1, where z = A(1,1), v = B(1,1).
  {
    const RingElement g = A(1, 0), z = A(1, 1), v = B(1, 1);
    const RingElement target = one - z - v;
    auto tails = [&](const std::vector<RingElement>& da, const std::vector<RingElement>& db) {
      std::vector<RingElement> gens;
      for (std::size_t k = 0; k < rest; ++k) gens.push_back(A(1, k + 2) + da[k]);
      for (std::size_t k = 0; k < rest; ++k) gens.push_back(B(1, k + 2) + db[k]);
      return gens;
    };
    auto split = [&](const std::vector<std::size_t>& tup, const RingElement& unit) {
      std::vector<RingElement> da, db;
      for (std::size_t k = 0; k < rest; ++k) da.push_back(pool[tup[k]] * unit);
      for (std::size_t k = 0; k < rest; ++k) db.push_back(pool[tup[rest + k]] * unit);
      return std::make_pair(da, db);
    };
    if (!membership_certificate(target, tails(std::vector<RingElement>(rest, R->zero()),
                                              std::vector<RingElement>(rest, R->zero())),
                                opts.groebner_budget)) {
      // Multiples of g until (vz, h, w) is unimodular, then multiples of vz.
      std::vector<std::size_t> first;
      spiral_search(2 * rest, pool.size(), opts.budget, "normalize_for_star tail step",
                    [&](const std::vector<std::size_t>& tup) {
                      auto [da, db] = split(tup, g);
                      auto gens = tails(da, db);
                      gens.push_back(v * z);
                      if (!membership_certificate(one, gens, opts.groebner_budget)) return false;
                      first = tup;
                      return true;
                    });
      for (std::size_t k = 0; k < rest; ++k) {
        column_move(A, mc, 0, k + 2, pool[first[k]]);
        column_move(B, nc, 0, k + 2, -pool[first[rest + k]]);
      }
      std::vector<std::size_t> second;
      const RingElement vz = v * z;
      spiral_search(2 * rest, pool.size(), opts.budget, "normalize_for_star sum step",
                    [&](const std::vector<std::size_t>& tup) {
                      auto [da, db] = split(tup, vz);
                      if (!membership_certificate(target, tails(da, db), opts.groebner_budget))
                        return false;
                      second = tup;
                      return true;
                    });
      for (std::size_t k = 0; k < rest; ++k) {
        column_move(A, mc, 1, k + 2, pool[second[k]] * v);
        column_move(B, nc, 1, k + 2, pool[second[rest + k]] * z);
      }
    }
    std::vector<RingElement> zero(rest, R->zero());
    auto cert = membership_certificate(target, tails(zero, zero), opts.groebner_budget);
    if (!cert) throw InvariantViolation("normalize_for_star: lost the z + v certificate");
    for (std::size_t k = 0; k < rest; ++k) {
      column_move(A, mc, k + 2, 1, cert->cofactors[k]);
      column_move(B, nc, k + 2, 1, cert->cofactors[rest + k]);
    }
    if (!(A(1, 1) + B(1, 1)).is_one()) throw InvariantViolation("normalize_for_star: z + v != 1");
  }

  // b + r = 0.
  {
    RingElement s = A(0, 1) + B(0, 1);
    column_move(A, mc, 0, 1, -s);
    column_move(B, nc, 0, 1, -s);
  }

  // Equal later columns: add X(B_k - A_k) to A_k and (I-X)(A_k - B_k) to B_k.
  for (std::size_t k = 2; k < n; ++k) {
    RingElement d0 = B(0, k) - A(0, k), d1 = B(1, k) - A(1, k);
    column_move(A, mc, 0, k, d0);
    column_move(A, mc, 1, k, d1);
    column_move(B, nc, 0, k, -d0);
    column_move(B, nc, 1, k, -d1);
  }

  // Trace zero by adding multiples of the later columns to X; first make -tr X a combination
  // of their entries, adding multiples of det(X) det(I-X) where needed.
  Matrix X = A.block(0, 0, 2, 2);
  Matrix IX = Matrix::identity(R, 2) - X;
  const RingElement minus_tr = -trace(X);
  auto later = [&](const Matrix& Ak) {
    std::vector<RingElement> gens;
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t k = 2; k < n; ++k) gens.push_back(Ak(r, k));
    return gens;
  };
  std::optional<MembershipCertificate> tcert =
      membership_certificate(minus_tr, later(A), opts.groebner_budget);
  if (!tcert) {
    const RingElement dX = determinant(X), dIX = determinant(IX);
    const RingElement delta = dX * dIX;
    Matrix adjX = adjugate(X), adjIX = adjugate(IX);
    std::vector<std::size_t> chosen;
    spiral_search(2 * rest, pool.size(), opts.budget, "normalize_for_star trace step",
                  [&](const std::vector<std::size_t>& tup) {
                    Matrix T = A;
                    for (std::size_t r = 0; r < 2; ++r)
                      for (std::size_t k = 0; k < rest; ++k)
                        T(r, k + 2) += pool[tup[r * rest + k]] * delta;
                    if (!membership_certificate(minus_tr, later(T), opts.groebner_budget))
                      return false;
                    chosen = tup;
                    return true;
                  });
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t k = 0; k < rest; ++k) {
        const RingElement& lam = pool[chosen[r * rest + k]];
        if (lam.is_zero()) continue;
        // X adj(X) = det(X) I, so X (lam det(I-X) adj(X) e_r) = lam delta e_r; same for I-X.
        for (std::size_t c = 0; c < 2; ++c) {
          column_move(A, mc, c, k + 2, lam * dIX * adjX(c, r));
          column_move(B, nc, c, k + 2, lam * dX * adjIX(c, r));
        }
      }
    if (A.block(0, 2, 2, rest) != B.block(0, 2, 2, rest))
      throw InvariantViolation("normalize_for_star: later columns diverged");
    tcert = membership_certificate(minus_tr, later(A), opts.groebner_budget);
    if (!tcert) throw InvariantViolation("normalize_for_star: lost the trace certificate");
  }
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t k = 0; k < rest; ++k) {
      // Column r += c column k adds c W_{.,k} to column r of X; tr changes by c W_{r,k}.
      const RingElement& c = tcert->cofactors[r * rest + k];
      column_move(A, mc, k + 2, r, c);
      column_move(B, nc, k + 2, r, -c);
    }
  if (!shaped(A, B)) throw InvariantViolation("normalize_for_star: result is not shaped");
  return finish(M, N, A, B, mc, mr, nc, nr, sm, sn);
}

SplitUnimodular star(const StarForm& f) {
  const RingHandle& R = f.X.ring();
  Matrix I = Matrix::identity(R, 2);
  Matrix IX = I - f.X;
  Matrix T = assemble(f.X * IX, IX * f.Y + f.Y * f.X, f.Z);
  auto cert = matrix_right_inverse(T);
  if (!cert)
    throw InvariantViolation("star output is not unimodular: X = " + f.X.to_string() +
                             ", Y = " + f.Y.to_string() + ", Z = " + f.Z.to_string() +
                             ", T = " + T.to_string());
  return *cert;
}

SplitUnimodular row1(const Matrix& M) {
  if (M.rows() < 1) throw ShapeError("row1 of an empty matrix");
  return require_unimodular(M.block(0, 0, 1, M.cols()), "first row");
}

SplitUnimodular stabilize(const SplitUnimodular& v) {
  if (v.m() != 1) throw ShapeError("stabilize takes a row");
  const RingHandle& R = v.ring();
  const std::size_t n = v.n() + 1;
  Matrix M(R, 2, n), N(R, n, 2);
  M(0, 0) = R->one();
  N(0, 0) = R->one();
  for (std::size_t i = 1; i < n; ++i) {
    M(1, i) = v.M()(0, i - 1);
    N(i, 1) = v.N()(i - 1, 0);
  }
  return SplitUnimodular(M, N);
}

SplitUnimodular stabilize(const Matrix& v) { return stabilize(require_unimodular(v, "v")); }

Verdict check_row1_homomorphism(const StarForm& f, OrbitDecider& decider,
                                const SearchOptions& opts) {
  try {
    SplitUnimodular T = star(f);
    SplitUnimodular lhs = row1(T.M());
    auto p = wms_mul(row1(f.left()), row1(f.right()), opts);
    return decider.same_orbit(lhs.M(), p.product.M(), opts);
  } catch (const BudgetExceeded&) {
    return Verdict::Unknown;
  }
}

std::string serialize(const StarForm& f) {
  std::string s;
  s += "X = " + f.X.to_string() + "\n";
  s += "Y = " + f.Y.to_string() + "\n";
  s += "Z = " + f.Z.to_string() + "\n";
  auto block = [&](const char* name, const Transcript& T) {
    s += std::string(name) + "\n" + serialize(T) + "end\n";
  };
  block("M-columns", f.m_columns);
  block("M-rows", f.m_rows);
  block("N-columns", f.n_columns);
  block("N-rows", f.n_rows);
  return s;
}

}  // namespace umk
