#include "umk/ummat.hpp"

#include "umk/error.hpp"

namespace umk {

namespace {

void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  if (k > n) return;
  for (;;) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

Matrix submatrix(const Matrix& M, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols) {
  Matrix s(M.ring(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = M(rows[i], cols[j]);
  return s;
}

}  // namespace

SplitUnimodular::SplitUnimodular(Matrix M, Matrix N) : M_(std::move(M)), N_(std::move(N)) {
  if (!verify_split(M_, N_))
    throw InvariantViolation("M N != I for M = " + M_.to_string() + ", N = " + N_.to_string());
}

bool verify_split(const Matrix& M, const Matrix& N) {
  if (M.cols() != N.rows() || M.rows() != N.cols())
    throw ShapeError("verify_split: shapes " + std::to_string(M.rows()) + "x" +
                     std::to_string(M.cols()) + " and " + std::to_string(N.rows()) + "x" +
                     std::to_string(N.cols()) + " are incompatible");
  return (M * N).is_identity();
}

std::vector<RingElement> minors(const Matrix& M, std::size_t k) {
  if (k < 1 || k > M.rows() || k > M.cols()) throw ShapeError("minor size out of range");
  std::vector<std::vector<std::size_t>> rs, cs;
  combinations(M.rows(), k, rs);
  combinations(M.cols(), k, cs);
  std::vector<RingElement> out;
  for (const auto& r : rs)
    for (const auto& c : cs) out.push_back(determinant(submatrix(M, r, c)));
  return out;
}

Ideal minors_ideal(const Matrix& M, std::size_t k, std::size_t budget) {
  std::vector<RingElement> gens;
  for (auto& d : minors(M, k)) {
    if (d.is_zero()) continue;
    bool dup = false;
    for (const auto& g : gens) dup = dup || g == d;
    if (!dup) gens.push_back(std::move(d));
  }
  return Ideal(M.ring(), std::move(gens), budget);
}

std::optional<SplitUnimodular> row_certificate(const Matrix& v, std::size_t budget) {
  if (v.rows() != 1) throw ShapeError("row_certificate expects a 1 x n row");
  auto entries = v.row_entries(0);
  const RingHandle& R = v.ring();
  // Small table rings: the lexicographically least cofactor vector, first entry most significant.
  if (R->kind() == RingKind::Zmod) {
    const std::uint64_t m = R->domain().modulus();
    const std::size_t n = entries.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n && total <= 4096; ++i) total *= m;
    if (total <= 4096) {
      std::vector<RingElement> residues;
      for (std::uint64_t k = 0; k < m; ++k) residues.push_back(R->constant(static_cast<long long>(k)));
      std::vector<std::uint64_t> b(n, 0);
      for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (std::size_t i = n; i-- > 0; c /= m) b[i] = c % m;
        RingElement s = R->zero();
        for (std::size_t i = 0; i < n; ++i) s += entries[i] * residues[b[i]];
        if (s.is_one()) {
          std::vector<RingElement> col;
          for (auto k : b) col.push_back(residues[k]);
          return SplitUnimodular(v, Matrix::column(R, col));
        }
      }
      return std::nullopt;
    }
  }
  std::optional<MembershipCertificate> cert;
  try {
    cert = membership_certificate(v.ring()->one(), entries, budget);
  } catch (const BudgetExceeded& e) {
    throw SolveBudgetExceeded(std::string("row certification: ") + e.what());
  }
  if (!cert) return std::nullopt;
  return SplitUnimodular(v, Matrix::column(v.ring(), cert->cofactors));
}

std::optional<SplitUnimodular> matrix_right_inverse(const Matrix& M, std::size_t budget) {
  if (M.rows() > M.cols()) throw ShapeError("right inverse needs m <= n");
  if (M.rows() == 1) return row_certificate(M, budget);
  const std::size_t m = M.rows();
  std::vector<std::vector<std::size_t>> cs;
  combinations(M.cols(), m, cs);
  std::vector<std::size_t> all_rows(m);
  for (std::size_t i = 0; i < m; ++i) all_rows[i] = i;
  std::vector<RingElement> dets;
  std::vector<Matrix> subs;
  for (const auto& c : cs) {
    subs.push_back(submatrix(M, all_rows, c));
    dets.push_back(determinant(subs.back()));
  }
  // Certify with nonzero minors only.
  std::vector<RingElement> gens;
  std::vector<std::size_t> which;
  for (std::size_t s = 0; s < dets.size(); ++s)
    if (!dets[s].is_zero()) {
      gens.push_back(dets[s]);
      which.push_back(s);
    }
  std::optional<MembershipCertificate> cert;
  try {
    cert = membership_certificate(M.ring()->one(), gens, budget);
  } catch (const BudgetExceeded& e) {
    throw SolveBudgetExceeded(std::string("maximal-minor certification: ") + e.what());
  }
  if (!cert) return std::nullopt;
  Matrix N(M.ring(), M.cols(), m);
  for (std::size_t g = 0; g < which.size(); ++g) {
    const RingElement& c = cert->cofactors[g];
    if (c.is_zero()) continue;
    Matrix adj = adjugate(subs[which[g]]);
    const auto& cols = cs[which[g]];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) N(cols[i], j) += c * adj(i, j);
  }
  return SplitUnimodular(M, N);
}

SplitUnimodular require_unimodular(const Matrix& M, const std::string& what, std::size_t budget) {
  auto s = matrix_right_inverse(M, budget);
  if (!s) throw NotUnimodularError(what + " " + M.to_string() + " is not unimodular");
  return *s;
}

bool is_unimodular(const Matrix& M, std::size_t budget) {
  return matrix_right_inverse(M, budget).has_value();
}

}  // namespace umk
