#pragma once

#include <optional>

#include "umk/matrix.hpp"

namespace umk {

// A unimodular m x n matrix paired with a right inverse; M N = I_m is checked on construction.
class SplitUnimodular {
 public:
  SplitUnimodular(Matrix M, Matrix N);

  const Matrix& M() const { return M_; }
  const Matrix& N() const { return N_; }
  std::size_t m() const { return M_.rows(); }
  std::size_t n() const { return M_.cols(); }
  const RingHandle& ring() const { return M_.ring(); }

 private:
  Matrix M_, N_;
};

bool verify_split(const Matrix& M, const Matrix& N);

std::vector<RingElement> minors(const Matrix& M, std::size_t k);
Ideal minors_ideal(const Matrix& M, std::size_t k, std::size_t budget = kDefaultGroebnerBudget);

// Right inverse from a membership certificate of 1 in the ideal of the entries.
std::optional<SplitUnimodular> row_certificate(const Matrix& v,
                                               std::size_t budget = kDefaultGroebnerBudget);

// For m >= 2: N = sum_S c_S * adj(M_S) placed in the rows S, where sum_S c_S det(M_S) = 1 is a
// membership certificate over the maximal minors. Throws SolveBudgetExceeded when the
// Groebner computation runs out of budget.
std::optional<SplitUnimodular> matrix_right_inverse(const Matrix& M,
                                                    std::size_t budget = kDefaultGroebnerBudget);

// Certifies or throws NotUnimodularError naming `what`.
SplitUnimodular require_unimodular(const Matrix& M, const std::string& what,
                                   std::size_t budget = kDefaultGroebnerBudget);

bool is_unimodular(const Matrix& M, std::size_t budget = kDefaultGroebnerBudget);

}  // namespace umk
