#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umk/ummat.hpp"

namespace umk {

struct CompletionResult {
  Matrix input;                  // the row
  Matrix matrix;                 // 3 x 3 of determinant one, or 2 x n
  Matrix inverse;                // inverse, or right inverse
  std::vector<std::string> log;  // lift and cofactors used
};

// First row (a^2, b, c) completed to determinant one; `root` is a with row(0,0) = a^2.
CompletionResult complete_square_3(const Matrix& row, const RingElement& root,
                                   std::size_t budget = kDefaultGroebnerBudget);

// For odd n >= 3: a second row making (a1^2, a2, ..., an) a unimodular 2 x n matrix.
CompletionResult second_row_odd(const Matrix& row, const RingElement& root,
                                std::size_t budget = kDefaultGroebnerBudget);

// For even n: second row (-b2, b1, -b4, b3, ...) with explicit right inverse.
CompletionResult bass_even_second_row(const SplitUnimodular& s);

}  // namespace umk
