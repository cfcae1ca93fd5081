#pragma once

#include <string>
#include <vector>

#include "umk/ring.hpp"

namespace umk {

// Dense matrix over a ring. Rows (UmRow) are 1 x n matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(RingHandle ring, std::size_t rows, std::size_t cols);
  Matrix(RingHandle ring, const std::vector<std::vector<RingElement>>& entries);

  static Matrix identity(const RingHandle& ring, std::size_t n);
  static Matrix row(const RingHandle& ring, const std::vector<RingElement>& entries);
  static Matrix column(const RingHandle& ring, const std::vector<RingElement>& entries);

  const RingHandle& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_row() const { return rows_ == 1; }

  RingElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const RingElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<RingElement> row_entries(std::size_t i) const;
  std::vector<RingElement> col_entries(std::size_t j) const;
  std::vector<RingElement> entries() const { return data_; }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix transpose() const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const RingElement& c) const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_identity() const;

  // "[[a, b], [c, d]]"; rows print as "[a, b]".
  std::string to_string() const;

 private:
  RingHandle ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<RingElement> data_;
};

using UmRow = Matrix;
using RectMatrix = Matrix;

RingElement determinant(const Matrix& A);
Matrix adjugate(const Matrix& A);
RingElement trace(const Matrix& A);

// Horizontal concatenation [A | B].
Matrix hconcat(const Matrix& A, const Matrix& B);

Matrix parse_row(const RingHandle& ring, std::string_view text);
Matrix parse_matrix(const RingHandle& ring, std::string_view text);

std::string format_entries(const std::vector<RingElement>& v);

}  // namespace umk
