#include "umk/matrix.hpp"

#include <map>

#include "umk/error.hpp"
#include "umk/parse.hpp"

namespace umk {

Matrix::Matrix(RingHandle ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_->zero()) {}

Matrix::Matrix(RingHandle ring, const std::vector<std::vector<RingElement>>& entries)
    : ring_(std::move(ring)) {
  rows_ = entries.size();
  cols_ = rows_ ? entries[0].size() : 0;
  for (const auto& r : entries) {
    if (r.size() != cols_) throw ShapeError("ragged matrix literal");
    for (const auto& e : r) {
      require_same_ring(ring_, e.ring());
      data_.push_back(e);
    }
  }
}

Matrix Matrix::identity(const RingHandle& ring, std::size_t n) {
  Matrix I(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = ring->one();
  return I;
}

Matrix Matrix::row(const RingHandle& ring, const std::vector<RingElement>& entries) {
  return Matrix(ring, std::vector<std::vector<RingElement>>{entries});
}

Matrix Matrix::column(const RingHandle& ring, const std::vector<RingElement>& entries) {
  return row(ring, entries).transpose();
}

std::vector<RingElement> Matrix::row_entries(std::size_t i) const {
  return std::vector<RingElement>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

std::vector<RingElement> Matrix::col_entries(std::size_t j) const {
  std::vector<RingElement> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
  Matrix b(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw ShapeError("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix Matrix::transpose() const {
  Matrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require_same_ring(ring_, o.ring_);
  if (cols_ != o.rows_)
    throw ShapeError("cannot multiply " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                     " by " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  Matrix r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const RingElement& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require_same_ring(ring_, o.ring_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("shape mismatch in sum");
  Matrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require_same_ring(ring_, o.ring_);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("shape mismatch in difference");
  Matrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

Matrix Matrix::scaled(const RingElement& c) const {
  Matrix r = *this;
  for (auto& e : r.data_) e = e * c;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  if (ring_ && o.ring_ && !ring_->same_as(*o.ring_)) return false;
  for (std::size_t k = 0; k < data_.size(); ++k)
    if (data_[k] != o.data_[k]) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const RingElement& e = (*this)(i, j);
      if (i == j ? !e.is_one() : !e.is_zero()) return false;
    }
  return true;
}

std::string format_entries(const std::vector<RingElement>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + "]";
}

std::string Matrix::to_string() const {
  if (rows_ == 1) return format_entries(row_entries(0));
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += ", ";
    s += format_entries(row_entries(i));
  }
  return s + "]";
}

namespace {

// Laplace expansion along the first row with memoization over column subsets.
RingElement det_rec(const Matrix& A, std::size_t row, unsigned long long cols,
                    std::map<unsigned long long, RingElement>& memo) {
  const std::size_t n = A.rows();
  if (row == n) return A.ring()->one();
  auto it = memo.find(cols);
  if (it != memo.end()) return it->second;
  RingElement acc = A.ring()->zero();
  int sign = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(cols & (1ull << j))) continue;
    if (!A(row, j).is_zero()) {
      RingElement minor = det_rec(A, row + 1, cols & ~(1ull << j), memo);
      RingElement term = A(row, j) * minor;
      acc = sign > 0 ? acc + term : acc - term;
    }
    sign = -sign;
  }
  memo.emplace(cols, acc);
  return acc;
}

}  // namespace

RingElement determinant(const Matrix& A) {
  if (A.rows() != A.cols()) throw ShapeError("determinant of a non-square matrix");
  if (A.rows() > 20) throw ShapeError("determinant size limit exceeded");
  if (A.rows() == 0) return A.ring()->one();
  std::map<unsigned long long, RingElement> memo;
  return det_rec(A, 0, (1ull << A.rows()) - 1, memo);
}

Matrix adjugate(const Matrix& A) {
  const std::size_t n = A.rows();
  if (n != A.cols()) throw ShapeError("adjugate of a non-square matrix");
  Matrix adj(A.ring(), n, n);
  if (n == 1) {
    adj(0, 0) = A.ring()->one();
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix minor(A.ring(), n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = A(r, c);
        }
        ++rr;
      }
      RingElement d = determinant(minor);
      adj(j, i) = ((i + j) % 2) ? -d : d;
    }
  return adj;
}

RingElement trace(const Matrix& A) {
  if (A.rows() != A.cols()) throw ShapeError("trace of a non-square matrix");
  RingElement t = A.ring()->zero();
  for (std::size_t i = 0; i < A.rows(); ++i) t += A(i, i);
  return t;
}

Matrix hconcat(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows()) throw ShapeError("hconcat needs equal row counts");
  require_same_ring(A.ring(), B.ring());
  Matrix r(A.ring(), A.rows(), A.cols() + B.cols());
  r.set_block(0, 0, A);
  r.set_block(0, A.cols(), B);
  return r;
}

Matrix parse_row(const RingHandle& ring, std::string_view text) {
  std::vector<RingElement> v;
  for (const auto& item : split_bracket_list(text)) v.push_back(ring->parse(item));
  if (v.empty()) throw ParseError("empty row");
  return Matrix::row(ring, v);
}

Matrix parse_matrix(const RingHandle& ring, std::string_view text) {
  auto rows = split_bracket_list(text);
  if (rows.empty()) throw ParseError("empty matrix");
  if (rows[0].empty() || rows[0][0] != '[') return parse_row(ring, text);
  std::vector<std::vector<RingElement>> entries;
  for (const auto& r : rows) {
    std::vector<RingElement> v;
    for (const auto& item : split_bracket_list(r)) v.push_back(ring->parse(item));
    entries.push_back(std::move(v));
  }
  return Matrix(ring, entries);
}

}  // namespace umk
