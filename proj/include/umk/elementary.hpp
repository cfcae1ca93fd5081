#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "umk/matrix.hpp"
#include "umk/ummat.hpp"

namespace umk {

enum class Side { Row, Column };

// e_ij(t). Column move: column j += t * column i. Row move: row i += t * row j.
// Indices are 0-based here and 1-based in the text format.
struct ElementaryMove {
  Side side = Side::Column;
  std::size_t i = 0, j = 0;
  RingElement t;
  std::size_t size = 0;

  bool operator==(const ElementaryMove& o) const {
    return side == o.side && i == o.i && j == o.j && size == o.size && t == o.t;
  }
};

class Transcript {
 public:
  Transcript() = default;
  explicit Transcript(std::size_t n) : n_(n) {}

  std::size_t size() const { return n_; }
  const std::vector<ElementaryMove>& moves() const { return moves_; }
  bool empty() const { return moves_.empty(); }

  void push(ElementaryMove mv);
  void push(Side side, std::size_t i, std::size_t j, RingElement t);
  void append(const Transcript& o);
  Transcript inverse() const;

  bool operator==(const Transcript& o) const { return n_ == o.n_ && moves_ == o.moves_; }

 private:
  std::size_t n_ = 0;
  std::vector<ElementaryMove> moves_;
};

Matrix apply_move(const Matrix& M, const ElementaryMove& mv);
void apply_move_inplace(Matrix& M, const ElementaryMove& mv);
Matrix apply_transcript(const Matrix& M, const Transcript& T);

// n x n matrix E with apply_transcript(M, T) == M * E for a column transcript.
Matrix transcript_matrix(const RingHandle& ring, const Transcript& T);

Matrix block_sum(const Matrix& A, const Matrix& B);

struct ConjugatorResult {
  Matrix G, G_inv;
};

// G = I + N (T - I) M, so that T M = M G.
ConjugatorResult whitehead_conjugator(const SplitUnimodular& S, const Matrix& T,
                                      const Matrix& T_inv);

// S = (I - 2 z w) D with z the second column of N, w the second row of M, D = diag(-1, 1, ...).
Matrix involution_S(const SplitUnimodular& S);

// Each e_ij(s) becomes e_ij(t s) over the extension ring, t its last variable.
Transcript elementary_path(const Transcript& T, const RingHandle& extension);

// Evaluates each move's parameter at the last variable = value.
Transcript specialize(const Transcript& T, const RingElement& value);

std::string serialize(const Transcript& T);
Transcript parse_transcript(std::string_view text, const RingHandle& ring, std::size_t n);

}  // namespace umk
