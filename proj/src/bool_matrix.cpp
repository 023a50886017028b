#include "fractal/bool_matrix.hpp"

#include <bit>

#include "fractal/error.hpp"

namespace fractal {

BoolMatrix::BoolMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void BoolMatrix::set(std::size_t r, std::size_t c, bool value) {
  std::uint64_t& word = bits_[r * words_ + c / 64];
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  word = value ? (word | bit) : (word & ~bit);
}

void BoolMatrix::or_row(std::size_t r, const BoolMatrix& other, std::size_t s) {
  for (std::size_t w = 0; w < words_; ++w) bits_[r * words_ + w] |= other.bits_[s * words_ + w];
}

std::size_t BoolMatrix::count() const {
  std::size_t n = 0;
  for (auto w : bits_) n += std::popcount(w);
  return n;
}

std::size_t BoolMatrix::row_count(std::size_t r) const {
  std::size_t n = 0;
  for (std::size_t w = 0; w < words_; ++w) n += std::popcount(bits_[r * words_ + w]);
  return n;
}

BoolMatrix BoolMatrix::transposed() const {
  BoolMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c)) t.set(c, r);
    }
  }
  return t;
}

void BoolMatrix::mask_tail() {
  if (cols_ % 64 == 0) return;
  const std::uint64_t mask = (std::uint64_t{1} << (cols_ % 64)) - 1;
  for (std::size_t r = 0; r < rows_; ++r) bits_[r * words_ + words_ - 1] &= mask;
}

BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorKind::InvalidArgument, "boolean matrix product: dimension mismatch");
  }
  BoolMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k)) out.or_row(i, b, k);
    }
  }
  return out;
}

BoolMatrix operator|(const BoolMatrix& a, const BoolMatrix& b) {
  BoolMatrix out = a;
  for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] |= b.bits_[i];
  return out;
}

BoolMatrix operator&(const BoolMatrix& a, const BoolMatrix& b) {
  BoolMatrix out = a;
  for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] &= b.bits_[i];
  return out;
}

BoolMatrix operator~(const BoolMatrix& a) {
  BoolMatrix out = a;
  for (auto& w : out.bits_) w = ~w;
  out.mask_tail();
  return out;
}

BoolMatrix warshall_closure(const BoolMatrix& relation) {
  if (!relation.is_square()) {
    throw Error(ErrorKind::InvalidArgument, "closure of a non-square matrix");
  }
  const std::size_t n = relation.rows();
  BoolMatrix m = relation | BoolMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (m(i, k)) m.or_row(i, m, k);
    }
  }
  return m;
}

BoolMatrix closure_by_matrix(const BoolMatrix& adjacency) {
  if (!adjacency.is_square()) {
    throw Error(ErrorKind::InvalidArgument, "closure of a non-square matrix");
  }
  BoolMatrix m = adjacency | BoolMatrix::identity(adjacency.rows());
  for (;;) {
    BoolMatrix next = m | (m * m);
    if (next == m) return m;
    m = std::move(next);
  }
}

BoolMatrix hasse_reduction(const BoolMatrix& relation) {
  BoolMatrix closed = warshall_closure(relation);
  const std::size_t n = closed.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (closed(i, j) && closed(j, i)) {
        throw Error(ErrorKind::CyclicOrder, "relation is not antisymmetric");
      }
    }
  }
  BoolMatrix strict = closed & ~BoolMatrix::identity(n);
  return strict & ~(strict * strict);
}

}  // namespace fractal
