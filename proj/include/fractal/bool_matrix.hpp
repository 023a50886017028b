#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fractal {

// Dense 0-1 matrix over the boolean semiring (OR as addition, AND as
// multiplication), bit-packed by row.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  BoolMatrix(std::size_t rows, std::size_t cols);

  static BoolMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  bool operator()(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true);

  // row r |= row s of other
  void or_row(std::size_t r, const BoolMatrix& other, std::size_t s);

  std::size_t count() const;
  std::size_t row_count(std::size_t r) const;
  BoolMatrix transposed() const;

  friend BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b);
  friend BoolMatrix operator|(const BoolMatrix& a, const BoolMatrix& b);
  friend BoolMatrix operator&(const BoolMatrix& a, const BoolMatrix& b);
  friend BoolMatrix operator~(const BoolMatrix& a);
  friend bool operator==(const BoolMatrix& a, const BoolMatrix& b) = default;

 private:
  void mask_tail();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Reflexive-transitive closure by Warshall's algorithm.
BoolMatrix warshall_closure(const BoolMatrix& relation);

// Reflexive-transitive closure by repeated squaring from I | A until the
// matrix stops changing. Throws InvalidArgument for non-square input.
BoolMatrix closure_by_matrix(const BoolMatrix& adjacency);

// Covering relation (no diagonal) of the order generated by the relation.
// Throws CyclicOrder when the relation has a cycle of distinct elements.
BoolMatrix hasse_reduction(const BoolMatrix& relation);

}  // namespace fractal
