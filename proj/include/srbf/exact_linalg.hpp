#pragma once

// Exact integer linear algebra for small 0/1 systems. Elimination is
// fraction-free: a row is updated as p*row - a*pivot_row and then divided by
// the gcd of its entries, so every intermediate stays an integer. All
// arithmetic is overflow-checked.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "srbf/errors.hpp"
#include "srbf/geometry.hpp"

namespace srbf::exact {

using Integer = std::int64_t;

namespace detail {

[[noreturn]] inline void overflow() {
  throw NumericalError("integer overflow in exact elimination");
}

inline Integer checked_mul(Integer a, Integer b) {
  Integer r;
  if (__builtin_mul_overflow(a, b, &r) || r == std::numeric_limits<Integer>::min()) overflow();
  return r;
}

inline Integer checked_sub(Integer a, Integer b) {
  Integer r;
  if (__builtin_sub_overflow(a, b, &r) || r == std::numeric_limits<Integer>::min()) overflow();
  return r;
}

inline Integer checked_lcm(Integer a, Integer b) {
  a = std::abs(a);
  b = std::abs(b);
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / std::gcd(a, b), b);
}

}  // namespace detail

class IntegerMatrix {
 public:
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntegerMatrix from(const IncidenceMatrix& A) {
    IntegerMatrix M(A.rows, A.cols);
    for (std::size_t i = 0; i < A.entries.size(); ++i) M.data_[i] = A.entries[i];
    return M;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Integer operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Integer> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Integer> data_;
};

/// Reduced form: every pivot column is zero outside its pivot row.
struct Elimination {
  IntegerMatrix reduced;
  std::vector<std::size_t> pivot_columns;  // pivot_columns[r] is the pivot of row r

  std::size_t rank() const { return pivot_columns.size(); }
};

inline void divide_by_content(std::span<Integer> row) {
  Integer g = 0;
  for (Integer v : row) g = std::gcd(g, v);
  if (g > 1)
    for (Integer& v : row) v /= g;
}

inline Elimination eliminate(IntegerMatrix M) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
    std::size_t p = r;
    while (p < M.rows() && M(p, c) == 0) ++p;
    if (p == M.rows()) continue;
    M.swap_rows(r, p);
    const Integer pivot = M(r, c);
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == r || M(i, c) == 0) continue;
      const Integer factor = M(i, c);
      for (std::size_t j = 0; j < M.cols(); ++j) {
        M(i, j) = detail::checked_sub(detail::checked_mul(pivot, M(i, j)),
                                      detail::checked_mul(factor, M(r, j)));
      }
      divide_by_content(M.row(i));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(M), std::move(pivots)};
}

inline std::size_t rank(const IntegerMatrix& M) { return eliminate(M).rank(); }

/// Divides out the common factor and makes the first nonzero entry positive.
inline std::vector<Integer> canonicalize(std::vector<Integer> v) {
  Integer g = 0;
  for (Integer x : v) g = std::gcd(g, x);
  if (g == 0) throw InputError("zero vector has no canonical form");
  std::size_t first = 0;
  while (v[first] == 0) ++first;
  if (v[first] < 0) g = -g;
  for (Integer& x : v) x /= g;
  return v;
}

/// A nonzero integer vector in the null space, taken from the first free
/// column of the reduced form and canonicalized; empty when M has full
/// column rank.
inline std::optional<std::vector<Integer>> null_vector(const IntegerMatrix& M) {
  const Elimination e = eliminate(M);
  if (e.rank() == M.cols()) return std::nullopt;

  std::vector<bool> is_pivot(M.cols(), false);
  for (std::size_t c : e.pivot_columns) is_pivot[c] = true;
  std::size_t free = 0;
  while (is_pivot[free]) ++free;

  // Row r reads pivot_r * x[pc_r] + a_r * x[free] = 0 once the other free
  // variables are set to zero.
  Integer scale = 1;
  for (std::size_t r = 0; r < e.rank(); ++r) {
    if (e.reduced(r, free) != 0) scale = detail::checked_lcm(scale, e.reduced(r, e.pivot_columns[r]));
  }
  std::vector<Integer> x(M.cols(), 0);
  x[free] = scale;
  for (std::size_t r = 0; r < e.rank(); ++r) {
    const Integer a = e.reduced(r, free);
    if (a == 0) continue;
    const std::size_t pc = e.pivot_columns[r];
    x[pc] = -detail::checked_mul(a, scale / e.reduced(r, pc));
  }
  return canonicalize(std::move(x));
}

}  // namespace srbf::exact
