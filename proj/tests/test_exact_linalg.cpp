#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <limits>
#include <random>

#include "srbf/exact_linalg.hpp"

using namespace srbf;
using exact::Integer;
using exact::IntegerMatrix;

namespace {

IntegerMatrix make(std::size_t r, std::size_t c, std::initializer_list<Integer> values) {
  IntegerMatrix M(r, c);
  std::size_t i = 0;
  for (Integer v : values) {
    M(i / c, i % c) = v;
    ++i;
  }
  return M;
}

bool in_null_space(const IntegerMatrix& M, const std::vector<Integer>& x) {
  for (std::size_t r = 0; r < M.rows(); ++r) {
    Integer s = 0;
    for (std::size_t c = 0; c < M.cols(); ++c) s += M(r, c) * x[c];
    if (s != 0) return false;
  }
  return true;
}

std::size_t float_rank(const IntegerMatrix& M) {
  Eigen::MatrixXd A(M.rows(), M.cols());
  for (std::size_t r = 0; r < M.rows(); ++r)
    for (std::size_t c = 0; c < M.cols(); ++c) A(r, c) = static_cast<double>(M(r, c));
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  lu.setThreshold(1e-9);
  return static_cast<std::size_t>(lu.rank());
}

}  // namespace

TEST(Canonicalize, Examples) {
  EXPECT_EQ(exact::canonicalize({-1, 1}), (std::vector<Integer>{1, -1}));
  EXPECT_EQ(exact::canonicalize({0, -4, 6, 2}), (std::vector<Integer>{0, 2, -3, -1}));
  EXPECT_EQ(exact::canonicalize({3}), (std::vector<Integer>{1}));
  EXPECT_THROW(exact::canonicalize({0, 0}), InputError);
}

TEST(Eliminate, KnownRanks) {
  EXPECT_EQ(exact::rank(make(2, 2, {1, 1, 1, 1})), 1u);
  EXPECT_EQ(exact::rank(make(4, 4, {1, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 1, 0, 1, 1, 0})), 3u);
  EXPECT_EQ(exact::rank(make(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1})), 3u);
  EXPECT_EQ(exact::rank(IntegerMatrix(3, 2)), 0u);
}

TEST(NullVector, Examples) {
  EXPECT_EQ(exact::null_vector(make(2, 2, {1, 1, 1, 1})), (std::vector<Integer>{1, -1}));
  EXPECT_EQ(exact::null_vector(make(4, 4, {1, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 1, 0, 1, 1, 0})),
            (std::vector<Integer>{1, -1, 1, -1}));
  EXPECT_FALSE(exact::null_vector(make(2, 2, {1, 0, 0, 1})).has_value());
  // Needs a denominator: 2x + 3y = 0.
  EXPECT_EQ(exact::null_vector(make(1, 2, {2, 3})), (std::vector<Integer>{3, -2}));
  EXPECT_EQ(exact::null_vector(IntegerMatrix(1, 3)), (std::vector<Integer>{1, 0, 0}));
}

TEST(NullVector, RandomMatricesAgreeWithFloatingRank) {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution bit(0.4);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t rows = 1 + trial % 9, cols = 1 + (trial / 9) % 7;
    IntegerMatrix M(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) M(r, c) = trial % 2 ? Integer{bit(rng)} : Integer{small(rng)};
    const auto e = exact::eliminate(M);
    EXPECT_EQ(e.rank(), float_rank(M));
    const auto v = exact::null_vector(M);
    EXPECT_EQ(v.has_value(), e.rank() < cols);
    if (v) {
      EXPECT_TRUE(in_null_space(M, *v));
      EXPECT_EQ(*v, exact::canonicalize(*v));
    }
  }
}

TEST(Eliminate, OverflowIsReported) {
  const Integer big = Integer{1} << 62;
  const auto M = make(2, 2, {big - 1, 3, big - 3, 5});
  EXPECT_THROW(exact::eliminate(M), NumericalError);
}
