#include <gtest/gtest.h>

#include <random>

#include "reptensor/error.hpp"
#include "reptensor/tensor.hpp"
#include "support.hpp"

using namespace reptensor;
using namespace testing_support;

namespace {

double loop_inner(const Tensor3& a, const Tensor3& b) {
  double s = 0.0;
  for (Index i = 0; i < a.dim(Mode::first); ++i)
    for (Index j = 0; j < a.dim(Mode::second); ++j)
      for (Index k = 0; k < a.dim(Mode::third); ++k) s += a(i, j, k) * b(i, j, k);
  return s;
}

Tensor3 loop_mode_product(const Tensor3& a, const Matrix& m, int mode) {
  const auto [I, J, K] = a.dims();
  const Index H = m.rows();
  Tensor3 out(mode == 1 ? H : I, mode == 2 ? H : J, mode == 3 ? H : K);
  for (Index i = 0; i < out.dim(Mode::first); ++i)
    for (Index j = 0; j < out.dim(Mode::second); ++j)
      for (Index k = 0; k < out.dim(Mode::third); ++k) {
        double s = 0.0;
        if (mode == 1)
          for (Index q = 0; q < I; ++q) s += a(q, j, k) * m(i, q);
        if (mode == 2)
          for (Index q = 0; q < J; ++q) s += a(i, q, k) * m(j, q);
        if (mode == 3)
          for (Index q = 0; q < K; ++q) s += a(i, j, q) * m(k, q);
        out(i, j, k) = s;
      }
  return out;
}

void expect_tensor_near(const Tensor3& a, const Tensor3& b, double tol) {
  ASSERT_EQ(a.dims(), b.dims());
  for (Index i = 0; i < a.dim(Mode::first); ++i)
    for (Index j = 0; j < a.dim(Mode::second); ++j)
      for (Index k = 0; k < a.dim(Mode::third); ++k) EXPECT_NEAR(a(i, j, k), b(i, j, k), tol);
}

Mode mode_of(int m) { return static_cast<Mode>(m); }

}  // namespace

TEST(Tensor3, StorageAndSlicesAgreeWithEntries) {
  std::mt19937_64 rng(1);
  const Tensor3 a = random_tensor(rng, 3, 4, 2);
  EXPECT_EQ(a.size(), 24);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 4; ++j)
      for (Index k = 0; k < 2; ++k) {
        EXPECT_EQ(a.frontal(k)(i, j), a(i, j, k));
        EXPECT_EQ(a.horizontal(i)(j, k), a(i, j, k));
        EXPECT_EQ(a.lateral(j)(i, k), a(i, j, k));
        EXPECT_EQ(a.data()[static_cast<std::size_t>(i + 3 * (j + 4 * k))], a(i, j, k));
        EXPECT_EQ(a.slices_as_columns()(i + 3 * j, k), a(i, j, k));
      }
}

TEST(Tensor3, RejectsDataOfWrongLength) {
  EXPECT_THROW(Tensor3(2, 2, 2, std::vector<double>(7)), ShapeError);
}

TEST(Tensor4, LengthMatchesDims) {
  const Tensor4 b(2, 3, 4, 5);
  EXPECT_EQ(b.size(), 120);
  EXPECT_THROW(Tensor4(1, 1, 1, 2, std::vector<double>(3)), ShapeError);
}

TEST(InnerProduct, AllOnesGivesEight) {
  const Tensor3 a(2, 2, 2, std::vector<double>(8, 1.0));
  EXPECT_DOUBLE_EQ(inner_product(a, a), 8.0);
}

TEST(InnerProduct, NegatedOperandGivesMinusSquaredNorm) {
  std::mt19937_64 rng(2);
  const Tensor3 a = random_tensor(rng, 3, 2, 4);
  Tensor3 b = a;
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index k = 0; k < 4; ++k) b(i, j, k) = -a(i, j, k);
  EXPECT_NEAR(inner_product(a, b), -frobenius_norm(a) * frobenius_norm(a), 1e-12);
}

TEST(InnerProduct, IntegerTensorsMatchTripleLoop) {
  std::mt19937_64 rng(3);
  const Tensor3 a = integer_tensor(rng, 3, 2, 2);
  const Tensor3 b = integer_tensor(rng, 3, 2, 2);
  EXPECT_EQ(inner_product(a, b), loop_inner(a, b));
}

TEST(InnerProduct, DimensionMismatchThrows) {
  EXPECT_THROW(inner_product(Tensor3(2, 2, 2), Tensor3(2, 2, 3)), ShapeError);
}

TEST(InnerProduct, EqualsTraceOfModeThreeUnfoldings) {
  std::mt19937_64 rng(4);
  const Tensor3 a = random_tensor(rng, 3, 4, 5);
  const Tensor3 b = random_tensor(rng, 3, 4, 5);
  const double via = (matricize(a, Mode::third) * matricize(b, Mode::third).transpose()).trace();
  EXPECT_LE(rel_diff(via, inner_product(a, b)), 1e-12);
}

TEST(FrobeniusNorm, ZeroAndSingleEntry) {
  EXPECT_EQ(frobenius_norm(Tensor3(2, 3, 4)), 0.0);
  Tensor3 a(2, 3, 4);
  a(1, 2, 3) = -2.5;
  EXPECT_DOUBLE_EQ(frobenius_norm(a), 2.5);
}

TEST(FrobeniusNorm, MatchesTripleLoopOracle) {
  std::mt19937_64 rng(5);
  const Tensor3 a = random_tensor(rng, 4, 3, 2);
  EXPECT_NEAR(frobenius_norm(a), std::sqrt(loop_inner(a, a)), 1e-13);
}

TEST(ModeProduct, IdentityInModeThreeIsNoOp) {
  std::mt19937_64 rng(6);
  const Tensor3 a = random_tensor(rng, 2, 3, 4);
  expect_tensor_near(mode_product(a, Matrix::Identity(4, 4), Mode::third), a, 0.0);
}

TEST(ModeProduct, ModeOneMatchesLoopOracle) {
  std::mt19937_64 rng(7);
  const Tensor3 a = integer_tensor(rng, 2, 2, 2);
  Matrix m(3, 2);
  m << 1, 2, -1, 0, 3, 5;
  const Tensor3 out = mode_product(a, m, Mode::first);
  EXPECT_EQ(out.dims(), (std::array<Index, 3>{3, 2, 2}));
  expect_tensor_near(out, loop_mode_product(a, m, 1), 0.0);
}

TEST(ModeProduct, AllModesMatchLoopOracle) {
  std::mt19937_64 rng(8);
  const Tensor3 a = random_tensor(rng, 3, 4, 5);
  for (int mode = 1; mode <= 3; ++mode) {
    const Matrix m = random_matrix(rng, 2, a.dim(mode_of(mode)));
    expect_tensor_near(mode_product(a, m, mode_of(mode)), loop_mode_product(a, m, mode), 1e-12);
  }
}

TEST(ModeProduct, DistinctModesCommute) {
  std::mt19937_64 rng(9);
  const Tensor3 a = random_tensor(rng, 3, 4, 5);
  const Matrix m = random_matrix(rng, 2, 3);
  const Matrix n = random_matrix(rng, 6, 4);
  const Matrix p = random_matrix(rng, 3, 5);
  const double scale = frobenius_norm(a) * m.norm() * n.norm() * p.norm();
  expect_tensor_near(mode_product(mode_product(a, m, Mode::first), n, Mode::second),
                     mode_product(mode_product(a, n, Mode::second), m, Mode::first), 1e-12 * scale);
  expect_tensor_near(mode_product(mode_product(a, m, Mode::first), p, Mode::third),
                     mode_product(mode_product(a, p, Mode::third), m, Mode::first), 1e-12 * scale);
  expect_tensor_near(mode_product(mode_product(a, n, Mode::second), p, Mode::third),
                     mode_product(mode_product(a, p, Mode::third), n, Mode::second), 1e-12 * scale);
}

TEST(ModeProduct, SameModeComposes) {
  std::mt19937_64 rng(10);
  const Tensor3 a = random_tensor(rng, 3, 4, 5);
  for (int mode = 1; mode <= 3; ++mode) {
    const Matrix m = random_matrix(rng, 4, a.dim(mode_of(mode)));
    const Matrix n = random_matrix(rng, 2, 4);
    const double scale = frobenius_norm(a) * m.norm() * n.norm();
    expect_tensor_near(mode_product(mode_product(a, m, mode_of(mode)), n, mode_of(mode)),
                       mode_product(a, n * m, mode_of(mode)), 1e-12 * scale);
  }
}

TEST(ModeProduct, InnerDimensionMismatchThrows) {
  EXPECT_THROW(mode_product(Tensor3(2, 3, 4), Matrix::Identity(3, 3), Mode::first), ShapeError);
  EXPECT_THROW(mode_product(Tensor3(2, 3, 4), Matrix::Identity(2, 2), Mode::third), ShapeError);
}

TEST(ContractedProduct, SingleSliceIsOuterProduct) {
  std::mt19937_64 rng(11);
  const Tensor3 a = random_tensor(rng, 2, 3, 1);
  const Tensor3 b = random_tensor(rng, 4, 2, 1);
  const Tensor4 c = contracted_product_33(a, b);
  EXPECT_EQ(c.dims(), (std::array<Index, 4>{2, 3, 4, 2}));
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index p = 0; p < 4; ++p)
        for (Index q = 0; q < 2; ++q) EXPECT_DOUBLE_EQ(c(i, j, p, q), a(i, j, 0) * b(p, q, 0));
}

TEST(ContractedProduct, MatchesQuadrupleLoopOracle) {
  std::mt19937_64 rng(12);
  const Tensor3 a = random_tensor(rng, 2, 2, 3);
  const Tensor3 b = random_tensor(rng, 2, 2, 3);
  const Tensor4 c = contracted_product_33(a, b);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index p = 0; p < 2; ++p)
        for (Index q = 0; q < 2; ++q) {
          double s = 0.0;
          for (Index k = 0; k < 3; ++k) s += a(i, j, k) * b(p, q, k);
          EXPECT_NEAR(c(i, j, p, q), s, 1e-14);
        }
}

TEST(ContractedProduct, SelfProductIsPairSymmetric) {
  std::mt19937_64 rng(13);
  const Tensor3 a = random_tensor(rng, 3, 2, 4);
  const Tensor4 c = contracted_product_33(a, a);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index p = 0; p < 3; ++p)
        for (Index q = 0; q < 2; ++q) EXPECT_EQ(c(i, j, p, q), c(p, q, i, j));
}

TEST(ContractedProduct, ThirdModeMismatchThrows) {
  EXPECT_THROW(contracted_product_33(Tensor3(2, 2, 3), Tensor3(2, 2, 4)), ShapeError);
}

TEST(TensorTrace, SingleEntryAndZero) {
  Tensor4 b(2, 3, 2, 3);
  EXPECT_EQ(tensor_trace(b), 0.0);
  b(0, 0, 0, 0) = 4.25;
  EXPECT_EQ(tensor_trace(b), 4.25);
}

TEST(TensorTrace, SelfContractionEqualsSquaredNorm) {
  std::mt19937_64 rng(14);
  const Tensor3 a = random_tensor(rng, 3, 2, 4);
  const double n = frobenius_norm(a);
  EXPECT_LE(rel_diff(tensor_trace(contracted_product_33(a, a)), n * n), 1e-12);
}

TEST(TensorTrace, RandomShapesSatisfyNormIdentity) {
  std::mt19937_64 rng(15);
  std::uniform_int_distribution<Index> dim(1, 6);
  for (int rep = 0; rep < 50; ++rep) {
    const Tensor3 a = random_tensor(rng, dim(rng), dim(rng), dim(rng));
    const double n = frobenius_norm(a);
    EXPECT_LE(std::abs(tensor_trace(contracted_product_33(a, a)) - n * n), 1e-12 * n * n);
  }
}

TEST(TensorTrace, NonPairedDimsThrow) {
  EXPECT_THROW(tensor_trace(Tensor4(2, 3, 3, 2)), ShapeError);
}

TEST(Matricize, SingleFrontalSliceModeOne) {
  std::mt19937_64 rng(16);
  const Tensor3 a = random_tensor(rng, 2, 2, 1);
  EXPECT_EQ(matricize(a, Mode::first), a.frontal(0));
}

TEST(Matricize, ModeThreeForwardMatchesIndexMap) {
  std::mt19937_64 rng(17);
  const Tensor3 a = integer_tensor(rng, 2, 2, 2);
  const Matrix m = matricize(a, Mode::third);
  ASSERT_EQ(m.rows(), 2);
  ASSERT_EQ(m.cols(), 4);
  // One-based p = i + (j-1) I, written zero-based.
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      for (Index k = 0; k < 2; ++k) EXPECT_EQ(m(k, i + j * 2), a(i, j, k));
}

TEST(Matricize, AllIndexMapsBothOrderings) {
  std::mt19937_64 rng(18);
  const Index I = 2, J = 3, K = 4;
  const Tensor3 a = integer_tensor(rng, I, J, K);
  const Matrix f1 = matricize(a, Mode::first), b1 = matricize(a, Mode::first, Ordering::backward);
  const Matrix f2 = matricize(a, Mode::second), b2 = matricize(a, Mode::second, Ordering::backward);
  const Matrix f3 = matricize(a, Mode::third), b3 = matricize(a, Mode::third, Ordering::backward);
  for (Index i = 0; i < I; ++i)
    for (Index j = 0; j < J; ++j)
      for (Index k = 0; k < K; ++k) {
        const double v = a(i, j, k);
        EXPECT_EQ(f1(i, j + k * J), v);
        EXPECT_EQ(b1(i, k + j * K), v);
        EXPECT_EQ(f2(j, k + i * K), v);
        EXPECT_EQ(b2(j, i + k * I), v);
        EXPECT_EQ(f3(k, i + j * I), v);
        EXPECT_EQ(b3(k, j + i * J), v);
      }
}

TEST(Matricize, FoldRoundTripIsExact) {
  std::mt19937_64 rng(19);
  const Tensor3 a = random_tensor(rng, 3, 4, 2);
  for (int mode = 1; mode <= 3; ++mode)
    for (auto ord : {Ordering::forward, Ordering::backward}) {
      const Tensor3 back = fold(matricize(a, mode_of(mode), ord), a.dims(), mode_of(mode), ord);
      expect_tensor_near(back, a, 0.0);
    }
}

TEST(Matricize, FoldRejectsWrongShape) {
  EXPECT_THROW(fold(Matrix::Zero(3, 3), {2, 2, 2}, Mode::first, Ordering::forward), ShapeError);
}

TEST(Matricize4, SingleEntry) {
  Tensor4 b(1, 1, 1, 1);
  b(0, 0, 0, 0) = 7.0;
  const Matrix m = matricize4_1234(b);
  ASSERT_EQ(m.rows(), 1);
  ASSERT_EQ(m.cols(), 1);
  EXPECT_EQ(m(0, 0), 7.0);
}

TEST(Matricize4, TraceEqualsTensorTrace) {
  std::mt19937_64 rng(20);
  const Tensor3 a = random_tensor(rng, 3, 2, 5);
  const Tensor3 c = random_tensor(rng, 3, 2, 5);
  const Tensor4 b = contracted_product_33(a, c);
  EXPECT_NEAR(matricize4_1234(b).trace(), tensor_trace(b), 1e-12);
}

TEST(Matricize4, MatchesIndexMap) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n;
  Tensor4 b(2, 3, 2, 3);
  for (Index h = 0; h < 3; ++h)
    for (Index k = 0; k < 2; ++k)
      for (Index j = 0; j < 3; ++j)
        for (Index i = 0; i < 2; ++i) b(i, j, k, h) = n(rng);
  const Matrix m = matricize4_1234(b);
  ASSERT_EQ(m.rows(), 6);
  ASSERT_EQ(m.cols(), 6);
  for (Index h = 0; h < 3; ++h)
    for (Index k = 0; k < 2; ++k)
      for (Index j = 0; j < 3; ++j)
        for (Index i = 0; i < 2; ++i) EXPECT_EQ(m(i + j * 2, k + h * 2), b(i, j, k, h));
}

TEST(Tensor3, FromSlicesRequiresEqualShapes) {
  std::vector<Matrix> slices{Matrix::Zero(2, 2), Matrix::Zero(2, 3)};
  EXPECT_THROW(Tensor3::from_slices(slices), ShapeError);
}
