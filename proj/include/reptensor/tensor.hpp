#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace reptensor {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Mode : int { first = 1, second = 2, third = 3 };

// Cyclic column ordering of a mode-n unfolding.
//   forward : A_(1;2,3), A_(2;3,1), A_(3;1,2)
//   backward: A_(1;3,2), A_(2;1,3), A_(3;2,1)
// The earlier-listed remaining index always varies fastest.
enum class Ordering { forward, backward };

/// Dense third-order tensor of doubles.
///
/// Storage is column-major (first index fastest): entry (i, j, k) lives at
/// offset i + I*j + I*J*k. Consequently every frontal slice (:, :, k) is a
/// contiguous column-major I x J block, and the whole buffer read as an
/// (I*J) x K matrix has the vectorized slices as its columns.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(Index rows, Index cols, Index depth);
  Tensor3(Index rows, Index cols, Index depth, std::vector<double> data);

  // Stacks equally sized matrices as frontal slices.
  static Tensor3 from_slices(std::span<const Matrix> slices);

  Index dim(Mode m) const { return dims_[static_cast<int>(m) - 1]; }
  const std::array<Index, 3>& dims() const { return dims_; }
  Index size() const { return static_cast<Index>(data_.size()); }

  double operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }
  double& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }

  std::span<const double> data() const { return data_; }

  // Slice accessors, named after the fixed index.
  Matrix frontal(Index k) const;     // (:, :, k), I x J
  Matrix horizontal(Index i) const;  // (i, :, :), J x K
  Matrix lateral(Index j) const;     // (:, j, :), I x K

  Eigen::Map<const Matrix> frontal_view(Index k) const;
  // (I*J) x K view; column k is vec(frontal(k)).
  Eigen::Map<const Matrix> slices_as_columns() const;

 private:
  Index offset(Index i, Index j, Index k) const { return i + dims_[0] * (j + dims_[1] * k); }

  std::array<Index, 3> dims_{0, 0, 0};
  std::vector<double> data_;
};

/// Dense fourth-order tensor, column-major like Tensor3.
class Tensor4 {
 public:
  Tensor4() = default;
  Tensor4(Index d1, Index d2, Index d3, Index d4);
  Tensor4(Index d1, Index d2, Index d3, Index d4, std::vector<double> data);

  const std::array<Index, 4>& dims() const { return dims_; }
  Index size() const { return static_cast<Index>(data_.size()); }

  double operator()(Index i, Index j, Index k, Index h) const { return data_[offset(i, j, k, h)]; }
  double& operator()(Index i, Index j, Index k, Index h) { return data_[offset(i, j, k, h)]; }

  std::span<const double> data() const { return data_; }

 private:
  Index offset(Index i, Index j, Index k, Index h) const {
    return i + dims_[0] * (j + dims_[1] * (k + dims_[2] * h));
  }

  std::array<Index, 4> dims_{0, 0, 0, 0};
  std::vector<double> data_;
};

double inner_product(const Tensor3& a, const Tensor3& b);
double frobenius_norm(const Tensor3& a);

// (a x_mode m): contracts the mode-th index of `a` with the columns of `m`.
Tensor3 mode_product(const Tensor3& a, const Matrix& m, Mode mode);

// <a, b>_[3;3](i1, j1, i2, j2) = sum_k a(i1, j1, k) b(i2, j2, k)
Tensor4 contracted_product_33(const Tensor3& a, const Tensor3& b);

// sum_{i,j} b(i, j, i, j); requires dims (I, J, I, J).
double tensor_trace(const Tensor4& b);

Matrix matricize(const Tensor3& a, Mode mode, Ordering ordering = Ordering::forward);
// Inverse of matricize for the given target dims.
Tensor3 fold(const Matrix& unfolded, const std::array<Index, 3>& dims, Mode mode,
             Ordering ordering = Ordering::forward);

// B_(1,2;3,4): (I*J) x (K*H) with p = i + j*I, q = k + h*K (zero-based).
Matrix matricize4_1234(const Tensor4& b);

}  // namespace reptensor
