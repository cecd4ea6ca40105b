#include "reptensor/tensor.hpp"

#include <cmath>
#include <string>

#include "reptensor/error.hpp"

namespace reptensor {

namespace {

void require_nonnegative_dims(std::span<const Index> dims) {
  for (Index d : dims) {
    if (d < 0) throw ShapeError("tensor extent must be non-negative");
  }
}

std::string dims_string(const std::array<Index, 3>& d) {
  return std::to_string(d[0]) + "x" + std::to_string(d[1]) + "x" + std::to_string(d[2]);
}

// Column index of entry (i, j, k) in the requested unfolding.
Index unfold_column(const std::array<Index, 3>& d, Index i, Index j, Index k, Mode mode,
                    Ordering ordering) {
  const auto [I, J, K] = d;
  switch (mode) {
    case Mode::first:
      return ordering == Ordering::forward ? j + k * J : k + j * K;
    case Mode::second:
      return ordering == Ordering::forward ? k + i * K : i + k * I;
    case Mode::third:
      return ordering == Ordering::forward ? i + j * I : j + i * J;
  }
  return 0;
}

Index unfold_row(Index i, Index j, Index k, Mode mode) {
  switch (mode) {
    case Mode::first: return i;
    case Mode::second: return j;
    case Mode::third: return k;
  }
  return 0;
}

}  // namespace

Tensor3::Tensor3(Index rows, Index cols, Index depth)
    : dims_{rows, cols, depth} {
  require_nonnegative_dims(dims_);
  data_.assign(static_cast<std::size_t>(rows * cols * depth), 0.0);
}

Tensor3::Tensor3(Index rows, Index cols, Index depth, std::vector<double> data)
    : dims_{rows, cols, depth}, data_(std::move(data)) {
  require_nonnegative_dims(dims_);
  if (static_cast<Index>(data_.size()) != rows * cols * depth)
    throw ShapeError("tensor data length does not match " + dims_string(dims_));
}

Tensor3 Tensor3::from_slices(std::span<const Matrix> slices) {
  if (slices.empty()) return {};
  const Index rows = slices.front().rows();
  const Index cols = slices.front().cols();
  Tensor3 t(rows, cols, static_cast<Index>(slices.size()));
  for (std::size_t k = 0; k < slices.size(); ++k) {
    if (slices[k].rows() != rows || slices[k].cols() != cols)
      throw ShapeError("slice " + std::to_string(k) + " has inconsistent dimensions");
    Eigen::Map<Matrix>(t.data_.data() + k * rows * cols, rows, cols) = slices[k];
  }
  return t;
}

Matrix Tensor3::frontal(Index k) const { return frontal_view(k); }

Matrix Tensor3::horizontal(Index i) const {
  Matrix out(dims_[1], dims_[2]);
  for (Index k = 0; k < dims_[2]; ++k)
    for (Index j = 0; j < dims_[1]; ++j) out(j, k) = (*this)(i, j, k);
  return out;
}

Matrix Tensor3::lateral(Index j) const {
  Matrix out(dims_[0], dims_[2]);
  for (Index k = 0; k < dims_[2]; ++k)
    for (Index i = 0; i < dims_[0]; ++i) out(i, k) = (*this)(i, j, k);
  return out;
}

Eigen::Map<const Matrix> Tensor3::frontal_view(Index k) const {
  return {data_.data() + k * dims_[0] * dims_[1], dims_[0], dims_[1]};
}

Eigen::Map<const Matrix> Tensor3::slices_as_columns() const {
  return {data_.data(), dims_[0] * dims_[1], dims_[2]};
}

Tensor4::Tensor4(Index d1, Index d2, Index d3, Index d4) : dims_{d1, d2, d3, d4} {
  require_nonnegative_dims(dims_);
  data_.assign(static_cast<std::size_t>(d1 * d2 * d3 * d4), 0.0);
}

Tensor4::Tensor4(Index d1, Index d2, Index d3, Index d4, std::vector<double> data)
    : dims_{d1, d2, d3, d4}, data_(std::move(data)) {
  require_nonnegative_dims(dims_);
  if (static_cast<Index>(data_.size()) != d1 * d2 * d3 * d4)
    throw ShapeError("fourth-order tensor data length does not match its dims");
}

double inner_product(const Tensor3& a, const Tensor3& b) {
  if (a.dims() != b.dims())
    throw ShapeError("inner product of " + dims_string(a.dims()) + " and " +
                     dims_string(b.dims()));
  const auto x = a.data();
  const auto y = b.data();
  return Eigen::Map<const Vector>(x.data(), a.size()).dot(Eigen::Map<const Vector>(y.data(), b.size()));
}

double frobenius_norm(const Tensor3& a) { return std::sqrt(inner_product(a, a)); }

Tensor3 mode_product(const Tensor3& a, const Matrix& m, Mode mode) {
  const auto [I, J, K] = a.dims();
  if (m.cols() != a.dim(mode))
    throw ShapeError("mode-" + std::to_string(static_cast<int>(mode)) + " product: matrix has " +
                     std::to_string(m.cols()) + " columns, tensor extent is " +
                     std::to_string(a.dim(mode)));
  const Index H = m.rows();
  switch (mode) {
    case Mode::first: {
      // The buffer read as I x (J*K) is exactly the forward mode-1 unfolding.
      const Eigen::Map<const Matrix> unfolded(a.data().data(), I, J * K);
      Matrix r = m * unfolded;
      return Tensor3(H, J, K, std::vector<double>(r.data(), r.data() + r.size()));
    }
    case Mode::second: {
      std::vector<double> buf(static_cast<std::size_t>(I * H * K));
      for (Index k = 0; k < K; ++k)
        Eigen::Map<Matrix>(buf.data() + k * I * H, I, H).noalias() = a.frontal_view(k) * m.transpose();
      return Tensor3(I, H, K, std::move(buf));
    }
    case Mode::third: {
      Matrix r = a.slices_as_columns() * m.transpose();
      return Tensor3(I, J, H, std::vector<double>(r.data(), r.data() + r.size()));
    }
  }
  return {};
}

Tensor4 contracted_product_33(const Tensor3& a, const Tensor3& b) {
  if (a.dim(Mode::third) != b.dim(Mode::third))
    throw ShapeError("[3;3] contraction needs equal third-mode extents");
  // Column-major storage of the (I1*J1) x (I2*J2) product is the 4-tensor.
  Matrix r = a.slices_as_columns() * b.slices_as_columns().transpose();
  return Tensor4(a.dim(Mode::first), a.dim(Mode::second), b.dim(Mode::first), b.dim(Mode::second),
                 std::vector<double>(r.data(), r.data() + r.size()));
}

double tensor_trace(const Tensor4& b) {
  const auto& d = b.dims();
  if (d[0] != d[2] || d[1] != d[3])
    throw ShapeError("tensor trace requires dims of the form (I, J, I, J)");
  double sum = 0.0;
  for (Index j = 0; j < d[1]; ++j)
    for (Index i = 0; i < d[0]; ++i) sum += b(i, j, i, j);
  return sum;
}

Matrix matricize(const Tensor3& a, Mode mode, Ordering ordering) {
  const auto& d = a.dims();
  const Index rows = a.dim(mode);
  const Index cols = rows == 0 ? 0 : a.size() / rows;
  Matrix out(rows, cols);
  for (Index k = 0; k < d[2]; ++k)
    for (Index j = 0; j < d[1]; ++j)
      for (Index i = 0; i < d[0]; ++i)
        out(unfold_row(i, j, k, mode), unfold_column(d, i, j, k, mode, ordering)) = a(i, j, k);
  return out;
}

Tensor3 fold(const Matrix& unfolded, const std::array<Index, 3>& dims, Mode mode,
             Ordering ordering) {
  const Index rows = dims[static_cast<int>(mode) - 1];
  if (unfolded.rows() != rows || unfolded.size() != dims[0] * dims[1] * dims[2])
    throw ShapeError("unfolded matrix does not match target dims " + dims_string(dims));
  Tensor3 out(dims[0], dims[1], dims[2]);
  for (Index k = 0; k < dims[2]; ++k)
    for (Index j = 0; j < dims[1]; ++j)
      for (Index i = 0; i < dims[0]; ++i)
        out(i, j, k) = unfolded(unfold_row(i, j, k, mode), unfold_column(dims, i, j, k, mode, ordering));
  return out;
}

Matrix matricize4_1234(const Tensor4& b) {
  const auto& d = b.dims();
  return Eigen::Map<const Matrix>(b.data().data(), d[0] * d[1], d[2] * d[3]);
}

}  // namespace reptensor
