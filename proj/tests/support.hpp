#pragma once

#include <algorithm>
#include <array>
#include <numbers>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "reptensor/tensor.hpp"

namespace testing_support {

using reptensor::Index;
using reptensor::Matrix;
using reptensor::Tensor3;
using reptensor::Vector;

inline Matrix random_matrix(std::mt19937_64& rng, Index r, Index c) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) m(i, j) = n(rng);
  return m;
}

inline Matrix random_symmetric(std::mt19937_64& rng, Index n) {
  const Matrix a = random_matrix(rng, n, n);
  return (a + a.transpose()) / 2.0;
}

inline Matrix random_spd(std::mt19937_64& rng, Index n) {
  const Matrix a = random_matrix(rng, n, n);
  return a * a.transpose() + static_cast<double>(n) * Matrix::Identity(n, n);
}

inline Matrix random_orthonormal(std::mt19937_64& rng, Index r, Index c) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, r, c));
  return qr.householderQ() * Matrix::Identity(r, c);
}

inline Tensor3 random_tensor(std::mt19937_64& rng, Index i, Index j, Index k) {
  std::normal_distribution<double> n(0.0, 1.0);
  Tensor3 t(i, j, k);
  for (Index c = 0; c < k; ++c)
    for (Index b = 0; b < j; ++b)
      for (Index a = 0; a < i; ++a) t(a, b, c) = n(rng);
  return t;
}

inline Tensor3 integer_tensor(std::mt19937_64& rng, Index i, Index j, Index k) {
  std::uniform_int_distribution<int> u(-9, 9);
  Tensor3 t(i, j, k);
  for (Index c = 0; c < k; ++c)
    for (Index b = 0; b < j; ++b)
      for (Index a = 0; a < i; ++a) t(a, b, c) = u(rng);
  return t;
}

// Largest principal angle (radians) between the column spans of a and b.
// Uses the sine form ||(I - Qa Qa^T) Qb||_2, which stays accurate for tiny angles.
inline double principal_angle(const Matrix& a, const Matrix& b) {
  const Matrix qa = Eigen::HouseholderQR<Matrix>(a).householderQ() * Matrix::Identity(a.rows(), a.cols());
  const Matrix qb = Eigen::HouseholderQR<Matrix>(b).householderQ() * Matrix::Identity(b.rows(), b.cols());
  const Matrix resid = qb - qa * (qa.transpose() * qb);
  const double s = Eigen::JacobiSVD<Matrix>(resid).singularValues()(0);
  return std::asin(std::min(1.0, s));
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline double det3(const Matrix& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// Roots of det(M - lambda N) from the interpolated cubic, ascending.
inline std::array<double, 3> cubic_roots(const Matrix& m, const Matrix& n) {
  // p(l) = c3 l^3 + c2 l^2 + c1 l + c0 through l = -1, 0, 1, 2
  const double pm1 = det3(m + n), p0 = det3(m), p1 = det3(m - n), p2 = det3(m - 2.0 * n);
  const double c0 = p0;
  const double c3 = (p2 - 3.0 * p1 + 3.0 * p0 - pm1) / 6.0;
  const double c2 = (p1 + pm1) / 2.0 - p0;
  const double c1 = p1 - c0 - c2 - c3;
  // Depressed cubic t^3 + p t + q with l = t - b/3.
  const double b = c2 / c3, c = c1 / c3, d = c0 / c3;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double r = 2.0 * std::sqrt(-p / 3.0);
  const double phi = std::acos(std::clamp(3.0 * q / (p * r), -1.0, 1.0)) / 3.0;
  std::array<double, 3> roots{};
  for (int k = 0; k < 3; ++k) {
    double l = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - b / 3.0;
    for (int it = 0; it < 3; ++it) {  // Newton polish
      const double f = ((c3 * l + c2) * l + c1) * l + c0;
      const double df = (3.0 * c3 * l + 2.0 * c2) * l + c1;
      if (df != 0.0) l -= f / df;
    }
    roots[static_cast<std::size_t>(k)] = l;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace testing_support
