#include "reptensor/spectral.hpp"

#include <cmath>
#include <sstream>

#include "reptensor/error.hpp"

namespace reptensor::spectral {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw ShapeError(os.str());
  }
}

void require_selection(const Matrix& m, EigenSelection sel) {
  if (sel.count < 1 || sel.count > m.rows()) {
    std::ostringstream os;
    os << "eigen selection count " << sel.count << " outside [1, " << m.rows() << "]";
    throw ParameterError(os.str());
  }
}

Matrix checked_symmetric(const Matrix& m, const char* what) {
  require_square(m, what);
  const double asym = (m - m.transpose()).norm();
  if (asym > kSymmetryTolerance * std::max(1.0, m.norm())) {
    std::ostringstream os;
    os << what << " is not symmetric (||M - M^T|| = " << asym << ")";
    throw ContractError(os.str());
  }
  return symmetrized(m);
}

// Picks `sel` columns out of an ascending decomposition.
EigenPairs select(const Vector& ascending_values, const Matrix& vectors, EigenSelection sel) {
  const Index n = ascending_values.size();
  EigenPairs out{Vector(sel.count), Matrix(vectors.rows(), sel.count)};
  for (Index c = 0; c < sel.count; ++c) {
    const Index src = sel.which == Which::bottom ? c : n - 1 - c;
    out.values(c) = ascending_values(src);
    out.vectors.col(c) = vectors.col(src);
  }
  return out;
}

}  // namespace

void normalize_signs(Matrix& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    Index arg = 0;
    double best = -1.0;
    for (Index r = 0; r < vectors.rows(); ++r) {
      const double a = std::abs(vectors(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (vectors(arg, c) < 0.0) vectors.col(c) *= -1.0;
  }
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double min_eigenvalue(const Matrix& m) {
  require_square(m, "matrix");
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double sym_norm2(const Matrix& m) {
  require_square(m, "matrix");
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

EigenPairs sym_eig(const Matrix& m, EigenSelection sel) {
  const Matrix s = checked_symmetric(m, "eigenproblem matrix");
  require_selection(s, sel);

  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  EigenPairs out = select(es.eigenvalues(), es.eigenvectors(), sel);
  normalize_signs(out.vectors);

  const double scale = s.norm();
  const Matrix gram = out.vectors.transpose() * out.vectors;
  const double orth = (gram - Matrix::Identity(sel.count, sel.count)).norm();
  if (orth > kOrthonormalityTolerance) {
    std::ostringstream os;
    os << "eigenvectors lost orthonormality: ||V^T V - I|| = " << orth;
    throw NumericalError(os.str());
  }
  for (Index c = 0; c < sel.count; ++c) {
    const double res = (s * out.vectors.col(c) - out.values(c) * out.vectors.col(c)).norm();
    if (res > kResidualTolerance * scale) {
      std::ostringstream os;
      os << "eigenpair " << c << " residual " << res << " exceeds " << kResidualTolerance << " * " << scale;
      throw NumericalError(os.str());
    }
  }
  return out;
}

EigenPairs gen_sym_eig(const Matrix& m, const Matrix& n, EigenSelection sel) {
  const Matrix a = checked_symmetric(m, "generalized eigenproblem matrix");
  const Matrix b = checked_symmetric(n, "generalized eigenproblem metric");
  if (a.rows() != b.rows()) throw ShapeError("generalized eigenproblem matrices differ in size");
  require_selection(a, sel);

  const double b_norm = b.norm();
  const double b_min = min_eigenvalue(b);
  if (!(b_min > kDefinitenessFloor * b_norm)) {
    std::ostringstream os;
    os << "metric matrix is not positive definite: lambda_min = " << b_min << ", ||N|| = " << b_norm;
    throw DefinitenessError(os.str(), b_min, b_norm);
  }

  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(a, b, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) {
    // Cholesky can still fail right above the floor.
    throw DefinitenessError("Cholesky factorization of the metric matrix failed", b_min, b_norm);
  }
  EigenPairs out = select(es.eigenvalues(), es.eigenvectors(), sel);
  normalize_signs(out.vectors);

  const double a_norm = a.norm();
  const Matrix gram = out.vectors.transpose() * b * out.vectors;
  const double orth = (gram - Matrix::Identity(sel.count, sel.count)).norm();
  if (orth > kGeneralizedOrthonormalityTolerance) {
    std::ostringstream os;
    os << "generalized eigenvectors lost N-orthonormality: ||V^T N V - I|| = " << orth;
    throw NumericalError(os.str());
  }
  for (Index c = 0; c < sel.count; ++c) {
    const auto v = out.vectors.col(c);
    const double lambda = out.values(c);
    const double res = (a * v - lambda * (b * v)).norm();
    const double bound = kResidualTolerance * (a_norm + std::abs(lambda) * b_norm) * v.norm();
    if (res > bound) {
      std::ostringstream os;
      os << "generalized eigenpair " << c << " residual " << res << " exceeds " << bound;
      throw NumericalError(os.str());
    }
  }
  return out;
}

}  // namespace reptensor::spectral
