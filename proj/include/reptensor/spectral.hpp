#pragma once

#include "reptensor/tensor.hpp"

namespace reptensor::spectral {

enum class Which { bottom, top };

struct EigenSelection {
  Index count;
  Which which;
};

inline EigenSelection bottom(Index d) { return {d, Which::bottom}; }
inline EigenSelection top(Index d) { return {d, Which::top}; }

/// Selected eigenpairs. Values ascend for a bottom selection and descend for
/// a top selection; vectors are the matching columns.
struct EigenPairs {
  Vector values;
  Matrix vectors;
};

// Tolerances enforced on every solve.
inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kOrthonormalityTolerance = 1e-10;
inline constexpr double kResidualTolerance = 1e-8;
inline constexpr double kGeneralizedOrthonormalityTolerance = 1e-8;
// The metric matrix of a generalized problem is accepted as SPD when
// lambda_min > kDefinitenessFloor * ||N||. All norms here are Frobenius.
inline constexpr double kDefinitenessFloor = 1e-10;

/// Dense symmetric eigensolve M v = lambda v.
///
/// The input is symmetrized as (M + M^T)/2; a relative asymmetry beyond
/// kSymmetryTolerance is a ContractError. The returned vectors are
/// orthonormal and each has its largest-magnitude entry positive (first such
/// entry on ties). Throws NumericalError if residual or orthonormality bounds
/// fail.
EigenPairs sym_eig(const Matrix& m, EigenSelection sel);

/// Dense generalized symmetric-definite eigensolve M v = lambda N v.
///
/// Vectors are N-orthonormal (V^T N V = I). When N's smallest eigenvalue is
/// at or below kDefinitenessFloor * ||N|| a DefinitenessError carrying that
/// eigenvalue is thrown; callers decide on a fallback. Residuals are checked
/// in the backward-error form ||M v - lambda N v|| <= tol (||M|| + |lambda| ||N||) ||v||.
EigenPairs gen_sym_eig(const Matrix& m, const Matrix& n, EigenSelection sel);

// Smallest eigenvalue of a symmetric matrix (symmetrized first).
double min_eigenvalue(const Matrix& m);

// Spectral norm of a symmetric matrix.
double sym_norm2(const Matrix& m);

Matrix symmetrized(const Matrix& m);

// Flips each column so its largest-magnitude entry is positive.
void normalize_signs(Matrix& vectors);

}  // namespace reptensor::spectral
