#pragma once

#include <cmath>
#include <sstream>

#include "reptensor/error.hpp"
#include "reptensor/spectral.hpp"

namespace reptensor::detail {

// Generalized solve that retries once with the metric shifted by
// (|lambda_min| + 1e-8 ||N||) I when it is not SPD. A second definiteness
// failure is rethrown with both attempts in the message.
inline spectral::EigenPairs solve_with_ridge(const Matrix& m, const Matrix& metric,
                                             spectral::EigenSelection sel, int& shifts,
                                             const char* what) {
  try {
    return spectral::gen_sym_eig(m, metric, sel);
  } catch (const DefinitenessError& first) {
    const double shift = std::abs(first.smallest_eigenvalue()) + 1e-8 * first.norm();
    Matrix shifted = metric;
    shifted.diagonal().array() += shift;
    ++shifts;
    try {
      return spectral::gen_sym_eig(m, shifted, sel);
    } catch (const DefinitenessError& second) {
      std::ostringstream os;
      os << what << ": metric not positive definite (lambda_min = " << first.smallest_eigenvalue()
         << "), still failing after ridge shift " << shift << " (lambda_min = "
         << second.smallest_eigenvalue() << ")";
      throw DefinitenessError(os.str(), second.smallest_eigenvalue(), second.norm());
    }
  }
}

}  // namespace reptensor::detail
