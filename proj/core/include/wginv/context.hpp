#pragma once

#include <complex>

#include <Eigen/Dense>

namespace wginv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr const char* kVersion = "0.1.0";

// Tolerances and determinism conventions shared by every operation.
struct NumericContext {
  // Relative singular-value cutoff for rank decisions.
  // 0 selects max(rows, cols) * machine epsilon.
  double rank_rtol = 0.0;
  // Relative residual threshold for identity checks.
  double eq_rtol = 1e-8;
  // Absolute floor for identity checks.
  double eq_atol = 1e-12;
  // Cap for the index search. 0 selects the matrix dimension.
  int max_index = 0;
};

// ||X - Y||_F / (1 + ||X||_F + ||Y||_F), the normalized residual reported
// alongside every boolean verdict.
double relative_residual(const ComplexMatrix& X, const ComplexMatrix& Y);

// Residual-based equality: ||X - Y||_F <= eq_atol + eq_rtol * (1 + ||X||_F + ||Y||_F).
bool matrices_equal(const ComplexMatrix& X, const ComplexMatrix& Y, const NumericContext& ctx);

// Threshold for an already-normalized residual, consistent with matrices_equal.
inline double residual_tolerance(const NumericContext& ctx) {
  return ctx.eq_atol + ctx.eq_rtol;
}

}
