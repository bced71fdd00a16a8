#pragma once

#include <initializer_list>

#include "wginv/wginv.hpp"

// Shared hand-checked matrices used across the suites. The 3x3 trio
// kA/kB/kC exercises index 2, a comparable partner, and an incomparable
// one; the weak group inverses of kA and kB are known in closed form.

namespace fixtures {

using wginv::Complex;
using wginv::ComplexMatrix;

inline ComplexMatrix dense(Eigen::Index rows, Eigen::Index cols,
                           std::initializer_list<double> vals) {
  ComplexMatrix M(rows, cols);
  auto it = vals.begin();
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = Complex(*it++, 0.0);
  return M;
}

inline ComplexMatrix mat_a() {
  return dense(3, 3, {1, 1, 1, 0, 0, 1, 0, 0, 0});
}

inline ComplexMatrix mat_b() {
  return dense(3, 3, {1, 1, 0, 0, 0, 2, 0, 0, 0});
}

inline ComplexMatrix mat_c() {
  return dense(3, 3, {1, 0, 1, 0, 1, 1, 0, 1, 1});
}

inline ComplexMatrix wg_a() {
  return dense(3, 3, {1, 1, 1, 0, 0, 0, 0, 0, 0});
}

inline ComplexMatrix wg_b() {
  return dense(3, 3, {1, 1, 0, 0, 0, 0, 0, 0, 0});
}

inline ComplexMatrix drazin_a() {
  return dense(3, 3, {1, 1, 2, 0, 0, 0, 0, 0, 0});
}

inline ComplexMatrix core_ep_a() {
  return dense(3, 3, {1, 0, 0, 0, 0, 0, 0, 0, 0});
}

inline double max_abs_diff(const ComplexMatrix& X, const ComplexMatrix& Y) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols()) return 1.0e99;
  if (X.size() == 0) return 0.0;
  return (X - Y).cwiseAbs().maxCoeff();
}

}  // namespace fixtures
