#include "wginv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "wginv/errors.hpp"

namespace wginv {

IndexResult index(const ComplexMatrix& A, const NumericContext& ctx) {
  if (A.rows() != A.cols()) throw ShapeMismatch("index: matrix must be square");
  const Eigen::Index n = A.rows();
  if (n == 0) return {0, 0};
  const int cap = ctx.max_index > 0 ? ctx.max_index : static_cast<int>(n);
  // Roundoff in the computed A^{k+1} grows like (k+1) * ||A||_2^{k+1} * eps.
  // Rank the powers against that floor: under a purely relative cutoff a
  // power that has collapsed to noise still shows rank >= 1, and the rank
  // sequence of a nilpotent matrix never settles.
  const double base = spectral_norm(A);
  const double rtol = effective_rank_rtol(A, ctx);
  Eigen::Index r_prev = n;
  double scale = 1.0;
  ComplexMatrix P = ComplexMatrix::Identity(n, n);
  for (int k = 0; k <= cap; ++k) {
    ComplexMatrix Pn = P * A;
    scale *= base;
    const double noise_floor = rtol * static_cast<double>(k + 1) * scale;
    const Eigen::Index r_next = numerical_rank(Pn, noise_floor, ctx);
    if (r_next == r_prev) return {k, r_prev};
    r_prev = r_next;
    P = std::move(Pn);
  }
  throw IndexOverflow("index: rank sequence did not stabilize within the cap");
}

void check_weighted_input(const ComplexMatrix& A, const ComplexMatrix& W,
                          const NumericContext& ctx) {
  if (W.rows() != A.cols() || W.cols() != A.rows()) {
    throw ShapeMismatch("weight matrix must have the transposed shape of the operator");
  }
  if (W.norm() <= ctx.eq_atol) throw ZeroWeight("weight matrix is numerically zero");
}

ComplexMatrix matrix_power(const ComplexMatrix& A, int k) {
  if (A.rows() != A.cols()) throw ShapeMismatch("matrix_power: matrix must be square");
  if (k < 0) throw InputError("matrix_power: negative exponent");
  ComplexMatrix P = ComplexMatrix::Identity(A.rows(), A.rows());
  for (int i = 0; i < k; ++i) P = P * A;
  return P;
}

ComplexMatrix drazin(const ComplexMatrix& A, const NumericContext& ctx) {
  const IndexResult ir = index(A, ctx);
  if (ir.stable_rank == 0) return ComplexMatrix::Zero(A.rows(), A.cols());
  const ComplexMatrix Ak = matrix_power(A, ir.index);
  return Ak * moore_penrose(matrix_power(A, 2 * ir.index + 1), ctx) * Ak;
}

namespace {

double block_tolerance(const ComplexMatrix& M, const NumericContext& ctx) {
  return ctx.eq_atol + ctx.eq_rtol * (1.0 + M.norm());
}

}  // namespace

CanonicalPair canonical_pair(const ComplexMatrix& A, const ComplexMatrix& W,
                             const NumericContext& ctx) {
  check_weighted_input(A, W, ctx);
  const ComplexMatrix AW = A * W;
  const ComplexMatrix WA = W * A;
  const IndexResult iaw = index(AW, ctx);
  const IndexResult iwa = index(WA, ctx);

  CanonicalPair cp;
  cp.index_aw = iaw.index;
  cp.index_wa = iwa.index;
  cp.q1 = range_basis(matrix_power(AW, iaw.index), iaw.stable_rank, ctx);
  cp.p1 = range_basis(matrix_power(WA, iwa.index), iwa.stable_rank, ctx);
  if (cp.q1.dim() != cp.p1.dim()) {
    throw DecompositionFailure("canonical_pair: stable ranks of the two products disagree");
  }
  cp.q2 = complement_basis(cp.q1);
  cp.p2 = complement_basis(cp.p1);

  const ComplexMatrix A21 = cp.q2.frame.adjoint() * A * cp.p1.frame;
  const ComplexMatrix W21 = cp.p2.frame.adjoint() * W * cp.q1.frame;
  if (A21.norm() > block_tolerance(A, ctx) || W21.norm() > block_tolerance(W, ctx)) {
    throw DecompositionFailure("canonical_pair: lower-left block does not vanish");
  }

  cp.A1 = cp.q1.frame.adjoint() * A * cp.p1.frame;
  cp.A2 = cp.q1.frame.adjoint() * A * cp.p2.frame;
  cp.A3 = cp.q2.frame.adjoint() * A * cp.p2.frame;
  cp.W1 = cp.p1.frame.adjoint() * W * cp.q1.frame;
  cp.W2 = cp.p1.frame.adjoint() * W * cp.q2.frame;
  cp.W3 = cp.p2.frame.adjoint() * W * cp.q2.frame;

  const Eigen::Index r = cp.A1.rows();
  if (r > 0 && (numerical_rank(cp.A1, ctx) < r || numerical_rank(cp.W1, ctx) < r)) {
    throw DecompositionFailure("canonical_pair: core block is numerically singular");
  }

  auto tu = series_TU(cp, ctx);
  cp.T = std::move(tu.first);
  cp.U = std::move(tu.second);
  return cp;
}

namespace {

// sum over j of Minv^(j+2) * K * N^j, truncated at the noise floor
ComplexMatrix series_tail(const ComplexMatrix& Minv, const ComplexMatrix& K,
                          const ComplexMatrix& N, const NumericContext& ctx) {
  ComplexMatrix acc = ComplexMatrix::Zero(K.rows(), K.cols());
  if (K.rows() == 0 || K.cols() == 0) return acc;
  ComplexMatrix Mp = Minv * Minv;
  ComplexMatrix Np = ComplexMatrix::Identity(N.rows(), N.rows());
  const double nscale = std::max(1.0, N.norm());
  double floor_scale = 1.0;
  for (Eigen::Index j = 0; j <= N.rows(); ++j) {
    if (j > 0) {
      Np = Np * N;
      floor_scale *= nscale;
      if (Np.norm() <= ctx.eq_atol * floor_scale) break;
    }
    acc += Mp * K * Np;
    Mp = Mp * Minv;
  }
  return acc;
}

}  // namespace

std::pair<ComplexMatrix, ComplexMatrix> series_TU(const CanonicalPair& cp,
                                                  const NumericContext& ctx) {
  const Eigen::Index r = cp.A1.rows();
  const Eigen::Index nil_x = cp.A3.cols();
  const Eigen::Index nil_y = cp.A3.rows();
  if (r == 0) {
    return {ComplexMatrix::Zero(0, nil_y), ComplexMatrix::Zero(0, nil_x)};
  }
  const ComplexMatrix inv_a1w1 = invert(cp.A1 * cp.W1, ctx);
  const ComplexMatrix inv_w1a1 = invert(cp.W1 * cp.A1, ctx);
  ComplexMatrix T = series_tail(inv_a1w1, cp.A1 * cp.W2 + cp.A2 * cp.W3, cp.A3 * cp.W3, ctx);
  ComplexMatrix U = series_tail(inv_w1a1, cp.W1 * cp.A2 + cp.W2 * cp.A3, cp.W3 * cp.A3, ctx);
  return {std::move(T), std::move(U)};
}

ComplexMatrix w_drazin(const ComplexMatrix& A, const ComplexMatrix& W,
                       const NumericContext& ctx) {
  check_weighted_input(A, W, ctx);
  const ComplexMatrix dAW = drazin(A * W, ctx);
  const ComplexMatrix dWA = drazin(W * A, ctx);
  const ComplexMatrix X = dAW * dAW * A;
  const ComplexMatrix X_alt = A * dWA * dWA;
  if (!matrices_equal(X, X_alt, ctx)) {
    throw InvariantViolation("w_drazin: the two Drazin products disagree");
  }
  CanonicalPair cp = canonical_pair(A, W, ctx);
  const Eigen::Index r = cp.core_rank();
  ComplexMatrix X_blocks;
  if (r == 0) {
    X_blocks = ComplexMatrix::Zero(A.rows(), A.cols());
  } else {
    const ComplexMatrix inv_w1a1w1 = invert(cp.W1 * cp.A1 * cp.W1, ctx);
    const ComplexMatrix top_right = invert(cp.W1, ctx) * cp.U;
    X_blocks = cp_assemble_xy(cp, inv_w1a1w1, top_right,
                              ComplexMatrix::Zero(cp.A3.rows(), r),
                              ComplexMatrix::Zero(cp.A3.rows(), cp.A3.cols()));
  }
  if (!matrices_equal(X, X_blocks, ctx)) {
    throw InvariantViolation("w_drazin: block formula disagrees with the Drazin products");
  }
  return X;
}

ComplexMatrix cp_assemble_xy(const CanonicalPair& cp, const ComplexMatrix& M11,
                             const ComplexMatrix& M12, const ComplexMatrix& M21,
                             const ComplexMatrix& M22) {
  ComplexMatrix out = ComplexMatrix::Zero(cp.q1.ambient_dim, cp.p1.ambient_dim);
  out += cp.q1.frame * M11 * cp.p1.frame.adjoint();
  out += cp.q1.frame * M12 * cp.p2.frame.adjoint();
  out += cp.q2.frame * M21 * cp.p1.frame.adjoint();
  out += cp.q2.frame * M22 * cp.p2.frame.adjoint();
  return out;
}

ComplexMatrix cp_assemble_yx(const CanonicalPair& cp, const ComplexMatrix& M11,
                             const ComplexMatrix& M12, const ComplexMatrix& M21,
                             const ComplexMatrix& M22) {
  ComplexMatrix out = ComplexMatrix::Zero(cp.p1.ambient_dim, cp.q1.ambient_dim);
  out += cp.p1.frame * M11 * cp.q1.frame.adjoint();
  out += cp.p1.frame * M12 * cp.q2.frame.adjoint();
  out += cp.p2.frame * M21 * cp.q1.frame.adjoint();
  out += cp.p2.frame * M22 * cp.q2.frame.adjoint();
  return out;
}

std::array<ComplexMatrix, 4> cp_blocks_xy(const CanonicalPair& cp, const ComplexMatrix& M) {
  if (M.rows() != cp.q1.ambient_dim || M.cols() != cp.p1.ambient_dim) {
    throw ShapeMismatch("cp_blocks_xy: matrix shape does not match the pair");
  }
  return {cp.q1.frame.adjoint() * M * cp.p1.frame, cp.q1.frame.adjoint() * M * cp.p2.frame,
          cp.q2.frame.adjoint() * M * cp.p1.frame, cp.q2.frame.adjoint() * M * cp.p2.frame};
}

}
