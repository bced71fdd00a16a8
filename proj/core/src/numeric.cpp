#include "wginv/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wginv/errors.hpp"

namespace wginv {

double relative_residual(const ComplexMatrix& X, const ComplexMatrix& Y) {
  return (X - Y).norm() / (1.0 + X.norm() + Y.norm());
}

bool matrices_equal(const ComplexMatrix& X, const ComplexMatrix& Y, const NumericContext& ctx) {
  return (X - Y).norm() <= ctx.eq_atol + ctx.eq_rtol * (1.0 + X.norm() + Y.norm());
}

double effective_rank_rtol(const ComplexMatrix& M, const NumericContext& ctx) {
  if (ctx.rank_rtol > 0.0) return ctx.rank_rtol;
  const auto dim = std::max(M.rows(), M.cols());
  return static_cast<double>(dim) * std::numeric_limits<double>::epsilon();
}

namespace {

Eigen::Index rank_above_cut(const Eigen::VectorXd& sv, double cut) {
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

Eigen::Index rank_from_singular_values(const Eigen::VectorXd& sv, double rtol) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  return rank_above_cut(sv, rtol * sv(0));
}

}  // namespace

void orient_columns(ComplexMatrix& F, double atol) {
  for (Eigen::Index j = 0; j < F.cols(); ++j) {
    for (Eigen::Index i = 0; i < F.rows(); ++i) {
      const double a = std::abs(F(i, j));
      if (a > atol) {
        F.col(j) *= std::conj(F(i, j)) / a;
        break;
      }
    }
  }
}

double spectral_norm(const ComplexMatrix& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(M);
  return svd.singularValues()(0);
}

Eigen::Index numerical_rank(const ComplexMatrix& M, const NumericContext& ctx) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(M);
  return rank_from_singular_values(svd.singularValues(), effective_rank_rtol(M, ctx));
}

Eigen::Index numerical_rank(const ComplexMatrix& M, double noise_floor,
                            const NumericContext& ctx) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(M);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv(0) <= noise_floor) return 0;
  const double cut = std::max(effective_rank_rtol(M, ctx) * sv(0), noise_floor);
  return rank_above_cut(sv, cut);
}

ComplexMatrix moore_penrose(const ComplexMatrix& M, const NumericContext& ctx) {
  if (M.rows() == 0 || M.cols() == 0) return ComplexMatrix::Zero(M.cols(), M.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const Eigen::Index r = rank_from_singular_values(sv, effective_rank_rtol(M, ctx));
  if (r == 0) return ComplexMatrix::Zero(M.cols(), M.rows());
  Eigen::VectorXcd inv = Eigen::VectorXcd::Zero(sv.size());
  for (Eigen::Index i = 0; i < r; ++i) inv(i) = Complex(1.0 / sv(i), 0.0);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

SubspaceBasis range_basis(const ComplexMatrix& M, const NumericContext& ctx) {
  SubspaceBasis out;
  out.ambient_dim = M.rows();
  if (M.rows() == 0 || M.cols() == 0) {
    out.frame = ComplexMatrix::Zero(M.rows(), 0);
    return out;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeThinU);
  const Eigen::Index r = rank_from_singular_values(svd.singularValues(), effective_rank_rtol(M, ctx));
  out.frame = svd.matrixU().leftCols(r);
  orient_columns(out.frame, ctx.eq_atol);
  return out;
}

SubspaceBasis range_basis(const ComplexMatrix& M, Eigen::Index rank,
                          const NumericContext& ctx) {
  if (rank < 0 || rank > std::min(M.rows(), M.cols())) {
    throw InputError("range_basis: certified rank is outside the feasible range");
  }
  SubspaceBasis out;
  out.ambient_dim = M.rows();
  if (rank == 0) {
    out.frame = ComplexMatrix::Zero(M.rows(), 0);
    return out;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeThinU);
  out.frame = svd.matrixU().leftCols(rank);
  orient_columns(out.frame, ctx.eq_atol);
  return out;
}

SubspaceBasis null_basis(const ComplexMatrix& M, const NumericContext& ctx) {
  SubspaceBasis out;
  out.ambient_dim = M.cols();
  if (M.rows() == 0 || M.cols() == 0) {
    out.frame = ComplexMatrix::Identity(M.cols(), M.cols());
    orient_columns(out.frame, ctx.eq_atol);
    return out;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeFullV);
  const Eigen::Index r = rank_from_singular_values(svd.singularValues(), effective_rank_rtol(M, ctx));
  out.frame = svd.matrixV().rightCols(M.cols() - r);
  orient_columns(out.frame, ctx.eq_atol);
  return out;
}

SubspaceBasis complement_basis(const SubspaceBasis& B) {
  const Eigen::Index d = B.ambient_dim;
  const Eigen::Index k = B.frame.cols();
  SubspaceBasis out;
  out.ambient_dim = d;
  if (k == 0) {
    out.frame = ComplexMatrix::Identity(d, d);
    return out;
  }
  if (k >= d) {
    out.frame = ComplexMatrix::Zero(d, 0);
    return out;
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(B.frame);
  ComplexMatrix Q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  out.frame = Q.rightCols(d - k);
  orient_columns(out.frame, 0.0);
  return out;
}

ComplexMatrix orthogonal_projector(const SubspaceBasis& B) {
  if (B.frame.cols() == 0) return ComplexMatrix::Zero(B.ambient_dim, B.ambient_dim);
  return B.frame * B.frame.adjoint();
}

ComplexMatrix oblique_projector(const SubspaceBasis& L, const SubspaceBasis& M,
                                const NumericContext& ctx) {
  if (L.ambient_dim != M.ambient_dim) {
    throw ShapeMismatch("oblique_projector: ambient dimensions differ");
  }
  const Eigen::Index d = L.ambient_dim;
  const Eigen::Index l = L.frame.cols();
  const Eigen::Index m = M.frame.cols();
  if (l + m != d) {
    throw NotComplementary("oblique_projector: subspace dimensions do not sum to the ambient dimension");
  }
  ComplexMatrix F(d, d);
  F.leftCols(l) = L.frame;
  F.rightCols(m) = M.frame;
  if (numerical_rank(F, ctx) < d) {
    throw NotComplementary("oblique_projector: concatenated frames are rank deficient");
  }
  ComplexMatrix C = ComplexMatrix::Zero(d, d);
  C.leftCols(l) = L.frame;
  // P F = C, solved as F^T P^T = C^T.
  Eigen::PartialPivLU<ComplexMatrix> lu(F.transpose());
  return lu.solve(C.transpose()).transpose();
}

ComplexMatrix invert(const ComplexMatrix& M, const NumericContext& ctx) {
  if (M.rows() != M.cols()) throw ShapeMismatch("invert: matrix must be square");
  const Eigen::Index n = M.rows();
  if (n == 0) return ComplexMatrix::Zero(0, 0);
  if (numerical_rank(M, ctx) < n) throw Singular("invert: numerical rank is deficient");
  Eigen::PartialPivLU<ComplexMatrix> lu(M);
  ComplexMatrix inv = lu.inverse();
  const ComplexMatrix I = ComplexMatrix::Identity(n, n);
  if (!matrices_equal(M * inv, I, ctx)) {
    throw Singular("invert: inverse residual exceeds tolerance");
  }
  return inv;
}

}
