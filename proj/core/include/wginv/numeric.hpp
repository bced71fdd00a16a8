#pragma once

#include "wginv/context.hpp"

namespace wginv {

// Orthonormal column frame spanning a subspace of C^ambient_dim.
// Columns follow the orientation convention: the first entry of each column
// with modulus above eq_atol is real and positive, so identical input bits
// always produce identical frames.
struct SubspaceBasis {
  Eigen::Index ambient_dim = 0;
  ComplexMatrix frame;

  Eigen::Index dim() const { return frame.cols(); }
};

// Rank cutoff actually applied: rank_rtol when set, max(rows, cols) * eps
// otherwise.
double effective_rank_rtol(const ComplexMatrix& M, const NumericContext& ctx);

// Largest singular value; 0 for empty shapes.
double spectral_norm(const ComplexMatrix& M);

// Number of singular values above rank_rtol * (largest singular value).
Eigen::Index numerical_rank(const ComplexMatrix& M, const NumericContext& ctx);

// Same, but singular values at or below noise_floor never count, even when
// the whole matrix has collapsed to that scale. Used when ranking matrix
// powers, whose roundoff grows with the power.
Eigen::Index numerical_rank(const ComplexMatrix& M, double noise_floor,
                            const NumericContext& ctx);

// SVD-based pseudoinverse; singular values below the rank cutoff are treated
// as exactly zero.
ComplexMatrix moore_penrose(const ComplexMatrix& M, const NumericContext& ctx);

// Orthonormal, oriented basis of the column space of M.
SubspaceBasis range_basis(const ComplexMatrix& M, const NumericContext& ctx);

// Leading left singular vectors for a rank the caller has already certified
// (typically the stable rank of a power chain); no singular value cutoff.
SubspaceBasis range_basis(const ComplexMatrix& M, Eigen::Index rank,
                          const NumericContext& ctx);

// Orthonormal, oriented basis of the null space of M.
SubspaceBasis null_basis(const ComplexMatrix& M, const NumericContext& ctx);

// Orthonormal basis of the orthogonal complement; [B.frame | result.frame]
// is unitary.
SubspaceBasis complement_basis(const SubspaceBasis& B);

// frame * frame^*.
ComplexMatrix orthogonal_projector(const SubspaceBasis& B);

// The idempotent with range L and null space M, computed by solving against
// the concatenated frame. Throws NotComplementary when L and M do not split
// the space.
ComplexMatrix oblique_projector(const SubspaceBasis& L, const SubspaceBasis& M,
                                const NumericContext& ctx);

// Inverse of a square matrix; throws Singular when the numerical rank is
// deficient or the inverse residual exceeds tolerance.
ComplexMatrix invert(const ComplexMatrix& M, const NumericContext& ctx);

// Applies the orientation convention in place, column by column.
void orient_columns(ComplexMatrix& F, double atol);

}
