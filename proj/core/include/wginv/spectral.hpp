#pragma once

#include <array>
#include <utility>

#include "wginv/context.hpp"
#include "wginv/numeric.hpp"

namespace wginv {

struct IndexResult {
  int index = 0;             // smallest k with rank(A^k) == rank(A^{k+1})
  Eigen::Index stable_rank = 0;
};

IndexResult index(const ComplexMatrix& A, const NumericContext& ctx = {});

// Shape and nonzero-weight guard shared by every weighted operation.
void check_weighted_input(const ComplexMatrix& A, const ComplexMatrix& W,
                          const NumericContext& ctx);

ComplexMatrix matrix_power(const ComplexMatrix& A, int k);

// Drazin inverse of a square matrix (index known or computed internally).
ComplexMatrix drazin(const ComplexMatrix& A, const NumericContext& ctx = {});

// W-weighted Drazin inverse of a rectangular A with weight W of the
// transposed shape: A{(AW)^d}^2 computed through the square Drazin inverse.
ComplexMatrix w_drazin(const ComplexMatrix& A, const ComplexMatrix& W,
                       const NumericContext& ctx = {});

// Joint canonical decomposition of a pair (A, W).  p1/q1 span the ranges of
// (WA)^d and (AW)^d, p2/q2 their orthogonal complements, and the six blocks
// carry A and W in those bases:
//   A ~ [A1 A2; 0 A3]   (q-basis rows, p-basis columns)
//   W ~ [W1 W2; 0 W3]   (p-basis rows, q-basis columns)
// T and U are the series tails that close the Drazin formulas; they are
// filled in by series_TU.
struct CanonicalPair {
  SubspaceBasis p1, p2;  // of C^n (domain of A)
  SubspaceBasis q1, q2;  // of C^m (codomain of A)
  ComplexMatrix A1, A2, A3;
  ComplexMatrix W1, W2, W3;
  ComplexMatrix T, U;
  int index_aw = 0;
  int index_wa = 0;
  Eigen::Index core_rank() const { return A1.rows(); }
};

CanonicalPair canonical_pair(const ComplexMatrix& A, const ComplexMatrix& W,
                             const NumericContext& ctx = {});

// Series tails (T, U) from the block data.  Terms are summed until the
// nilpotent power falls below the noise floor, capped at the block size.
std::pair<ComplexMatrix, ComplexMatrix> series_TU(const CanonicalPair& cp,
                                                  const NumericContext& ctx = {});

// Rebuilds a matrix acting C^n -> C^m from blocks given against (p, q).
ComplexMatrix cp_assemble_xy(const CanonicalPair& cp, const ComplexMatrix& M11,
                             const ComplexMatrix& M12, const ComplexMatrix& M21,
                             const ComplexMatrix& M22);

// Same for the opposite direction C^m -> C^n (blocks against (q, p)).
ComplexMatrix cp_assemble_yx(const CanonicalPair& cp, const ComplexMatrix& M11,
                             const ComplexMatrix& M12, const ComplexMatrix& M21,
                             const ComplexMatrix& M22);

// Blocks {M11, M12, M21, M22} of a map C^n -> C^m against (p, q).
std::array<ComplexMatrix, 4> cp_blocks_xy(const CanonicalPair& cp, const ComplexMatrix& M);

}
