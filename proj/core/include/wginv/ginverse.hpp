#pragma once

#include <map>
#include <string>

#include "wginv/context.hpp"
#include "wginv/numeric.hpp"
#include "wginv/spectral.hpp"

namespace wginv {

// Core-EP inverse of a square matrix: A^d restricted to the stable range.
ComplexMatrix core_ep(const ComplexMatrix& A, const NumericContext& ctx = {});

// Weighted core-EP inverse, assembled from the canonical blocks.
ComplexMatrix weighted_core_ep(const ComplexMatrix& A, const ComplexMatrix& W,
                               const NumericContext& ctx = {});

// Weak group inverse of a square matrix, computed by the unweighted path.
ComplexMatrix weak_group(const ComplexMatrix& A, const NumericContext& ctx = {});

// Weighted weak group inverse (the library's central object).
ComplexMatrix weighted_weak_group(const ComplexMatrix& A, const ComplexMatrix& W,
                                  const NumericContext& ctx = {});

// Group inverse; requires index(A) <= 1.
ComplexMatrix group_inverse(const ComplexMatrix& A, const NumericContext& ctx = {});

// Core inverse; requires index(A) <= 1.
ComplexMatrix core_inverse(const ComplexMatrix& A, const NumericContext& ctx = {});

// Outer inverse of M with prescribed range T and null space S.
ComplexMatrix outer_inverse_prescribed(const ComplexMatrix& M, const SubspaceBasis& T,
                                       const SubspaceBasis& S, const NumericContext& ctx = {});

// Every independent way this library knows to reach the weighted weak group
// inverse.  Keys: DEF, GEOM, REP_I ... REP_VII, PRODUCT, TRANSFER.
struct RouteTable {
  std::map<std::string, ComplexMatrix> entries;
  ComplexMatrix reference;  // the DEF entry
  double max_pairwise_residual = 0.0;
};

RouteTable wwg_representations(const ComplexMatrix& A, const ComplexMatrix& W,
                               const NumericContext& ctx = {});

enum class CharVariant { SYSTEM, GEOMETRIC, CHAR_II, CHAR_III, CHAR_IV };

// The CHAR_IV third equation has two interchangeable finite-dimensional
// forms; both are kept and tested against each other.
enum class CharIvForm { RESOLVENT, POWER };

struct CharacterizationResult {
  bool holds = false;
  CharVariant variant = CharVariant::SYSTEM;
  std::map<std::string, double> residuals;
  double max_residual() const;
};

CharacterizationResult characterization_check(const ComplexMatrix& A, const ComplexMatrix& W,
                                              const ComplexMatrix& B, const NumericContext& ctx,
                                              CharVariant variant,
                                              CharIvForm iv_form = CharIvForm::RESOLVENT);

struct CommutationReport {
  bool commutes = false;            // AWX = XWA for the weighted weak group inverse X
  bool block_condition = false;     // (W1 A2 + W2 A3) W3 A3 = 0
  bool square_identity = false;     // wg(WA)^2 = wg((WA)^2)
  bool aw_square_identity = false;  // wg(AW)^2 = wg((AW)^2)
  bool aw_block_condition = false;  // (A1 W2 + A2 W3) A3 W3 = 0
  bool equals_wdrazin = false;      // X equals the weighted Drazin inverse
  double commutes_residual = 0.0;
  double block_condition_residual = 0.0;
  double square_identity_residual = 0.0;
  double aw_square_identity_residual = 0.0;
  double aw_block_condition_residual = 0.0;
  double equals_wdrazin_residual = 0.0;
};

// Evaluates all six conditions and enforces the equivalence chains
// (commutes = block_condition = square_identity, the two AW conditions
// agree, commutes implies equals_wdrazin); disagreement is a hard error.
CommutationReport commutation_analysis(const ComplexMatrix& A, const ComplexMatrix& W,
                                       const NumericContext& ctx = {});

}
