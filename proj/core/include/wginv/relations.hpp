#pragma once

#include <vector>

#include "wginv/context.hpp"
#include "wginv/spectral.hpp"

namespace wginv {

enum class RelationMethod { DIRECT, BLOCK };

enum class RelationSide { RIGHT, LEFT, BOTH };

struct RelationVerdict {
  bool holds = false;
  double left_residual = 0.0;   // first defining equation
  double right_residual = 0.0;  // second defining equation
  RelationMethod method = RelationMethod::DIRECT;
};

// Weak group relation on square matrices: AX = BX and XA = XB for the
// weak group inverse X of A.
RelationVerdict wg_below(const ComplexMatrix& A, const ComplexMatrix& B,
                         const NumericContext& ctx = {});

// Weighted variants: RIGHT compares AW against BW, LEFT compares WA
// against WB, BOTH requires both.
RelationVerdict wwg_below(const ComplexMatrix& A, const ComplexMatrix& W,
                          const ComplexMatrix& B, const NumericContext& ctx,
                          RelationSide side);

struct RelationBlockReport {
  bool direct_right = false;
  bool block_right = false;
  bool direct_left = false;
  bool block_left = false;
  double block_right_residual = 0.0;
  double block_left_residual = 0.0;
};

// Evaluates the relations both directly and through B's blocks in A's
// canonical bases; the two evaluations must agree.
RelationBlockReport relation_block_analysis(const ComplexMatrix& A, const ComplexMatrix& W,
                                            const ComplexMatrix& B,
                                            const NumericContext& ctx = {});

struct LemmaEquivReport {
  // part (i): five equivalent left-side conditions
  bool i1 = false;  // A wg(A) = B wg(A)
  bool i2 = false;  // cep(A) A = B cep(A)^2 A
  bool i3 = false;  // cep(A) = B cep(A)^2
  bool i4 = false;  // drazin(A) = B cep(A) drazin(A)
  bool i5 = false;  // A drazin(A) = B drazin(A)
  // part (ii): two equivalent right-side conditions
  bool ii1 = false;  // wg(A) A = wg(A) B
  bool ii2 = false;  // cep(A) A^2 = cep(A) A B
  bool part_i_consistent() const { return i1 == i2 && i2 == i3 && i3 == i4 && i4 == i5; }
  bool part_ii_consistent() const { return ii1 == ii2; }
};

LemmaEquivReport lemma_equiv_suite(const ComplexMatrix& A, const ComplexMatrix& B,
                                   const NumericContext& ctx = {});

struct ProbeTriple {
  ComplexMatrix A, B, C;
};

struct PreorderProbeEntry {
  bool ab = false, bc = false, ac = false;
  bool transitivity_violated = false;
};

struct PreorderProbeReport {
  std::vector<PreorderProbeEntry> triples;
  bool any_transitivity_violation = false;
  // antisymmetry probe on a nilpotent pair: mutual relation with A != B
  bool antisymmetry_violated = false;
};

PreorderProbeReport preorder_probe(const std::vector<ProbeTriple>& triples,
                                   const NumericContext& ctx = {});

}
