#include "wginv/relations.hpp"

#include <algorithm>

#include "wginv/errors.hpp"
#include "wginv/ginverse.hpp"

namespace wginv {

namespace {

void check_same_square(const ComplexMatrix& A, const ComplexMatrix& B, const char* who) {
  if (A.rows() != A.cols()) throw ShapeMismatch(std::string(who) + ": matrices must be square");
  if (B.rows() != A.rows() || B.cols() != A.cols()) {
    throw ShapeMismatch(std::string(who) + ": matrices must have the same shape");
  }
}

double pair_scale(const ComplexMatrix& A, const ComplexMatrix& B) {
  return 1.0 + A.norm() + B.norm();
}

}  // namespace

RelationVerdict wg_below(const ComplexMatrix& A, const ComplexMatrix& B,
                         const NumericContext& ctx) {
  check_same_square(A, B, "wg_below");
  const ComplexMatrix X = weak_group(A, ctx);
  const double scale = pair_scale(A, B);
  RelationVerdict v;
  v.method = RelationMethod::DIRECT;
  v.left_residual = (A * X - B * X).norm() / scale;
  v.right_residual = (X * A - X * B).norm() / scale;
  const double tol = residual_tolerance(ctx);
  v.holds = v.left_residual <= tol && v.right_residual <= tol;
  return v;
}

RelationVerdict wwg_below(const ComplexMatrix& A, const ComplexMatrix& W,
                          const ComplexMatrix& B, const NumericContext& ctx,
                          RelationSide side) {
  if (B.rows() != A.rows() || B.cols() != A.cols()) {
    throw ShapeMismatch("wwg_below: matrices must have the same shape");
  }
  check_weighted_input(A, W, ctx);
  const double tol = residual_tolerance(ctx);

  auto left_side = [&]() {
    RelationVerdict v = wg_below(W * A, W * B, ctx);
    // independent path through the weighted weak group inverse itself
    const ComplexMatrix X = weighted_weak_group(A, W, ctx);
    const double scale = pair_scale(A, B);
    const double c1 = (W * A * W * X - W * B * W * X).norm() / scale;
    const double c2 = (W * X * W * A - W * X * W * B).norm() / scale;
    const bool alt = c1 <= tol && c2 <= tol;
    if (alt != v.holds) {
      throw InvariantViolation("wwg_below: left verdict disagrees with its transfer form");
    }
    return v;
  };

  switch (side) {
    case RelationSide::RIGHT:
      return wg_below(A * W, B * W, ctx);
    case RelationSide::LEFT:
      return left_side();
    case RelationSide::BOTH: {
      const RelationVerdict r = wg_below(A * W, B * W, ctx);
      const RelationVerdict l = left_side();
      RelationVerdict v;
      v.method = RelationMethod::DIRECT;
      v.left_residual = std::max(r.left_residual, l.left_residual);
      v.right_residual = std::max(r.right_residual, l.right_residual);
      v.holds = r.holds && l.holds;
      return v;
    }
  }
  throw InputError("wwg_below: unknown side");
}

RelationBlockReport relation_block_analysis(const ComplexMatrix& A, const ComplexMatrix& W,
                                            const ComplexMatrix& B, const NumericContext& ctx) {
  if (B.rows() != A.rows() || B.cols() != A.cols()) {
    throw ShapeMismatch("relation_block_analysis: matrices must have the same shape");
  }
  check_weighted_input(A, W, ctx);
  const CanonicalPair cp = canonical_pair(A, W, ctx);
  const auto blocks = cp_blocks_xy(cp, B);
  const ComplexMatrix& B1 = blocks[0];
  const ComplexMatrix& B2 = blocks[1];
  const ComplexMatrix& B4 = blocks[2];
  const ComplexMatrix& B3 = blocks[3];

  RelationBlockReport rep;
  rep.direct_right = wwg_below(A, W, B, ctx, RelationSide::RIGHT).holds;
  rep.direct_left = wwg_below(A, W, B, ctx, RelationSide::LEFT).holds;

  const double scale = pair_scale(A, B);
  const double tol = residual_tolerance(ctx);
  const Eigen::Index r = cp.core_rank();

  if (r == 0) {
    // no core part: every candidate is related on both sides
    rep.block_right = rep.block_left = true;
    return rep;
  }

  const ComplexMatrix inv_a1w1 = invert(cp.A1 * cp.W1, ctx);
  const ComplexMatrix inv_w1 = invert(cp.W1, ctx);
  const ComplexMatrix diff3 = cp.A3 - B3;

  {
    const ComplexMatrix cond =
        (cp.A2 - B2) * cp.W3 + inv_a1w1 * (cp.A1 * cp.W2 + cp.A2 * cp.W3) * diff3 * cp.W3;
    const double res = std::max({(B1 - cp.A1).norm(), B4.norm(), cond.norm()}) / scale;
    rep.block_right_residual = res;
    rep.block_right = res <= tol;
  }

  {
    const ComplexMatrix inv_w1a1w1 = invert(cp.W1 * cp.A1 * cp.W1, ctx);
    const ComplexMatrix b2_formula =
        cp.A2 + inv_w1 * cp.W2 * diff3 +
        inv_w1a1w1 * (cp.W1 * cp.A2 + cp.W2 * cp.A3) * cp.W3 * diff3;
    const double res = std::max({(cp.W3 * B4).norm(),
                                 (B1 - (cp.A1 - inv_w1 * cp.W2 * B4)).norm(),
                                 (B2 - b2_formula).norm()}) /
                       scale;
    rep.block_left_residual = res;
    rep.block_left = res <= tol;
  }
  return rep;
}

LemmaEquivReport lemma_equiv_suite(const ComplexMatrix& A, const ComplexMatrix& B,
                                   const NumericContext& ctx) {
  check_same_square(A, B, "lemma_equiv_suite");
  const ComplexMatrix X = weak_group(A, ctx);
  const ComplexMatrix C = core_ep(A, ctx);
  const ComplexMatrix Ad = drazin(A, ctx);

  LemmaEquivReport rep;
  rep.i1 = matrices_equal(A * X, B * X, ctx);
  rep.i2 = matrices_equal(C * A, B * C * C * A, ctx);
  rep.i3 = matrices_equal(C, B * C * C, ctx);
  rep.i4 = matrices_equal(Ad, B * C * Ad, ctx);
  rep.i5 = matrices_equal(A * Ad, B * Ad, ctx);
  rep.ii1 = matrices_equal(X * A, X * B, ctx);
  rep.ii2 = matrices_equal(C * A * A, C * A * B, ctx);
  return rep;
}

PreorderProbeReport preorder_probe(const std::vector<ProbeTriple>& triples,
                                   const NumericContext& ctx) {
  PreorderProbeReport rep;
  for (const auto& t : triples) {
    PreorderProbeEntry e;
    e.ab = wg_below(t.A, t.B, ctx).holds;
    e.bc = wg_below(t.B, t.C, ctx).holds;
    e.ac = wg_below(t.A, t.C, ctx).holds;
    e.transitivity_violated = e.ab && e.bc && !e.ac;
    rep.any_transitivity_violation = rep.any_transitivity_violation || e.transitivity_violated;
    rep.triples.push_back(e);
  }

  // antisymmetry witness: two distinct strictly upper triangular matrices
  // are mutually related because both weak group inverses vanish
  const Eigen::Index n = triples.empty() ? 3 : std::max<Eigen::Index>(2, triples[0].A.rows());
  ComplexMatrix N1 = ComplexMatrix::Zero(n, n);
  ComplexMatrix N2 = ComplexMatrix::Zero(n, n);
  N1(0, 1) = Complex(1.0, 0.0);
  N2(0, 1) = Complex(2.0, 0.0);
  const bool forward = wg_below(N1, N2, ctx).holds;
  const bool backward = wg_below(N2, N1, ctx).holds;
  rep.antisymmetry_violated = forward && backward && !matrices_equal(N1, N2, ctx);
  return rep;
}

}
