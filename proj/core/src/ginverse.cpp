#include "wginv/ginverse.hpp"

#include <algorithm>
#include <iterator>
#include <utility>

#include "wginv/errors.hpp"

namespace wginv {

ComplexMatrix core_ep(const ComplexMatrix& A, const NumericContext& ctx) {
  const IndexResult ir = index(A, ctx);
  const ComplexMatrix Ad = drazin(A, ctx);
  const SubspaceBasis stable = range_basis(matrix_power(A, ir.index), ir.stable_rank, ctx);
  const ComplexMatrix P = orthogonal_projector(stable);
  const ComplexMatrix X = Ad * P;
  if (!matrices_equal(A * X, P, ctx) || !matrices_equal(P * X, X, ctx)) {
    throw InvariantViolation("core_ep: projector identities fail");
  }
  return X;
}

ComplexMatrix weighted_core_ep(const ComplexMatrix& A, const ComplexMatrix& W,
                               const NumericContext& ctx) {
  check_weighted_input(A, W, ctx);
  const CanonicalPair cp = canonical_pair(A, W, ctx);
  const Eigen::Index r = cp.core_rank();
  ComplexMatrix X;
  if (r == 0) {
    X = ComplexMatrix::Zero(A.rows(), A.cols());
  } else {
    const Eigen::Index ny = cp.A3.rows();
    const Eigen::Index nx = cp.A3.cols();
    X = cp_assemble_xy(cp, invert(cp.W1 * cp.A1 * cp.W1, ctx), ComplexMatrix::Zero(r, nx),
                       ComplexMatrix::Zero(ny, r), ComplexMatrix::Zero(ny, nx));
  }
  const ComplexMatrix Adw = w_drazin(A, W, ctx);
  const ComplexMatrix P = orthogonal_projector(range_basis(W * Adw, ctx));
  const ComplexMatrix Pr = orthogonal_projector(range_basis(Adw, ctx));
  if (!matrices_equal(W * A * W * X, P, ctx) || !matrices_equal(Pr * X, X, ctx)) {
    throw InvariantViolation("weighted_core_ep: projector identities fail");
  }
  return X;
}

ComplexMatrix weak_group(const ComplexMatrix& A, const NumericContext& ctx) {
  if (A.rows() != A.cols()) throw ShapeMismatch("weak_group: matrix must be square");
  const ComplexMatrix C = core_ep(A, ctx);
  const ComplexMatrix X = C * C * A;
  if (!matrices_equal(A * X * X, X, ctx) || !matrices_equal(A * X, C * A, ctx)) {
    throw InvariantViolation("weak_group: defining system fails");
  }
  return X;
}

ComplexMatrix weighted_weak_group(const ComplexMatrix& A, const ComplexMatrix& W,
                                  const NumericContext& ctx) {
  check_weighted_input(A, W, ctx);
  const ComplexMatrix C = weighted_core_ep(A, W, ctx);
  const ComplexMatrix CW = C * W;
  const ComplexMatrix X = CW * CW * A;
  if (!matrices_equal(A * W * X * W * X, X, ctx) ||
      !matrices_equal(A * W * X, C * W * A, ctx)) {
    throw InvariantViolation("weighted_weak_group: defining system fails");
  }
  return X;
}

ComplexMatrix group_inverse(const ComplexMatrix& A, const NumericContext& ctx) {
  if (A.rows() != A.cols()) throw ShapeMismatch("group_inverse: matrix must be square");
  if (index(A, ctx).index > 1) throw IndexTooLarge("group_inverse: index exceeds 1");
  return drazin(A, ctx);
}

ComplexMatrix core_inverse(const ComplexMatrix& A, const NumericContext& ctx) {
  if (A.rows() != A.cols()) throw ShapeMismatch("core_inverse: matrix must be square");
  if (index(A, ctx).index > 1) throw IndexTooLarge("core_inverse: index exceeds 1");
  return drazin(A, ctx) * A * moore_penrose(A, ctx);
}

ComplexMatrix outer_inverse_prescribed(const ComplexMatrix& M, const SubspaceBasis& T,
                                       const SubspaceBasis& S, const NumericContext& ctx) {
  if (T.ambient_dim != M.cols() || S.ambient_dim != M.rows()) {
    throw ShapeMismatch("outer_inverse_prescribed: subspace ambient dimensions do not fit");
  }
  const ComplexMatrix C = T.frame;
  const ComplexMatrix D = complement_basis(S).frame.adjoint();
  if (D.rows() != C.cols()) {
    throw NotConsistent("outer_inverse_prescribed: dim of range differs from codim of null space");
  }
  const ComplexMatrix DMC = D * M * C;
  if (numerical_rank(DMC, ctx) < DMC.rows()) {
    throw NotConsistent("outer_inverse_prescribed: no outer inverse with the prescribed spaces");
  }
  return C * invert(DMC, ctx) * D;
}

namespace {

struct WeightedWork {
  ComplexMatrix AW, WA;
  ComplexMatrix dAW, dWA;     // Drazin inverses of the products
  ComplexMatrix Adw;          // weighted Drazin
  ComplexMatrix Awcep;        // weighted core-EP
  ComplexMatrix proj;         // projector onto R(W Adw) along N(Awcep W A)
  ComplexMatrix Pq;           // orthogonal projector onto R((AW)^d)
  ComplexMatrix WPq_pinv;
};

WeightedWork weighted_work(const ComplexMatrix& A, const ComplexMatrix& W,
                           const NumericContext& ctx) {
  WeightedWork w;
  w.AW = A * W;
  w.WA = W * A;
  w.dAW = drazin(w.AW, ctx);
  w.dWA = drazin(w.WA, ctx);
  w.Adw = w_drazin(A, W, ctx);
  w.Awcep = weighted_core_ep(A, W, ctx);
  w.proj = oblique_projector(range_basis(W * w.Adw, ctx), null_basis(w.Awcep * w.WA, ctx), ctx);
  w.Pq = orthogonal_projector(range_basis(w.dAW, ctx));
  w.WPq_pinv = moore_penrose(W * w.Pq, ctx);
  return w;
}

}  // namespace

RouteTable wwg_representations(const ComplexMatrix& A, const ComplexMatrix& W,
                               const NumericContext& ctx) {
  check_weighted_input(A, W, ctx);
  RouteTable table;
  std::string current = "setup";
  try {
    const WeightedWork w = weighted_work(A, W, ctx);

    current = "DEF";
    const ComplexMatrix CW = w.Awcep * W;
    table.entries.emplace("DEF", CW * CW * A);

    current = "GEOM";
    {
      const ComplexMatrix Q1 = range_basis(w.Adw, ctx).frame;
      const ComplexMatrix lift = moore_penrose(W * A * W * Q1, ctx);
      table.entries.emplace("GEOM", Q1 * lift * w.proj);
    }

    current = "REP_I";
    table.entries.emplace("REP_I", w.Awcep * w.proj);

    current = "REP_II";
    table.entries.emplace("REP_II", w.Adw * w.proj);

    current = "REP_III";
    {
      const ComplexMatrix G = w.WA * core_ep(w.WA, ctx) * w.WA;
      table.entries.emplace("REP_III", w.WPq_pinv * group_inverse(G, ctx));
    }

    current = "REP_IV";
    table.entries.emplace("REP_IV", core_ep(w.AW * w.AW, ctx) * w.AW * w.Awcep * w.WA);

    current = "REP_V";
    table.entries.emplace("REP_V", w.dAW * w.dAW * w.WPq_pinv * w.WA);

    current = "REP_VI";
    table.entries.emplace("REP_VI", w.WPq_pinv * core_ep(w.WA * w.WA, ctx) * w.WA);

    current = "REP_VII";
    {
      const ComplexMatrix H = matrix_power(w.AW, 3) * w.dAW;
      ComplexMatrix Hcore;
      try {
        Hcore = core_inverse(H, ctx);
      } catch (const IndexTooLarge&) {
        throw DecompositionFailure("REP_VII: the cubed product is not numerically group invertible");
      }
      table.entries.emplace("REP_VII", Hcore * w.AW * w.Awcep * w.WA);
    }

    current = "PRODUCT";
    table.entries.emplace("PRODUCT", weak_group(w.AW, ctx) * A * weak_group(w.WA, ctx));

    current = "TRANSFER";
    {
      const ComplexMatrix wgWA = weak_group(w.WA, ctx);
      table.entries.emplace("TRANSFER", A * wgWA * wgWA);
    }
  } catch (const InputError& e) {
    throw InputError("route " + current + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError("route " + current + ": " + e.what());
  }

  table.reference = table.entries.at("DEF");
  double worst = 0.0;
  for (auto it = table.entries.begin(); it != table.entries.end(); ++it) {
    if (it->second.rows() != table.reference.rows() ||
        it->second.cols() != table.reference.cols()) {
      throw InvariantViolation("wwg_representations: route shapes disagree");
    }
    for (auto jt = std::next(it); jt != table.entries.end(); ++jt) {
      worst = std::max(worst, relative_residual(it->second, jt->second));
    }
  }
  table.max_pairwise_residual = worst;
  return table;
}

double CharacterizationResult::max_residual() const {
  double worst = 0.0;
  for (const auto& [name, value] : residuals) worst = std::max(worst, value);
  return worst;
}

CharacterizationResult characterization_check(const ComplexMatrix& A, const ComplexMatrix& W,
                                              const ComplexMatrix& B, const NumericContext& ctx,
                                              CharVariant variant, CharIvForm iv_form) {
  check_weighted_input(A, W, ctx);
  if (B.rows() != A.rows() || B.cols() != A.cols()) {
    throw ShapeMismatch("characterization_check: candidate shape differs from the operator");
  }
  CharacterizationResult out;
  out.variant = variant;
  const ComplexMatrix Awcep = weighted_core_ep(A, W, ctx);
  const ComplexMatrix rhs = Awcep * W * A;

  switch (variant) {
    case CharVariant::SYSTEM:
      out.residuals["first"] = relative_residual(A * W * B * W * B, B);
      out.residuals["second"] = relative_residual(A * W * B, rhs);
      break;
    case CharVariant::GEOMETRIC: {
      const ComplexMatrix Adw = w_drazin(A, W, ctx);
      const ComplexMatrix P =
          oblique_projector(range_basis(W * Adw, ctx), null_basis(rhs, ctx), ctx);
      const ComplexMatrix Pr = orthogonal_projector(range_basis(Adw, ctx));
      out.residuals["projector_equation"] = relative_residual(W * A * W * B, P);
      out.residuals["range_containment"] = (B - Pr * B).norm() / (1.0 + B.norm());
      break;
    }
    case CharVariant::CHAR_II:
      out.residuals["first"] = relative_residual(Awcep * W * A * W * B, B);
      out.residuals["second"] = relative_residual(A * W * B, rhs);
      break;
    case CharVariant::CHAR_III: {
      const ComplexMatrix Awcep_W_Awcep = Awcep * W * Awcep;
      out.residuals["first"] = relative_residual(B * W * A * W * B, B);
      out.residuals["second"] = relative_residual(A * W * B, rhs);
      out.residuals["third"] = relative_residual(B * W * Awcep, Awcep_W_Awcep);
      break;
    }
    case CharVariant::CHAR_IV: {
      out.residuals["first"] = relative_residual(B * W * A * W * B, B);
      out.residuals["second"] = relative_residual(A * W * B, rhs);
      if (iv_form == CharIvForm::RESOLVENT) {
        const ComplexMatrix Adw = w_drazin(A, W, ctx);
        out.residuals["third"] = relative_residual(B * W * Adw, Adw * W * Adw);
      } else {
        const ComplexMatrix WA = W * A;
        const int k = index(WA, ctx).index;
        out.residuals["third"] =
            relative_residual(B * matrix_power(WA, k + 1), matrix_power(WA, k));
      }
      break;
    }
  }
  out.holds = out.max_residual() <= residual_tolerance(ctx);
  return out;
}

CommutationReport commutation_analysis(const ComplexMatrix& A, const ComplexMatrix& W,
                                       const NumericContext& ctx) {
  check_weighted_input(A, W, ctx);
  const CanonicalPair cp = canonical_pair(A, W, ctx);
  const ComplexMatrix AW = A * W;
  const ComplexMatrix WA = W * A;
  const ComplexMatrix X = weighted_weak_group(A, W, ctx);
  const ComplexMatrix Adw = w_drazin(A, W, ctx);
  const ComplexMatrix wgWA = weak_group(WA, ctx);
  const ComplexMatrix wgAW = weak_group(AW, ctx);

  auto vanish = [](const ComplexMatrix& E) { return E.norm() / (1.0 + E.norm()); };

  CommutationReport rep;
  rep.commutes_residual = relative_residual(AW * X, X * WA);
  rep.block_condition_residual = vanish((cp.W1 * cp.A2 + cp.W2 * cp.A3) * cp.W3 * cp.A3);
  rep.square_identity_residual = relative_residual(wgWA * wgWA, weak_group(WA * WA, ctx));
  rep.aw_square_identity_residual = relative_residual(wgAW * wgAW, weak_group(AW * AW, ctx));
  rep.aw_block_condition_residual = vanish((cp.A1 * cp.W2 + cp.A2 * cp.W3) * cp.A3 * cp.W3);
  rep.equals_wdrazin_residual = relative_residual(X, Adw);

  const double tol = residual_tolerance(ctx);
  rep.commutes = rep.commutes_residual <= tol;
  rep.block_condition = rep.block_condition_residual <= tol;
  rep.square_identity = rep.square_identity_residual <= tol;
  rep.aw_square_identity = rep.aw_square_identity_residual <= tol;
  rep.aw_block_condition = rep.aw_block_condition_residual <= tol;
  rep.equals_wdrazin = rep.equals_wdrazin_residual <= tol;

  if (rep.commutes != rep.block_condition || rep.commutes != rep.square_identity) {
    throw InvariantViolation("commutation_analysis: the three-way equivalence chain broke");
  }
  if (rep.aw_square_identity != rep.aw_block_condition) {
    throw InvariantViolation("commutation_analysis: the two-way equivalence chain broke");
  }
  if (rep.commutes && !rep.equals_wdrazin) {
    throw InvariantViolation("commutation_analysis: commuting pair with distinct weighted Drazin");
  }
  return rep;
}

}
