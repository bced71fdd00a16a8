// Command line front end: compute generalized inverses, verify the
// identities the library promises, decide relations, dump canonical
// blocks, and run the conformance suite.
//
// Exit codes: 0 success / statement holds, 1 verdict false or check
// failed, 2 usage or input error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wginv/wginv.hpp"

namespace {

using wginv::ComplexMatrix;
using wginv::NumericContext;

struct LoadedMatrix {
  ComplexMatrix M;
  std::string path;
  std::string digest;
};

LoadedMatrix load_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wginv::InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  LoadedMatrix out;
  out.M = wginv::parse_matrix(text, wginv::detect_format(path, text)).matrix;
  out.path = path;
  out.digest = wginv::fnv1a_hex(text);
  return out;
}

nlohmann::ordered_json input_entry(const LoadedMatrix& lm) {
  nlohmann::ordered_json e;
  e["path"] = lm.path;
  e["digest"] = lm.digest;
  e["rows"] = lm.M.rows();
  e["cols"] = lm.M.cols();
  return e;
}

nlohmann::ordered_json report_header(const std::string& command, const NumericContext& ctx) {
  nlohmann::ordered_json doc;
  doc["version"] = wginv::kVersion;
  doc["command"] = command;
  nlohmann::ordered_json tol;
  tol["rank_rtol"] = ctx.rank_rtol;
  tol["eq_rtol"] = ctx.eq_rtol;
  tol["eq_atol"] = ctx.eq_atol;
  doc["tolerance"] = std::move(tol);
  return doc;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw wginv::InputError("cannot write file: " + out_path);
  out << text;
}

void emit_json(const nlohmann::ordered_json& doc, const std::string& out_path) {
  emit(doc.dump(2) + "\n", out_path);
}

ComplexMatrix identity_like(const ComplexMatrix& A) {
  if (A.rows() != A.cols()) {
    throw wginv::InputError("this operation needs a square matrix; got " +
                            std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
  }
  return ComplexMatrix::Identity(A.rows(), A.cols());
}

double vanish_residual(const ComplexMatrix& E) { return E.norm() / (1.0 + E.norm()); }

// ---------------------------------------------------------------- compute

int run_compute(const std::string& kind, const LoadedMatrix& A, const LoadedMatrix* W,
                const NumericContext& ctx, const std::string& format,
                const std::string& out_path) {
  static const std::set<std::string> weighted = {"wdrazin", "wcoreep", "wwg", "outer"};
  static const std::set<std::string> unweighted = {"mp",     "group", "core",
                                                   "drazin", "coreep", "wg"};
  if (weighted.count(kind) == 0 && unweighted.count(kind) == 0) {
    throw wginv::InputError("unknown compute kind: " + kind);
  }
  if (weighted.count(kind) > 0 && W == nullptr) {
    throw wginv::InputError("compute " + kind + " needs a weight (-W)");
  }
  if (unweighted.count(kind) > 0 && W != nullptr) {
    throw wginv::InputError("compute " + kind + " takes no weight; drop -W");
  }

  ComplexMatrix X;
  if (kind == "mp") {
    X = wginv::moore_penrose(A.M, ctx);
  } else if (kind == "group") {
    X = wginv::group_inverse(A.M, ctx);
  } else if (kind == "core") {
    X = wginv::core_inverse(A.M, ctx);
  } else if (kind == "drazin") {
    X = wginv::drazin(A.M, ctx);
  } else if (kind == "coreep") {
    X = wginv::core_ep(A.M, ctx);
  } else if (kind == "wg") {
    X = wginv::weak_group(A.M, ctx);
  } else if (kind == "wdrazin") {
    X = wginv::w_drazin(A.M, W->M, ctx);
  } else if (kind == "wcoreep") {
    X = wginv::weighted_core_ep(A.M, W->M, ctx);
  } else if (kind == "wwg") {
    X = wginv::weighted_weak_group(A.M, W->M, ctx);
  } else {  // outer: the prescribed range/null realization of wwg
    const ComplexMatrix Adw = wginv::w_drazin(A.M, W->M, ctx);
    const ComplexMatrix Awcep = wginv::weighted_core_ep(A.M, W->M, ctx);
    X = wginv::outer_inverse_prescribed(W->M * A.M * W->M, wginv::range_basis(Adw, ctx),
                                        wginv::null_basis(Awcep * W->M * A.M, ctx), ctx);
  }

  if (format == "mm") {
    emit(wginv::serialize_matrix(X, wginv::MatrixFormat::MATRIX_MARKET), out_path);
    return 0;
  }
  nlohmann::ordered_json doc = report_header("compute", ctx);
  doc["kind"] = kind;
  nlohmann::ordered_json inputs;
  inputs["A"] = input_entry(A);
  if (W != nullptr) inputs["W"] = input_entry(*W);
  doc["inputs"] = std::move(inputs);
  doc["result"] = wginv::matrix_to_json(X);
  emit_json(doc, out_path);
  return 0;
}

// ----------------------------------------------------------------- routes

int run_routes(const LoadedMatrix& A, const LoadedMatrix& W, const NumericContext& ctx,
               const std::string& out_path) {
  const wginv::RouteTable table = wginv::wwg_representations(A.M, W.M, ctx);
  const bool holds = table.max_pairwise_residual <= wginv::residual_tolerance(ctx);

  nlohmann::ordered_json doc = report_header("routes", ctx);
  nlohmann::ordered_json inputs;
  inputs["A"] = input_entry(A);
  inputs["W"] = input_entry(W);
  doc["inputs"] = std::move(inputs);
  doc["holds"] = holds;
  doc["max_pairwise_residual"] = table.max_pairwise_residual;
  nlohmann::ordered_json routes;
  for (const auto& [name, M] : table.entries) {
    routes[name] = wginv::relative_residual(M, table.reference);
  }
  doc["residual_vs_reference"] = std::move(routes);
  doc["result"] = wginv::matrix_to_json(table.reference);
  emit_json(doc, out_path);
  return holds ? 0 : 1;
}

// --------------------------------------------------------------- relation

int run_relation(const std::string& which, const LoadedMatrix& A, const LoadedMatrix& B,
                 const LoadedMatrix* W, const NumericContext& ctx,
                 const std::string& out_path) {
  wginv::RelationVerdict v;
  if (which == "wg") {
    if (W != nullptr) throw wginv::InputError("relation wg takes no weight; drop -W");
    v = wginv::wg_below(A.M, B.M, ctx);
  } else {
    if (W == nullptr) throw wginv::InputError("relation " + which + " needs a weight (-W)");
    wginv::RelationSide side;
    if (which == "wwg-r") {
      side = wginv::RelationSide::RIGHT;
    } else if (which == "wwg-l") {
      side = wginv::RelationSide::LEFT;
    } else if (which == "wwg") {
      side = wginv::RelationSide::BOTH;
    } else {
      throw wginv::InputError("unknown relation: " + which);
    }
    v = wginv::wwg_below(A.M, W->M, B.M, ctx, side);
  }

  nlohmann::ordered_json doc = report_header("relation", ctx);
  doc["relation"] = which;
  nlohmann::ordered_json inputs;
  inputs["A"] = input_entry(A);
  if (W != nullptr) inputs["W"] = input_entry(*W);
  inputs["B"] = input_entry(B);
  doc["inputs"] = std::move(inputs);
  doc["holds"] = v.holds;
  nlohmann::ordered_json res;
  res["first_equation"] = v.left_residual;
  res["second_equation"] = v.right_residual;
  doc["residuals"] = std::move(res);
  emit_json(doc, out_path);
  return v.holds ? 0 : 1;
}

// ------------------------------------------------------------------ canon

int run_canon(const LoadedMatrix& A, const LoadedMatrix& W, const NumericContext& ctx,
              const std::string& out_path) {
  const wginv::CanonicalPair cp = wginv::canonical_pair(A.M, W.M, ctx);

  nlohmann::ordered_json doc = report_header("canon", ctx);
  nlohmann::ordered_json inputs;
  inputs["A"] = input_entry(A);
  inputs["W"] = input_entry(W);
  doc["inputs"] = std::move(inputs);
  doc["core_rank"] = cp.core_rank();
  doc["index_aw"] = cp.index_aw;
  doc["index_wa"] = cp.index_wa;
  nlohmann::ordered_json blocks;
  blocks["A1"] = wginv::matrix_to_json(cp.A1);
  blocks["A2"] = wginv::matrix_to_json(cp.A2);
  blocks["A3"] = wginv::matrix_to_json(cp.A3);
  blocks["W1"] = wginv::matrix_to_json(cp.W1);
  blocks["W2"] = wginv::matrix_to_json(cp.W2);
  blocks["W3"] = wginv::matrix_to_json(cp.W3);
  blocks["T"] = wginv::matrix_to_json(cp.T);
  blocks["U"] = wginv::matrix_to_json(cp.U);
  doc["blocks"] = std::move(blocks);
  nlohmann::ordered_json frames;
  frames["p1"] = wginv::matrix_to_json(cp.p1.frame);
  frames["p2"] = wginv::matrix_to_json(cp.p2.frame);
  frames["q1"] = wginv::matrix_to_json(cp.q1.frame);
  frames["q2"] = wginv::matrix_to_json(cp.q2.frame);
  doc["frames"] = std::move(frames);
  emit_json(doc, out_path);
  return 0;
}

// ----------------------------------------------------------------- verify

struct VerifyOutcome {
  bool holds = true;
  nlohmann::ordered_json body;

  void record(const std::string& key, double residual, double tol) {
    body[key] = residual;
    if (residual > tol) holds = false;
  }
  void record_bool(const std::string& key, bool value) { body[key] = value; }
  void require(const std::string& key, bool ok) {
    body[key] = ok;
    if (!ok) holds = false;
  }
};

VerifyOutcome verify_lemma_blocks(const ComplexMatrix& A, const ComplexMatrix& W,
                                  const NumericContext& ctx) {
  VerifyOutcome out;
  const double tol = wginv::residual_tolerance(ctx);
  const wginv::CanonicalPair cp = wginv::canonical_pair(A, W, ctx);
  const Eigen::Index ny = cp.A3.rows();
  const Eigen::Index nx = cp.A3.cols();
  const ComplexMatrix Zyr = ComplexMatrix::Zero(ny, cp.core_rank());
  const ComplexMatrix Zxr = ComplexMatrix::Zero(nx, cp.core_rank());
  out.record("rebuild_A",
             wginv::relative_residual(wginv::cp_assemble_xy(cp, cp.A1, cp.A2, Zyr, cp.A3), A),
             tol);
  out.record("rebuild_W",
             wginv::relative_residual(wginv::cp_assemble_yx(cp, cp.W1, cp.W2, Zxr, cp.W3), W),
             tol);
  const ComplexMatrix N1 = cp.A3 * cp.W3;
  const ComplexMatrix N2 = cp.W3 * cp.A3;
  out.record("nilpotent_a3w3",
             ny > 0 ? vanish_residual(wginv::matrix_power(N1, static_cast<int>(ny))) : 0.0, tol);
  out.record("nilpotent_w3a3",
             nx > 0 ? vanish_residual(wginv::matrix_power(N2, static_cast<int>(nx))) : 0.0, tol);
  const ComplexMatrix I1 = wginv::invert(cp.A1 * cp.W1, ctx);
  out.record("core_invertible", wginv::relative_residual(cp.A1 * cp.W1 * I1,
                                                         ComplexMatrix::Identity(
                                                             cp.core_rank(), cp.core_rank())),
             tol);
  return out;
}

VerifyOutcome verify_characterization(const ComplexMatrix& A, const ComplexMatrix& W,
                                      const NumericContext& ctx, wginv::CharVariant variant) {
  VerifyOutcome out;
  const ComplexMatrix X = wginv::weighted_weak_group(A, W, ctx);
  const wginv::CharacterizationResult cr =
      wginv::characterization_check(A, W, X, ctx, variant);
  for (const auto& [key, res] : cr.residuals) out.body[key] = res;
  out.require("holds_on_wwg", cr.holds);
  return out;
}

VerifyOutcome verify_all_characterizations(const ComplexMatrix& A, const ComplexMatrix& W,
                                           const NumericContext& ctx) {
  VerifyOutcome out;
  const ComplexMatrix X = wginv::weighted_weak_group(A, W, ctx);
  const std::pair<std::string, wginv::CharVariant> variants[] = {
      {"system", wginv::CharVariant::SYSTEM},
      {"geometric", wginv::CharVariant::GEOMETRIC},
      {"char_ii", wginv::CharVariant::CHAR_II},
      {"char_iii", wginv::CharVariant::CHAR_III},
      {"char_iv", wginv::CharVariant::CHAR_IV},
  };
  for (const auto& [name, variant] : variants) {
    const wginv::CharacterizationResult cr =
        wginv::characterization_check(A, W, X, ctx, variant);
    for (const auto& [key, res] : cr.residuals) out.body[name + "." + key] = res;
    out.require(name + ".holds", cr.holds);
  }
  const wginv::CharacterizationResult power = wginv::characterization_check(
      A, W, X, ctx, wginv::CharVariant::CHAR_IV, wginv::CharIvForm::POWER);
  for (const auto& [key, res] : power.residuals) out.body["char_iv_power." + key] = res;
  out.require("char_iv_power.holds", power.holds);
  return out;
}

VerifyOutcome verify_projectors(const ComplexMatrix& A, const ComplexMatrix& W,
                                const NumericContext& ctx) {
  VerifyOutcome out;
  const double tol = wginv::residual_tolerance(ctx);
  const ComplexMatrix X = wginv::weighted_weak_group(A, W, ctx);
  const ComplexMatrix Adw = wginv::w_drazin(A, W, ctx);
  const ComplexMatrix Awcep = wginv::weighted_core_ep(A, W, ctx);
  const ComplexMatrix AW = A * W;
  const ComplexMatrix WA = W * A;

  struct Row {
    const char* name;
    ComplexMatrix P;
    ComplexMatrix range_of;
    ComplexMatrix null_of;
  };
  const Row rows[] = {
      {"awxw", A * W * X * W, Adw, Awcep * WA * W},
      {"wawx", W * A * W * X, W * Adw, Awcep * WA},
      {"xwaw", X * W * A * W, Adw, Awcep * W * AW * AW},
      {"wxwa", W * X * W * A, W * Adw, Awcep * WA * WA},
  };
  for (const Row& row : rows) {
    const std::string base(row.name);
    out.record(base + ".idempotent", wginv::relative_residual(row.P * row.P, row.P), tol);
    const wginv::SubspaceBasis R = wginv::range_basis(row.range_of, ctx);
    const wginv::SubspaceBasis N = wginv::null_basis(row.null_of, ctx);
    double action = 0.0;
    if (R.dim() > 0) {
      action = std::max(action, (row.P * R.frame - R.frame).norm() / (1.0 + R.frame.norm()));
    }
    if (N.dim() > 0) action = std::max(action, (row.P * N.frame).norm() / (1.0 + N.frame.norm()));
    out.record(base + ".action", action, tol);
  }
  const ComplexMatrix Xo =
      wginv::outer_inverse_prescribed(W * A * W, wginv::range_basis(Adw, ctx),
                                      wginv::null_basis(Awcep * W * A, ctx), ctx);
  out.record("outer_inverse", wginv::relative_residual(Xo, X), tol);
  out.record("outer_law", wginv::relative_residual(X * (W * A * W) * X, X), tol);
  return out;
}

VerifyOutcome verify_representations(const ComplexMatrix& A, const ComplexMatrix& W,
                                     const NumericContext& ctx) {
  VerifyOutcome out;
  const double tol = wginv::residual_tolerance(ctx);
  const wginv::RouteTable table = wginv::wwg_representations(A, W, ctx);
  for (const auto& [name, M] : table.entries) {
    out.body[name] = wginv::relative_residual(M, table.reference);
  }
  out.record("max_pairwise", table.max_pairwise_residual, tol);
  return out;
}

VerifyOutcome verify_transfer(const ComplexMatrix& A, const ComplexMatrix& W,
                              const NumericContext& ctx) {
  VerifyOutcome out;
  const double tol = wginv::residual_tolerance(ctx);
  const ComplexMatrix X = wginv::weighted_weak_group(A, W, ctx);
  const ComplexMatrix WA = W * A;
  const ComplexMatrix AW = A * W;
  const ComplexMatrix wgWA = wginv::weak_group(WA, ctx);
  const ComplexMatrix wgAW = wginv::weak_group(AW, ctx);
  out.record("wx_equals_wg_wa", wginv::relative_residual(W * X, wgWA), tol);
  out.record("x_from_wg_wa", wginv::relative_residual(X, A * wgWA * wgWA), tol);

  // the two conditional identities hold exactly when their block products
  // vanish; verified as biconditionals
  const wginv::CanonicalPair cp = wginv::canonical_pair(A, W, ctx);
  const bool cond1 = vanish_residual(cp.W2 * cp.A3 * cp.W3) <= tol;
  const bool cond2 = vanish_residual(cp.A2 * cp.W3 * cp.A3) <= tol;
  const double res1 = wginv::relative_residual(wgAW, X * W);
  const double res2 = wginv::relative_residual(X, wgAW * wgAW * A);
  out.record_bool("w2a3w3_vanishes", cond1);
  out.body["xw_vs_wg_aw"] = res1;
  out.require("conditional_xw", cond1 == (res1 <= tol));
  out.record_bool("a2w3a3_vanishes", cond2);
  out.body["x_vs_wg_aw_sq"] = res2;
  out.require("conditional_x", cond2 == (res2 <= tol));
  return out;
}

VerifyOutcome verify_product(const ComplexMatrix& A, const ComplexMatrix& W,
                             const NumericContext& ctx) {
  VerifyOutcome out;
  const double tol = wginv::residual_tolerance(ctx);
  const ComplexMatrix X = wginv::weighted_weak_group(A, W, ctx);
  const ComplexMatrix P =
      wginv::weak_group(A * W, ctx) * A * wginv::weak_group(W * A, ctx);
  out.record("product_formula", wginv::relative_residual(X, P), tol);
  return out;
}

VerifyOutcome verify_commutation(const ComplexMatrix& A, const ComplexMatrix& W,
                                 const NumericContext& ctx, bool aw_side) {
  VerifyOutcome out;
  const wginv::CommutationReport cr = wginv::commutation_analysis(A, W, ctx);
  if (aw_side) {
    out.record_bool("aw_square_identity", cr.aw_square_identity);
    out.body["aw_square_identity_residual"] = cr.aw_square_identity_residual;
    out.record_bool("aw_block_condition", cr.aw_block_condition);
    out.body["aw_block_condition_residual"] = cr.aw_block_condition_residual;
    out.require("chain_consistent", cr.aw_square_identity == cr.aw_block_condition);
  } else {
    out.record_bool("commutes", cr.commutes);
    out.body["commutes_residual"] = cr.commutes_residual;
    out.record_bool("block_condition", cr.block_condition);
    out.body["block_condition_residual"] = cr.block_condition_residual;
    out.record_bool("square_identity", cr.square_identity);
    out.body["square_identity_residual"] = cr.square_identity_residual;
    out.record_bool("equals_wdrazin", cr.equals_wdrazin);
    out.body["equals_wdrazin_residual"] = cr.equals_wdrazin_residual;
    out.require("chain_consistent", cr.commutes == cr.block_condition &&
                                        cr.block_condition == cr.square_identity);
    out.require("commutes_implies_wdrazin", !cr.commutes || cr.equals_wdrazin);
  }
  return out;
}

VerifyOutcome verify_unweighted_system(const ComplexMatrix& A, const NumericContext& ctx) {
  VerifyOutcome out;
  const double tol = wginv::residual_tolerance(ctx);
  const ComplexMatrix I = ComplexMatrix::Identity(A.rows(), A.cols());
  const ComplexMatrix X = wginv::weak_group(A, ctx);
  out.record("first", wginv::relative_residual(A * X * X, X), tol);
  out.record("second", wginv::relative_residual(A * X, wginv::core_ep(A, ctx) * A), tol);
  out.record("weighted_reduction",
             wginv::relative_residual(wginv::weighted_weak_group(A, I, ctx), X), tol);
  return out;
}

VerifyOutcome verify_unweighted_routes(const ComplexMatrix& A, const NumericContext& ctx) {
  VerifyOutcome out;
  const double tol = wginv::residual_tolerance(ctx);
  const ComplexMatrix I = ComplexMatrix::Identity(A.rows(), A.cols());
  const wginv::RouteTable table = wginv::wwg_representations(A, I, ctx);
  for (const auto& [name, M] : table.entries) {
    out.body[name] = wginv::relative_residual(M, table.reference);
  }
  out.record("max_pairwise", table.max_pairwise_residual, tol);
  out.record("matches_weak_group",
             wginv::relative_residual(table.reference, wginv::weak_group(A, ctx)), tol);
  return out;
}

VerifyOutcome verify_unweighted_commutation(const ComplexMatrix& A, const NumericContext& ctx) {
  VerifyOutcome out;
  const double tol = wginv::residual_tolerance(ctx);
  const ComplexMatrix I = ComplexMatrix::Identity(A.rows(), A.cols());
  const wginv::CommutationReport cr = wginv::commutation_analysis(A, I, ctx);
  out.record_bool("commutes", cr.commutes);
  out.body["commutes_residual"] = cr.commutes_residual;
  out.record_bool("block_condition", cr.block_condition);
  out.record_bool("square_identity", cr.square_identity);
  out.require("chain_consistent",
              cr.commutes == cr.block_condition && cr.block_condition == cr.square_identity);
  // the fourth equivalent condition is specific to the unweighted case
  const ComplexMatrix X = wginv::weak_group(A, ctx);
  const double res4 = wginv::relative_residual(X, X * X * A);
  out.body["projector_form_residual"] = res4;
  out.require("projector_form", cr.commutes == (res4 <= tol));
  return out;
}

VerifyOutcome verify_lemma_relation_equiv(const ComplexMatrix& A, const ComplexMatrix& B,
                                          const NumericContext& ctx) {
  VerifyOutcome out;
  const wginv::LemmaEquivReport r = wginv::lemma_equiv_suite(A, B, ctx);
  out.record_bool("i1", r.i1);
  out.record_bool("i2", r.i2);
  out.record_bool("i3", r.i3);
  out.record_bool("i4", r.i4);
  out.record_bool("i5", r.i5);
  out.record_bool("ii1", r.ii1);
  out.record_bool("ii2", r.ii2);
  out.require("part_i_consistent", r.part_i_consistent());
  out.require("part_ii_consistent", r.part_ii_consistent());
  return out;
}

VerifyOutcome verify_relation_block(const ComplexMatrix& A, const ComplexMatrix& W,
                                    const ComplexMatrix& B, const NumericContext& ctx,
                                    wginv::RelationSide side) {
  VerifyOutcome out;
  const wginv::RelationBlockReport r = wginv::relation_block_analysis(A, W, B, ctx);
  if (side != wginv::RelationSide::LEFT) {
    out.record_bool("direct_right", r.direct_right);
    out.record_bool("block_right", r.block_right);
    out.body["block_right_residual"] = r.block_right_residual;
    out.require("right_agreement", r.direct_right == r.block_right);
  }
  if (side != wginv::RelationSide::RIGHT) {
    out.record_bool("direct_left", r.direct_left);
    out.record_bool("block_left", r.block_left);
    out.body["block_left_residual"] = r.block_left_residual;
    out.require("left_agreement", r.direct_left == r.block_left);
  }
  const wginv::RelationVerdict v = wginv::wwg_below(A, W, B, ctx, side);
  out.record_bool("relation_holds", v.holds);
  out.body["first_equation_residual"] = v.left_residual;
  out.body["second_equation_residual"] = v.right_residual;
  return out;
}

VerifyOutcome verify_unweighted_block(const ComplexMatrix& A, const ComplexMatrix& B,
                                      const NumericContext& ctx) {
  VerifyOutcome out;
  const ComplexMatrix I = ComplexMatrix::Identity(A.rows(), A.cols());
  const wginv::RelationBlockReport r = wginv::relation_block_analysis(A, I, B, ctx);
  const wginv::RelationVerdict direct = wginv::wg_below(A, B, ctx);
  out.record_bool("relation_holds", direct.holds);
  out.body["first_equation_residual"] = direct.left_residual;
  out.body["second_equation_residual"] = direct.right_residual;
  out.record_bool("block_verdict", r.block_right);
  out.body["block_residual"] = r.block_right_residual;
  out.require("agreement", direct.holds == r.block_right && r.block_right == r.block_left &&
                               r.direct_right == direct.holds &&
                               r.direct_left == direct.holds);
  return out;
}

int run_verify(const std::string& id, const LoadedMatrix& A, const LoadedMatrix* W,
               const LoadedMatrix* B, const NumericContext& ctx,
               const std::string& out_path) {
  static const std::set<std::string> weighted_ids = {
      "lemma-blocks",        "thm-defining-system", "thm-geometric",
      "lemma-projectors",    "thm-characterizations", "thm-representations",
      "thm-transfer",        "thm-product",         "thm-commutation",
      "thm-aw-commutation"};
  static const std::set<std::string> weighted_rel_ids = {"rel-right-block", "rel-left-block",
                                                         "cor-both-block"};
  static const std::set<std::string> unweighted_ids = {
      "cor-unweighted-system", "cor-unweighted-routes", "cor-unweighted-commutation"};
  static const std::set<std::string> unweighted_rel_ids = {"lemma-relation-equiv",
                                                           "cor-unweighted-block"};

  const bool needs_w = weighted_ids.count(id) > 0 || weighted_rel_ids.count(id) > 0;
  const bool needs_b = weighted_rel_ids.count(id) > 0 || unweighted_rel_ids.count(id) > 0;
  const bool known = needs_w || unweighted_ids.count(id) > 0 || needs_b;
  if (!known) throw wginv::InputError("unknown theorem id: " + id);
  if (needs_w && W == nullptr) throw wginv::InputError("verify " + id + " needs a weight (-W)");
  if (!needs_w && W != nullptr) {
    throw wginv::InputError("verify " + id + " takes no weight; drop -W");
  }
  if (needs_b && B == nullptr) throw wginv::InputError("verify " + id + " needs a partner (-B)");
  if (!needs_b && B != nullptr) {
    throw wginv::InputError("verify " + id + " takes no partner; drop -B");
  }
  if (!needs_w) identity_like(A.M);  // unweighted statements need a square A

  VerifyOutcome out;
  if (id == "lemma-blocks") {
    out = verify_lemma_blocks(A.M, W->M, ctx);
  } else if (id == "thm-defining-system") {
    out = verify_characterization(A.M, W->M, ctx, wginv::CharVariant::SYSTEM);
  } else if (id == "thm-geometric") {
    out = verify_characterization(A.M, W->M, ctx, wginv::CharVariant::GEOMETRIC);
  } else if (id == "lemma-projectors") {
    out = verify_projectors(A.M, W->M, ctx);
  } else if (id == "thm-characterizations") {
    out = verify_all_characterizations(A.M, W->M, ctx);
  } else if (id == "thm-representations") {
    out = verify_representations(A.M, W->M, ctx);
  } else if (id == "thm-transfer") {
    out = verify_transfer(A.M, W->M, ctx);
  } else if (id == "thm-product") {
    out = verify_product(A.M, W->M, ctx);
  } else if (id == "thm-commutation") {
    out = verify_commutation(A.M, W->M, ctx, false);
  } else if (id == "thm-aw-commutation") {
    out = verify_commutation(A.M, W->M, ctx, true);
  } else if (id == "cor-unweighted-system") {
    out = verify_unweighted_system(A.M, ctx);
  } else if (id == "cor-unweighted-routes") {
    out = verify_unweighted_routes(A.M, ctx);
  } else if (id == "cor-unweighted-commutation") {
    out = verify_unweighted_commutation(A.M, ctx);
  } else if (id == "lemma-relation-equiv") {
    out = verify_lemma_relation_equiv(A.M, B->M, ctx);
  } else if (id == "rel-right-block") {
    out = verify_relation_block(A.M, W->M, B->M, ctx, wginv::RelationSide::RIGHT);
  } else if (id == "rel-left-block") {
    out = verify_relation_block(A.M, W->M, B->M, ctx, wginv::RelationSide::LEFT);
  } else if (id == "cor-both-block") {
    out = verify_relation_block(A.M, W->M, B->M, ctx, wginv::RelationSide::BOTH);
  } else {  // cor-unweighted-block
    out = verify_unweighted_block(A.M, B->M, ctx);
  }

  nlohmann::ordered_json doc = report_header("verify", ctx);
  doc["theorem"] = id;
  nlohmann::ordered_json inputs;
  inputs["A"] = input_entry(A);
  if (W != nullptr) inputs["W"] = input_entry(*W);
  if (B != nullptr) inputs["B"] = input_entry(*B);
  doc["inputs"] = std::move(inputs);
  doc["holds"] = out.holds;
  doc["checks"] = std::move(out.body);
  emit_json(doc, out_path);
  return out.holds ? 0 : 1;
}

// ---------------------------------------------------------------- conform

wginv::PlantFlag plant_from_name(const std::string& name) {
  static const std::map<std::string, wginv::PlantFlag> table = {
      {"A2_ZERO", wginv::PlantFlag::A2_ZERO},
      {"W2_ZERO", wginv::PlantFlag::W2_ZERO},
      {"A3W3_ZERO", wginv::PlantFlag::A3W3_ZERO},
      {"COMMUTING_CONDITION", wginv::PlantFlag::COMMUTING_CONDITION},
      {"AW_CONDITION", wginv::PlantFlag::AW_CONDITION},
      {"W2A3W3_ZERO", wginv::PlantFlag::W2A3W3_ZERO},
      {"A2W3A3_ZERO", wginv::PlantFlag::A2W3A3_ZERO},
      {"RELATION_POSITIVE", wginv::PlantFlag::RELATION_POSITIVE},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw wginv::InputError("unknown plant flag: " + name);
  return it->second;
}

std::vector<wginv::GeneratorSpec> default_specs() {
  using PF = wginv::PlantFlag;
  std::vector<wginv::GeneratorSpec> specs(8);
  specs[0] = {3, 2, 2, 1.0, {}};
  specs[1] = {2, 3, 2, 1.0, {PF::COMMUTING_CONDITION}};
  specs[2] = {3, 2, 3, 1.0, {PF::AW_CONDITION}};
  specs[3] = {2, 2, 2, 1.0, {PF::W2A3W3_ZERO}};
  specs[4] = {2, 3, 3, 1.0, {PF::A2W3A3_ZERO}};
  specs[5] = {3, 3, 2, 1.0, {PF::RELATION_POSITIVE}};
  specs[6] = {4, 2, 2, 1.0, {PF::A2_ZERO}};
  specs[7] = {2, 2, 3, 1.0, {PF::W2_ZERO, PF::RELATION_POSITIVE}};
  return specs;
}

std::vector<wginv::GeneratorSpec> load_specs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wginv::InputError("cannot open spec file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw wginv::ParseError("spec file: " + std::string(e.what()));
  }
  if (!doc.is_array() || doc.empty()) {
    throw wginv::InputError("spec file: expected a nonempty array of generator specs");
  }
  std::vector<wginv::GeneratorSpec> specs;
  for (const auto& item : doc) {
    wginv::GeneratorSpec s;
    if (item.contains("core_dim")) s.core_dim = item.at("core_dim").get<Eigen::Index>();
    if (item.contains("nil_dim_x")) s.nil_dim_x = item.at("nil_dim_x").get<Eigen::Index>();
    if (item.contains("nil_dim_y")) s.nil_dim_y = item.at("nil_dim_y").get<Eigen::Index>();
    if (item.contains("magnitude")) s.magnitude = item.at("magnitude").get<double>();
    if (item.contains("plant")) {
      for (const auto& name : item.at("plant")) {
        s.plant.insert(plant_from_name(name.get<std::string>()));
      }
    }
    specs.push_back(std::move(s));
  }
  return specs;
}

int run_conform(int trials, std::uint64_t seed, const std::string& spec_path, int jobs,
                const NumericContext& ctx, const std::string& out_path) {
  const std::vector<wginv::GeneratorSpec> specs =
      spec_path.empty() ? default_specs() : load_specs(spec_path);
  const wginv::SuiteReport report = wginv::run_suite(specs, trials, seed, ctx, jobs);

  nlohmann::ordered_json doc = report_header("conform", ctx);
  const nlohmann::ordered_json suite = wginv::suite_report_to_json(report);
  doc["seed"] = suite.at("seed");
  doc["trials"] = suite.at("trials");
  doc["checks"] = suite.at("checks");
  doc["all_passed"] = suite.at("all_passed");
  emit_json(doc, out_path);
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted weak group inverse toolkit"};
  app.require_subcommand(1);

  double tol = -1.0;
  std::string format = "json";
  std::string out_path;
  app.add_option("--tol", tol, "identity-check relative tolerance (default 1e-8)");
  app.add_option("--format", format, "compute output format: json or mm")
      ->check(CLI::IsMember({"json", "mm"}));
  app.add_option("--out", out_path, "write the report to this path instead of stdout");

  std::string kind, theorem, relation;
  std::string path_a, path_w, path_b, spec_path;
  int trials = 200;
  std::uint64_t seed = 7;
  int jobs = 1;

  CLI::App* compute = app.add_subcommand("compute", "compute a generalized inverse");
  compute->add_option("kind", kind,
                      "one of: mp group core drazin coreep wg wdrazin wcoreep wwg outer")
      ->required();
  compute->add_option("-A,--matrix", path_a, "matrix file (json or matrix market)")->required();
  compute->add_option("-W,--weight", path_w, "weight file (weighted kinds only)");

  CLI::App* routes = app.add_subcommand("routes", "compare every representation route");
  routes->add_option("-A,--matrix", path_a, "matrix file")->required();
  routes->add_option("-W,--weight", path_w, "weight file")->required();

  CLI::App* verify = app.add_subcommand("verify", "check a named statement on given inputs");
  verify->add_option("theorem", theorem,
                     "one of: lemma-blocks thm-defining-system thm-geometric lemma-projectors "
                     "thm-characterizations thm-representations thm-transfer thm-product "
                     "thm-commutation thm-aw-commutation cor-unweighted-system "
                     "cor-unweighted-routes cor-unweighted-commutation lemma-relation-equiv "
                     "rel-right-block rel-left-block cor-both-block cor-unweighted-block")
      ->required();
  verify->add_option("-A,--matrix", path_a, "matrix file")->required();
  verify->add_option("-W,--weight", path_w, "weight file (weighted statements)");
  verify->add_option("-B,--partner", path_b, "partner matrix file (relation statements)");

  CLI::App* relation_cmd = app.add_subcommand("relation", "decide a weak group relation");
  relation_cmd->add_option("which", relation, "one of: wg wwg-r wwg-l wwg")->required();
  relation_cmd->add_option("-A,--matrix", path_a, "matrix file")->required();
  relation_cmd->add_option("-B,--partner", path_b, "partner matrix file")->required();
  relation_cmd->add_option("-W,--weight", path_w, "weight file (wwg variants)");

  CLI::App* canon = app.add_subcommand("canon", "dump the canonical pair blocks");
  canon->add_option("-A,--matrix", path_a, "matrix file")->required();
  canon->add_option("-W,--weight", path_w, "weight file")->required();

  CLI::App* conform = app.add_subcommand("conform", "run the conformance suite");
  conform->add_option("--trials", trials, "number of generated trials");
  conform->add_option("--seed", seed, "master seed");
  conform->add_option("--spec", spec_path, "json file with generator specs");
  conform->add_option("--jobs", jobs, "worker threads (output is identical for any value)")
      ->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  NumericContext ctx;
  if (tol >= 0.0) ctx.eq_rtol = tol;

  try {
    if (app.got_subcommand(compute)) {
      const LoadedMatrix A = load_input(path_a);
      LoadedMatrix W;
      const bool has_w = !path_w.empty();
      if (has_w) W = load_input(path_w);
      return run_compute(kind, A, has_w ? &W : nullptr, ctx, format, out_path);
    }
    if (app.got_subcommand(routes)) {
      return run_routes(load_input(path_a), load_input(path_w), ctx, out_path);
    }
    if (app.got_subcommand(verify)) {
      const LoadedMatrix A = load_input(path_a);
      LoadedMatrix W, B;
      const bool has_w = !path_w.empty();
      const bool has_b = !path_b.empty();
      if (has_w) W = load_input(path_w);
      if (has_b) B = load_input(path_b);
      return run_verify(theorem, A, has_w ? &W : nullptr, has_b ? &B : nullptr, ctx, out_path);
    }
    if (app.got_subcommand(relation_cmd)) {
      const LoadedMatrix A = load_input(path_a);
      const LoadedMatrix B = load_input(path_b);
      LoadedMatrix W;
      const bool has_w = !path_w.empty();
      if (has_w) W = load_input(path_w);
      return run_relation(relation, A, B, has_w ? &W : nullptr, ctx, out_path);
    }
    if (app.got_subcommand(canon)) {
      return run_canon(load_input(path_a), load_input(path_w), ctx, out_path);
    }
    return run_conform(trials, seed, spec_path, jobs, ctx, out_path);
  } catch (const wginv::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const wginv::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
