#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "wginv/wginv.hpp"

using namespace wginv;
using fixtures::dense;
using fixtures::max_abs_diff;

namespace {
const NumericContext kCtx{};

const char* kRouteNames[] = {"DEF",    "GEOM",   "REP_I", "REP_II",
                             "REP_III", "REP_IV", "REP_V", "REP_VI",
                             "REP_VII", "PRODUCT", "TRANSFER"};

ComplexMatrix diag_a() {
  ComplexMatrix A = ComplexMatrix::Zero(2, 2);
  A(0, 0) = 1.0;
  return A;
}

ComplexMatrix diag_w() {
  ComplexMatrix W = ComplexMatrix::Zero(2, 2);
  W(0, 0) = 1.0;
  W(1, 1) = 3.0;
  return W;
}
}  // namespace

TEST_CASE("weak group inverse golden values") {
  CHECK(max_abs_diff(weak_group(fixtures::mat_a(), kCtx), fixtures::wg_a()) < 1e-12);
  CHECK(max_abs_diff(weak_group(fixtures::mat_b(), kCtx), fixtures::wg_b()) < 1e-12);
  CHECK(weak_group(ComplexMatrix::Zero(3, 3), kCtx).norm() == 0.0);

  ComplexMatrix N = dense(2, 2, {0, 1, 0, 0});
  CHECK(weak_group(N, kCtx).norm() < 1e-13);
}

TEST_CASE("core_ep golden value and projector property") {
  ComplexMatrix A = fixtures::mat_a();
  ComplexMatrix X = core_ep(A, kCtx);
  CHECK(max_abs_diff(X, fixtures::core_ep_a()) < 1e-12);

  // A X is the orthogonal projector onto the stable range.
  ComplexMatrix P = A * X;
  CHECK(relative_residual(P * P, P) < 1e-12);
  CHECK(relative_residual(P.adjoint().eval(), P) < 1e-12);
  CHECK(relative_residual(X * A * X, X) < 1e-12);
}

TEST_CASE("group and core inverses require index at most one") {
  CHECK_THROWS_AS(group_inverse(fixtures::mat_a(), kCtx), IndexTooLarge);
  CHECK_THROWS_AS(core_inverse(fixtures::mat_a(), kCtx), IndexTooLarge);

  ComplexMatrix M = dense(2, 2, {1, 1, 0, 1});
  CHECK(max_abs_diff(group_inverse(M, kCtx), dense(2, 2, {1, -1, 0, 1})) < 1e-13);

  ComplexMatrix E = dense(2, 2, {1, 1, 0, 0});
  CHECK(max_abs_diff(core_inverse(E, kCtx), dense(2, 2, {1, 0, 0, 0})) < 1e-13);
  ComplexMatrix G = group_inverse(E, kCtx);
  CHECK(relative_residual(E * G * E, E) < 1e-13);
  CHECK(relative_residual(G * E * G, G) < 1e-13);
  CHECK(relative_residual(E * G, G * E) < 1e-13);
}

TEST_CASE("weak group inverse agrees with the group inverse at index one") {
  ComplexMatrix C = fixtures::mat_c();
  REQUIRE(index(C, kCtx).index == 1);
  CHECK(relative_residual(weak_group(C, kCtx), group_inverse(C, kCtx)) < 1e-11);
}

TEST_CASE("weighted inverses on the diagonal pair") {
  ComplexMatrix A = diag_a();
  ComplexMatrix W = diag_w();
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK(max_abs_diff(w_drazin(A, W, kCtx), expected) < 1e-13);
  CHECK(max_abs_diff(weighted_core_ep(A, W, kCtx), expected) < 1e-13);
  CHECK(max_abs_diff(weighted_weak_group(A, W, kCtx), expected) < 1e-13);
}

TEST_CASE("identity weight reduces the weighted inverses to the square ones") {
  ComplexMatrix I3 = ComplexMatrix::Identity(3, 3);
  for (const ComplexMatrix& A : {fixtures::mat_a(), fixtures::mat_b(), fixtures::mat_c()}) {
    CHECK(relative_residual(weighted_weak_group(A, I3, kCtx), weak_group(A, kCtx)) < 1e-11);
    CHECK(relative_residual(weighted_core_ep(A, I3, kCtx), core_ep(A, kCtx)) < 1e-11);
    CHECK(relative_residual(w_drazin(A, I3, kCtx), drazin(A, kCtx)) < 1e-11);
  }
}

TEST_CASE("weighted guards reject zero weights and bad shapes") {
  ComplexMatrix A = ComplexMatrix::Zero(3, 2);
  A(0, 0) = 1.0;
  CHECK_THROWS_AS(weighted_weak_group(A, ComplexMatrix::Zero(2, 3), kCtx), ZeroWeight);
  CHECK_THROWS_AS(weighted_weak_group(A, ComplexMatrix::Identity(3, 3), kCtx), ShapeMismatch);
  CHECK_THROWS_AS(weighted_core_ep(A, ComplexMatrix::Zero(2, 3), kCtx), ZeroWeight);
  CHECK_THROWS_AS(core_ep(A, kCtx), ShapeMismatch);
  CHECK_THROWS_AS(weak_group(A, kCtx), ShapeMismatch);
}

TEST_CASE("outer inverse with prescribed range and null space") {
  // For the identity with T = span{e1}, S = span{e2} the outer inverse is
  // the rank-one projector onto e1.
  SubspaceBasis T;
  T.ambient_dim = 2;
  T.frame = ComplexMatrix::Zero(2, 1);
  T.frame(0, 0) = 1.0;
  SubspaceBasis S;
  S.ambient_dim = 2;
  S.frame = ComplexMatrix::Zero(2, 1);
  S.frame(1, 0) = 1.0;
  ComplexMatrix X = outer_inverse_prescribed(ComplexMatrix::Identity(2, 2), T, S, kCtx);
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK(max_abs_diff(X, expected) < 1e-13);

  // Realizes the weak group inverse of the stock example from its spaces.
  ComplexMatrix A = fixtures::mat_a();
  SubspaceBasis range_t = range_basis(drazin(A, kCtx), kCtx);
  SubspaceBasis null_s = null_basis(core_ep(A, kCtx) * A, kCtx);
  ComplexMatrix Y = outer_inverse_prescribed(A, range_t, null_s, kCtx);
  CHECK(max_abs_diff(Y, fixtures::wg_a()) < 1e-11);
}

TEST_CASE("outer inverse rejects inconsistent prescriptions") {
  SubspaceBasis T;
  T.ambient_dim = 2;
  T.frame = ComplexMatrix::Zero(2, 1);
  T.frame(1, 0) = 1.0;  // e2, killed by M below
  SubspaceBasis S = T;
  ComplexMatrix M = ComplexMatrix::Zero(2, 2);
  M(0, 0) = 1.0;
  CHECK_THROWS_AS(outer_inverse_prescribed(M, T, S, kCtx), NotConsistent);

  SubspaceBasis T2;
  T2.ambient_dim = 3;
  T2.frame = ComplexMatrix::Identity(3, 3).leftCols(2);
  SubspaceBasis S1;
  S1.ambient_dim = 3;
  S1.frame = ComplexMatrix::Identity(3, 3).rightCols(2);
  CHECK_THROWS_AS(
      outer_inverse_prescribed(ComplexMatrix::Identity(3, 3), T2, S1, kCtx), NotConsistent);

  SubspaceBasis wrong;
  wrong.ambient_dim = 5;
  wrong.frame = ComplexMatrix::Identity(5, 5).leftCols(1);
  CHECK_THROWS_AS(
      outer_inverse_prescribed(ComplexMatrix::Identity(2, 2), wrong, S, kCtx), ShapeMismatch);
}

TEST_CASE("route table carries every representation and they agree") {
  ComplexMatrix I3 = ComplexMatrix::Identity(3, 3);
  RouteTable table = wwg_representations(fixtures::mat_a(), I3, kCtx);

  std::set<std::string> names;
  for (const auto& [name, value] : table.entries) {
    names.insert(name);
    CHECK(relative_residual(value, table.reference) < 1e-9);
  }
  std::set<std::string> expected(std::begin(kRouteNames), std::end(kRouteNames));
  CHECK(names == expected);
  CHECK(table.max_pairwise_residual < 1e-9);
  CHECK(max_abs_diff(table.reference, fixtures::wg_a()) < 1e-11);
}

TEST_CASE("route table handles a genuinely weighted rectangular pair") {
  ComplexMatrix A = ComplexMatrix::Zero(3, 2);
  A(0, 0) = 2.0;
  A(1, 1) = 0.0;
  ComplexMatrix W = ComplexMatrix::Zero(2, 3);
  W(0, 0) = 1.0;
  W(1, 1) = 1.0;
  RouteTable table = wwg_representations(A, W, kCtx);
  CHECK(table.entries.size() == 11);
  CHECK(table.max_pairwise_residual < 1e-9);
  ComplexMatrix expected = ComplexMatrix::Zero(3, 2);
  expected(0, 0) = 0.5;
  CHECK(max_abs_diff(table.reference, expected) < 1e-12);
}

TEST_CASE("characterizations accept the weighted weak group inverse") {
  ComplexMatrix A = fixtures::mat_a();
  ComplexMatrix W = ComplexMatrix::Identity(3, 3);
  ComplexMatrix B = weighted_weak_group(A, W, kCtx);
  for (CharVariant variant :
       {CharVariant::SYSTEM, CharVariant::GEOMETRIC, CharVariant::CHAR_II,
        CharVariant::CHAR_III, CharVariant::CHAR_IV}) {
    CharacterizationResult res = characterization_check(A, W, B, kCtx, variant);
    CHECK(res.holds);
    CHECK(res.max_residual() < 1e-9);
  }
  CharacterizationResult pow = characterization_check(A, W, B, kCtx, CharVariant::CHAR_IV,
                                                      CharIvForm::POWER);
  CHECK(pow.holds);
}

TEST_CASE("characterizations reject a perturbed candidate") {
  ComplexMatrix A = fixtures::mat_a();
  ComplexMatrix W = ComplexMatrix::Identity(3, 3);
  ComplexMatrix B = weighted_weak_group(A, W, kCtx);
  B.array() += Complex(0.1, 0.0);
  for (CharVariant variant :
       {CharVariant::SYSTEM, CharVariant::GEOMETRIC, CharVariant::CHAR_II,
        CharVariant::CHAR_III, CharVariant::CHAR_IV}) {
    CharacterizationResult res = characterization_check(A, W, B, kCtx, variant);
    CHECK_FALSE(res.holds);
    CHECK(res.max_residual() > 1e-3);
  }
}

TEST_CASE("characterization rejects mismatched candidate shapes") {
  ComplexMatrix A = fixtures::mat_a();
  ComplexMatrix W = ComplexMatrix::Identity(3, 3);
  CHECK_THROWS_AS(characterization_check(A, W, ComplexMatrix::Zero(2, 2), kCtx,
                                         CharVariant::SYSTEM),
                  ShapeMismatch);
}

TEST_CASE("commutation analysis on non-commuting and commuting inputs") {
  ComplexMatrix I3 = ComplexMatrix::Identity(3, 3);
  CommutationReport bad = commutation_analysis(fixtures::mat_a(), I3, kCtx);
  CHECK_FALSE(bad.commutes);
  CHECK_FALSE(bad.block_condition);
  CHECK_FALSE(bad.square_identity);
  CHECK_FALSE(bad.equals_wdrazin);
  CHECK(bad.commutes_residual > 1e-6);

  ComplexMatrix D = ComplexMatrix::Zero(3, 3);
  D(0, 0) = 2.0;
  CommutationReport good = commutation_analysis(D, I3, kCtx);
  CHECK(good.commutes);
  CHECK(good.block_condition);
  CHECK(good.square_identity);
  CHECK(good.aw_square_identity);
  CHECK(good.aw_block_condition);
  CHECK(good.equals_wdrazin);
  CHECK(good.equals_wdrazin_residual < 1e-10);
}
