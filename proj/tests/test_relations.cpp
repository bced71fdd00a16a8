#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "wginv/wginv.hpp"

using namespace wginv;
using fixtures::max_abs_diff;

namespace {
const NumericContext kCtx{};
}

TEST_CASE("weak group relation on the hand-checked trio") {
  ComplexMatrix A = fixtures::mat_a();
  ComplexMatrix B = fixtures::mat_b();
  ComplexMatrix C = fixtures::mat_c();

  RelationVerdict ab = wg_below(A, B, kCtx);
  CHECK(ab.holds);
  CHECK(ab.left_residual < 1e-12);
  CHECK(ab.right_residual < 1e-12);

  RelationVerdict bc = wg_below(B, C, kCtx);
  CHECK(bc.holds);

  // The first equation holds but the second fails, so the relation does not.
  RelationVerdict ac = wg_below(A, C, kCtx);
  CHECK_FALSE(ac.holds);
  CHECK(ac.left_residual < 1e-12);
  CHECK(ac.right_residual > 1e-3);

  CHECK(wg_below(A, A, kCtx).holds);
}

TEST_CASE("weighted relation with identity weight reduces to the square one") {
  ComplexMatrix I3 = ComplexMatrix::Identity(3, 3);
  ComplexMatrix A = fixtures::mat_a();
  ComplexMatrix mats[] = {fixtures::mat_b(), fixtures::mat_c(), fixtures::mat_a()};
  for (const ComplexMatrix& B : mats) {
    bool flat = wg_below(A, B, kCtx).holds;
    CHECK(wwg_below(A, I3, B, kCtx, RelationSide::RIGHT).holds == flat);
    CHECK(wwg_below(A, I3, B, kCtx, RelationSide::LEFT).holds == flat);
    CHECK(wwg_below(A, I3, B, kCtx, RelationSide::BOTH).holds == flat);
  }
}

TEST_CASE("weighted relation on generated partners") {
  GeneratorSpec spec;
  spec.core_dim = 2;
  spec.nil_dim_x = 2;
  spec.nil_dim_y = 2;
  spec.plant = {PlantFlag::RELATION_POSITIVE};
  GroundTruth gt = generate_pair(spec, 501);

  for (RelationSide side : {RelationSide::RIGHT, RelationSide::LEFT, RelationSide::BOTH}) {
    ComplexMatrix good = derive_relation_partner(gt, side, true, 91);
    RelationVerdict pos = wwg_below(gt.A, gt.W, good, kCtx, side);
    CHECK(pos.holds);

    ComplexMatrix bad = derive_relation_partner(gt, side, false, 92);
    RelationVerdict neg = wwg_below(gt.A, gt.W, bad, kCtx, side);
    CHECK_FALSE(neg.holds);
  }
}

TEST_CASE("block evaluation of the relations agrees with the direct one") {
  ComplexMatrix I3 = ComplexMatrix::Identity(3, 3);
  RelationBlockReport yes =
      relation_block_analysis(fixtures::mat_a(), I3, fixtures::mat_b(), kCtx);
  CHECK(yes.direct_right);
  CHECK(yes.block_right);
  CHECK(yes.direct_left);
  CHECK(yes.block_left);
  CHECK(yes.block_right_residual < 1e-11);
  CHECK(yes.block_left_residual < 1e-11);

  RelationBlockReport no =
      relation_block_analysis(fixtures::mat_a(), I3, fixtures::mat_c(), kCtx);
  CHECK(no.direct_right == no.block_right);
  CHECK(no.direct_left == no.block_left);
  CHECK_FALSE(no.direct_right);
  CHECK_FALSE(no.direct_left);
}

TEST_CASE("equivalence bundle splits exactly between the two partners") {
  LemmaEquivReport both = lemma_equiv_suite(fixtures::mat_a(), fixtures::mat_b(), kCtx);
  CHECK(both.i1);
  CHECK(both.i5);
  CHECK(both.ii1);
  CHECK(both.part_i_consistent());
  CHECK(both.part_ii_consistent());

  LemmaEquivReport half = lemma_equiv_suite(fixtures::mat_a(), fixtures::mat_c(), kCtx);
  CHECK(half.i1);
  CHECK(half.i2);
  CHECK(half.i3);
  CHECK(half.i4);
  CHECK(half.i5);
  CHECK_FALSE(half.ii1);
  CHECK_FALSE(half.ii2);
  CHECK(half.part_i_consistent());
  CHECK(half.part_ii_consistent());
}

TEST_CASE("probe reports the transitivity gap and the antisymmetry failure") {
  ProbeTriple triple{fixtures::mat_a(), fixtures::mat_b(), fixtures::mat_c()};
  PreorderProbeReport report = preorder_probe({triple}, kCtx);
  REQUIRE(report.triples.size() == 1);
  CHECK(report.triples[0].ab);
  CHECK(report.triples[0].bc);
  CHECK_FALSE(report.triples[0].ac);
  CHECK(report.triples[0].transitivity_violated);
  CHECK(report.any_transitivity_violation);
  CHECK(report.antisymmetry_violated);

  PreorderProbeReport empty = preorder_probe({}, kCtx);
  CHECK(empty.triples.empty());
  CHECK_FALSE(empty.any_transitivity_violation);
  CHECK(empty.antisymmetry_violated);
}

TEST_CASE("relation helpers reject malformed shapes") {
  ComplexMatrix A = fixtures::mat_a();
  CHECK_THROWS_AS(wg_below(A, ComplexMatrix::Zero(2, 2), kCtx), ShapeMismatch);
  CHECK_THROWS_AS(wg_below(ComplexMatrix::Zero(2, 3), ComplexMatrix::Zero(2, 3), kCtx),
                  ShapeMismatch);
  CHECK_THROWS_AS(
      wwg_below(A, ComplexMatrix::Identity(3, 3), ComplexMatrix::Zero(2, 2), kCtx,
                RelationSide::BOTH),
      ShapeMismatch);
}
