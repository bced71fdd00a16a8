#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wginv/context.hpp"
#include "wginv/relations.hpp"
#include "wginv/spectral.hpp"

namespace wginv {

// Structural flags a generated pair can be asked to satisfy.  The *_ZERO
// flags blank a block outright; the *_CONDITION flags plant the algebraic
// identities the commutation and transfer statements hinge on; the last
// three shape relation experiments.
enum class PlantFlag {
  A2_ZERO,
  W2_ZERO,
  A3W3_ZERO,
  COMMUTING_CONDITION,  // (W1 A2 + W2 A3) W3 A3 = 0 with a nonzero witness
  AW_CONDITION,         // (A1 W2 + A2 W3) A3 W3 = 0 with a nonzero witness
  W2A3W3_ZERO,          // transfer condition for the AW direction
  A2W3A3_ZERO,          // transfer condition for the squared form
  RELATION_POSITIVE,    // keep W3 rank deficient so left-relation partners exist
};

struct GeneratorSpec {
  Eigen::Index core_dim = 2;
  Eigen::Index nil_dim_x = 2;
  Eigen::Index nil_dim_y = 2;
  double magnitude = 1.0;
  std::set<PlantFlag> plant;
};

struct GroundTruth {
  CanonicalPair pair;  // planted blocks and frames
  ComplexMatrix A, W;
  ComplexMatrix wwg_closed_form;
  ComplexMatrix wdrazin_closed_form;
  ComplexMatrix wcoreep_closed_form;
};

// Deterministic stream over raw mt19937_64 output; value() maps the top
// 53 bits to [0, 1) so results do not depend on the standard library's
// distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double value();
  double symmetric(double magnitude);  // uniform on [-magnitude, magnitude]
  Complex entry(double magnitude);

 private:
  std::mt19937_64 engine_;
};

// Sub-seed for a trial so parallel execution cannot reorder draws.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

GroundTruth generate_pair(const GeneratorSpec& spec, std::uint64_t seed);

// Partner matrix B standing in the requested relation to gt's A; flip
// `positive` to get a certified violation instead.
ComplexMatrix derive_relation_partner(const GroundTruth& gt, RelationSide side, bool positive,
                                      std::uint64_t seed);

struct SuiteCheck {
  std::string name;
  int pass = 0;
  int fail = 0;
  double max_residual = 0.0;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<SuiteCheck> checks;
  bool all_passed() const;
};

SuiteReport run_suite(const std::vector<GeneratorSpec>& specs, int trials, std::uint64_t seed,
                      const NumericContext& ctx = {}, int jobs = 1);

}
