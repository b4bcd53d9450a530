#include <gtest/gtest.h>

#include "property_runs.hpp"

using namespace bellaudit;

TEST(Property, EprAnticorrelationForcesDeterminism) {
  const auto r = props::run_epr_property(/*seed=*/2024, /*wanted=*/100);
  EXPECT_GE(r.qualifying, 100u) << "generated " << r.generated;
  EXPECT_EQ(r.deterministic, r.qualifying);
  EXPECT_LE(r.worst_determinism, 1e-9);
}

TEST(Property, EprGeneratorAlsoProducesNonQualifyingModels) {
  // Sanity check that the qualification filter is not vacuous.
  const auto r = props::run_epr_property(/*seed=*/2024, /*wanted=*/100);
  EXPECT_GT(r.generated, r.qualifying);
}

TEST(Property, LocallyCausalModelsRespectChshBound) {
  const auto r = props::run_local_chsh_property(/*seed=*/77, /*models=*/100, /*specs_per_model=*/100);
  EXPECT_EQ(r.not_local, 0u);
  EXPECT_GE(r.samples, 10000u);
  EXPECT_EQ(r.violations, 0u) << "max |S| = " << r.max_abs_s;
}

TEST(Property, FineFormTablesRespectChshBound) {
  const auto r = chsh_bound_property(10000, 99);
  EXPECT_EQ(r.violations, 0u) << "max |S| = " << r.max_abs_s;
  EXPECT_LE(r.max_normalization_error, 1e-12);
}

TEST(Property, QuantumNeverExceedsTsirelson) {
  const auto r = props::run_tsirelson_property(/*seed=*/5, /*samples=*/20000);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_GT(r.max_abs_s, 2.0);
}

TEST(Property, NonsignalingOnCoarseGridAndRandomStates) {
  std::mt19937_64 rng(8);
  const auto grid = SettingsGrid::planar(kPi / 6);
  EXPECT_LE(props::run_nonsignaling_grid(singlet(), grid), 1e-12);
  for (int i = 0; i < 5; ++i) EXPECT_LE(props::run_nonsignaling_grid(props::random_state(rng), grid), 1e-12);
}

TEST(Property, LocalKicksLeaveRemoteExpectationsUnchanged) {
  const auto r = props::run_kick_property(/*seed=*/13, /*triples=*/100);
  EXPECT_LE(r.max_commutator, 1e-12);
  EXPECT_LE(r.max_expectation_change, 1e-12);
}

TEST(Property, NonlocalKickDoesChangeExpectations) {
  // Control: a kick acting on Alice's qubit moves <sigma_x (x) I>.
  const auto op_a = kron(pauli::x(), Matrix2::identity());
  const auto op_b = kron(pauli::z(), Matrix2::identity());
  const double h = 1.0 / std::sqrt(2.0);
  const auto plus_x = TwoQubitState::from_amplitudes({h, 0.0, h, 0.0});
  const auto kicked = local_unitary_kick(plus_x, op_b, 0.3);
  EXPECT_GT(std::abs(expectation(kicked, op_a) - expectation(plus_x, op_a)), 0.1);
}
