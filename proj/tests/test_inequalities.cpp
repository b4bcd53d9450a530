#include <gtest/gtest.h>

#include "bellaudit/inequalities.hpp"
#include "oracles.hpp"

using namespace bellaudit;

TEST(Chsh, QuantumOptimalSpecReachesTsirelson) {
  const double s = chsh_quantum(singlet(), ChshSpec::optimal());
  EXPECT_NEAR(std::abs(s), 2 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(s, oracle::singlet_chsh(0, kPi / 2, kPi / 4, 3 * kPi / 4), 1e-12);
}

TEST(Chsh, EqualSettingsGiveTwo) {
  const auto spec = ChshSpec::planar(0.4, 0.4, 0.4, 0.4);
  EXPECT_NEAR(std::abs(chsh_quantum(singlet(), spec)), 2.0, 1e-12);
  for (const char* name : {"scully", "argaman-dilorenzo", "sawtooth"})
    EXPECT_NEAR(std::abs(chsh_model(*builtin_model(name), singlet(), spec)), 2.0, 1e-12) << name;
}

TEST(Chsh, ProductStateStaysLocal) {
  const auto psi = TwoQubitState::product_z(Outcome::plus(), Outcome::plus());
  EXPECT_LE(std::abs(chsh_quantum(psi, ChshSpec::optimal())), 2.0 + 1e-9);
}

TEST(Chsh, ModelsAtOptimalSpec) {
  EXPECT_NEAR(std::abs(chsh_model(builtin_scully(), singlet(), ChshSpec::optimal())), 2 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(chsh_model(builtin_argaman_dilorenzo(), singlet(), ChshSpec::optimal())), 2 * std::sqrt(2.0),
              1e-12);
  EXPECT_NEAR(chsh_model(builtin_sawtooth_local(), singlet(), ChshSpec::optimal()), -2.0, 1e-9);
}

TEST(Fine, SawtoothJointIsNormalizedAndReproducesPairs) {
  const auto saw = builtin_sawtooth_local();
  const auto fj = fine_joint_from_model(saw, singlet(), ChshSpec::optimal());
  EXPECT_NEAR(fj.total(), 1.0, 1e-12);
  for (double p : fj.table) EXPECT_GE(p, 0.0);
  const auto r = fine_marginal_check(fj, model_pairwise_targets(saw, singlet(), ChshSpec::optimal()));
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_LE(r.max_total_variation, 1e-9);
  EXPECT_EQ(r.pairs.size(), 5u);
}

TEST(Fine, JointAgainstItsOwnMarginalsIsZero) {
  const auto fj = fine_joint_from_model(builtin_sawtooth_local(), singlet(), ChshSpec::planar(0.1, 0.9, 2.0, 2.5));
  PairwiseTargets self;
  self.label = "self";
  self.cross = {fj.cross_marginal(0, 0), fj.cross_marginal(0, 1), fj.cross_marginal(1, 0), fj.cross_marginal(1, 1)};
  self.alice_pair = fj.alice_marginal();
  EXPECT_EQ(fine_marginal_check(fj, self).max_total_variation, 0.0);
}

TEST(Fine, QuantumTargetYieldsImpossibilityWitness) {
  const auto fj = fine_joint_from_model(builtin_sawtooth_local(), singlet(), ChshSpec::optimal());
  const auto r = fine_marginal_check(fj, quantum_pairwise_targets(singlet(), ChshSpec::optimal()));
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_TRUE(r.impossibility_witness);
  EXPECT_GT(r.max_total_variation, 0.07);
  EXPECT_GE(r.max_total_variation, (2 * std::sqrt(2.0) - 2) / 8 - 1e-12);
  EXPECT_FALSE(r.witness.empty());
}

TEST(Fine, IneligibleModelsAreRejectedWithReason) {
  try {
    fine_joint_from_model(builtin_scully(), singlet(), ChshSpec::optimal());
    FAIL() << "expected IneligibleModel";
  } catch (const IneligibleModel& e) {
    EXPECT_STREQ(e.what(), "measurement independence violated");
  }
  EXPECT_THROW(fine_joint_from_model(builtin_beltrametti_bugajski(), singlet(), ChshSpec::optimal()), IneligibleModel);
}

TEST(Fine, TableFromResponsesUniformIsUncorrelated) {
  FineJoint fj;
  fj.table = fine_table_from_responses({1.0}, {LocalResponses{}});
  EXPECT_NEAR(fj.total(), 1.0, 1e-15);
  EXPECT_NEAR(fj.chsh(), 0.0, 1e-15);
}

TEST(Fine, DeterministicMaximumIsExactlyTwo) { EXPECT_EQ(deterministic_chsh_maximum(), 2.0); }

TEST(Fine, CrossMarginalMatchesBruteForceSum) {
  FineJoint fj;
  for (std::size_t k = 0; k < 16; ++k) fj.table[k] = static_cast<double>(k + 1) / 136.0;
  // (A2, B1) marginal by direct summation over A1 and B2.
  for (auto a2 : outcomes())
    for (auto b1 : outcomes()) {
      double sum = 0.0;
      for (auto a1 : outcomes())
        for (auto b2 : outcomes()) sum += fj.at(a1, a2, b1, b2);
      EXPECT_NEAR(fj.cross_marginal(1, 0)[pair_index(a2, b1)], sum, 1e-15);
    }
}

TEST(ChshBound, SmallRunIsReproducible) {
  const auto a = chsh_bound_property(500, 3);
  const auto b = chsh_bound_property(500, 3);
  EXPECT_EQ(a.max_abs_s, b.max_abs_s);
  EXPECT_EQ(a.violations, 0u);
  EXPECT_EQ(a.seed, 3u);
}
