#include <gtest/gtest.h>

#include "bellaudit/audit.hpp"
#include "oracles.hpp"

using namespace bellaudit;
namespace c = bellaudit::condition;

namespace {

const SettingsGrid& grid() {
  static const SettingsGrid g = SettingsGrid::default_planar();
  return g;
}

double breakdown(const AuditReport& r, const std::string& key) {
  for (const auto& [k, v] : r.breakdown)
    if (k == key) return v;
  ADD_FAILURE() << "no breakdown entry " << key;
  return -1.0;
}

}  // namespace

TEST(SettingsGrid, StepMustDivideFullTurn) {
  EXPECT_EQ(SettingsGrid::default_planar().alice.size(), 36u);
  EXPECT_EQ(SettingsGrid::planar(kPi / 4).bob.size(), 8u);
  EXPECT_THROW(SettingsGrid::planar(0.7), InvalidArgument);
  EXPECT_THROW(SettingsGrid::planar(-1.0), InvalidArgument);
}

TEST(OutcomeIndependence, FactorizedModelsHaveExactlyZeroDeviation) {
  for (const char* name : {"scully", "argaman-dilorenzo", "sawtooth"}) {
    const auto r = check_outcome_independence(*builtin_model(name), singlet(), grid());
    EXPECT_EQ(r.verdict, Verdict::holds) << name;
    EXPECT_EQ(r.max_deviation, 0.0) << name;
  }
}

TEST(OutcomeIndependence, OnticStateModelViolatesWithQuarterGap) {
  // At equal settings P(+,+) = 0 while P1(+) P2(+) = 1/4.
  const auto r = check_outcome_independence(builtin_beltrametti_bugajski(), singlet(), grid());
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_NEAR(r.max_deviation, 0.25, 1e-12);
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_GT(r.witnesses.front().deviation, 1e-12);
}

TEST(ParameterIndependence, FactorizedModelsHaveExactlyZeroDeviation) {
  for (const char* name : {"scully", "argaman-dilorenzo", "sawtooth"}) {
    const auto r = check_parameter_independence(*builtin_model(name), singlet(), grid());
    EXPECT_EQ(r.verdict, Verdict::holds) << name;
    EXPECT_EQ(r.max_deviation, 0.0) << name;
  }
}

TEST(ParameterIndependence, OnticStateModelLocalMarginalsAreFlat) {
  // Oracle: each party's Born marginal on the singlet is 1/2 whatever the
  // remote setting, so the computed deviation is at rounding level.
  const auto psi = oracle::singlet();
  for (int i = 0; i < 36; ++i)
    for (int j = 0; j < 36; ++j) {
      const auto n1 = Setting::from_angle(i * kPi / 18).vector();
      const auto n2 = Setting::from_angle(j * kPi / 18).vector();
      EXPECT_NEAR(oracle::joint(psi, n1, n2, 1, 1) + oracle::joint(psi, n1, n2, -1, 1), 0.5, 1e-12);
    }
  const auto r = check_parameter_independence(builtin_beltrametti_bugajski(), singlet(), grid());
  EXPECT_LE(r.max_deviation, 1e-12);
}

TEST(MeasurementIndependence, PinnedModelsViolate) {
  for (const char* name : {"scully", "argaman-dilorenzo", "scully-printed-sign"}) {
    const auto r = check_measurement_independence(*builtin_model(name), singlet(), grid());
    EXPECT_EQ(r.verdict, Verdict::violated) << name;
    EXPECT_FALSE(r.witnesses.empty()) << name;
  }
}

TEST(MeasurementIndependence, SettingFreeDensitiesHoldExactly) {
  for (const char* name : {"beltrametti-bugajski", "sawtooth"}) {
    const auto r = check_measurement_independence(*builtin_model(name), singlet(), grid());
    EXPECT_EQ(r.verdict, Verdict::holds) << name;
    EXPECT_EQ(r.max_deviation, 0.0) << name;
  }
}

TEST(MatchSupports, SlotFirstThenNearest) {
  const std::vector<BeableAtom> ref{make_atom(0.5, 0.0, kPi), make_atom(0.5, 1.0, 1.0 + kPi)};
  const std::vector<BeableAtom> swapped{ref[1], ref[0]};
  EXPECT_LE(detail::match_supports(ref, swapped, 1e-9).deviation, 1e-12);
  const std::vector<BeableAtom> moved{make_atom(0.5, 0.0, kPi), make_atom(0.5, 1.5, 1.5 + kPi)};
  EXPECT_NEAR(detail::match_supports(ref, moved, 1e-9).deviation, 0.5, 1e-12);
}

TEST(EprSupport, AnticorrelatedModelsHold) {
  for (const char* name : {"scully", "argaman-dilorenzo", "sawtooth", "beltrametti-bugajski"})
    EXPECT_EQ(check_epr_support_constraints(*builtin_model(name), singlet(), grid()).verdict, Verdict::holds) << name;
  EXPECT_EQ(check_epr_support_constraints(*builtin_model("scully-printed-sign"), singlet(), grid()).verdict,
            Verdict::violated);
}

TEST(Determinism, EqualSettingsModeHoldsForLocalAnticorrelatedModels) {
  for (const char* name : {"scully", "argaman-dilorenzo", "sawtooth"}) {
    const auto r = check_determinism_on_support(*builtin_model(name), singlet(), grid(), true);
    EXPECT_EQ(r.verdict, Verdict::holds) << name;
  }
}

TEST(Determinism, ScullyAllSettingsOnlyAliceIsDeterministic) {
  const auto r = check_determinism_on_support(builtin_scully(), singlet(), grid(), false);
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_NEAR(breakdown(r, "alice"), 0.0, 1e-9);
  EXPECT_NEAR(breakdown(r, "bob"), 0.5, 1e-9);
}

TEST(Determinism, OnticStateModelIsNotDeterministic) {
  const auto r = check_determinism_on_support(builtin_beltrametti_bugajski(), singlet(), grid(), true);
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_NEAR(r.max_deviation, 0.5, 1e-12);
}

TEST(BoundedMeans, AllBuiltinsHold) {
  for (const auto& name : builtin_model_names())
    EXPECT_EQ(check_bounded_means(*builtin_model(name), singlet(), grid()).verdict, Verdict::holds) << name;
}

TEST(OracleAgreement, SawtoothDiffersFromCosine) {
  const auto r = check_oracle_agreement(builtin_sawtooth_local(), singlet(), grid());
  EXPECT_EQ(r.verdict, Verdict::violated);
  // Largest gap of (E_saw - E_q) / 4 over the grid; oracle from closed forms.
  double expected = 0.0;
  for (int k = 0; k < 36; ++k) {
    const double d = k * kPi / 18;
    expected = std::max(expected, std::abs(oracle::sawtooth_correlation(d) + std::cos(d)) / 4);
  }
  EXPECT_NEAR(r.max_deviation, expected, 1e-9);
}

TEST(QuotedClosedForm, FlagsSignDiscrepancy) {
  const auto r = check_quoted_closed_form(builtin_scully(), singlet(), grid());
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_NEAR(r.max_deviation, 0.5, 1e-12);
  EXPECT_NE(r.diagnostic.find("sign"), std::string::npos);
  EXPECT_EQ(check_quoted_closed_form(builtin_argaman_dilorenzo(), singlet(), grid()).verdict,
            Verdict::not_applicable);
}

TEST(StateFactorization, SingletIsNotAProduct) {
  const auto r = check_state_factorization(singlet(), grid());
  EXPECT_EQ(r.verdict, Verdict::violated);
  EXPECT_GE(r.max_deviation, 0.25 - 1e-12);
  ASSERT_FALSE(r.witnesses.empty());
  const auto& w = r.witnesses.front();
  EXPECT_NEAR(w.rhs, 0.25, 1e-12);
  EXPECT_NEAR(std::abs(w.lhs - w.rhs), w.deviation, 1e-15);
}

TEST(StateFactorization, ProductStateFactorizes) {
  const auto r = check_state_factorization(TwoQubitState::product_z(Outcome::plus(), Outcome::minus()), grid());
  EXPECT_EQ(r.verdict, Verdict::holds);
}

TEST(FullAudit, NoBuiltinIsLocalAndAccurate) {
  for (const auto& name : builtin_model_names()) {
    const auto reports = full_audit(*builtin_model(name), singlet(), grid());
    bool all = true;
    for (const char* cond : {c::outcome_independence, c::parameter_independence, c::measurement_independence,
                             c::oracle_agreement})
      all = all && find_report(reports, cond)->verdict == Verdict::holds;
    EXPECT_FALSE(all) << name;
  }
}

TEST(FullAudit, ReportsCarryGridAndModelName) {
  const auto reports = full_audit(builtin_scully(), singlet(), grid());
  for (const auto& r : reports) {
    EXPECT_EQ(r.model_name, "scully");
    EXPECT_FALSE(r.grid_spec.empty());
    EXPECT_LE(r.witnesses.size(), AuditOptions{}.max_witnesses);
  }
}

TEST(Expectations, CompareReportsMismatches) {
  const auto reports = full_audit(builtin_scully(), singlet(), grid());
  EXPECT_TRUE(compare_verdicts(reports, expected_verdicts("scully")).empty());
  ExpectedVerdicts wrong{{c::measurement_independence, Verdict::holds}, {"no-such-condition", Verdict::holds}};
  const auto mism = compare_verdicts(reports, wrong);
  ASSERT_EQ(mism.size(), 2u);
}
