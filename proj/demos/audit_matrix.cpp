// Prints the locality verdicts of every built-in model on the singlet.

#include <cstdio>

#include "bellaudit/bellaudit.hpp"

int main() {
  using namespace bellaudit;
  const auto grid = SettingsGrid::default_planar();
  const char* columns[] = {condition::outcome_independence, condition::parameter_independence,
                           condition::measurement_independence, condition::oracle_agreement};
  std::printf("%-22s %-10s %-10s %-10s %-10s\n", "model", "OI", "PI", "MI", "oracle");
  for (const auto& name : builtin_model_names()) {
    const auto reports = full_audit(*builtin_model(name), singlet(), grid);
    std::printf("%-22s", name.c_str());
    for (const char* cond : columns) std::printf(" %-10s", to_string(find_report(reports, cond)->verdict));
    std::printf("\n");
  }
}
