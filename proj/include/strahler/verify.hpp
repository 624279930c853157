#pragma once

#include <functional>
#include <string>
#include <vector>

namespace strahler {

struct VerifyConfig {
  // Caps the magnitudes of the enumeration-bound checks (oracle equivalence
  // and preimage multiplicity).
  int max_n = 12;
  // Test hook: id of a check whose measured quantity gets perturbed.
  std::string corrupt;
};

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceCheck {
  std::string id;
  std::string name;
  std::function<CheckResult(const VerifyConfig&)> run;
};

// The acceptance criteria, in order C1..C10.
const std::vector<AcceptanceCheck>& acceptance_checks();

std::vector<CheckResult> run_acceptance(const VerifyConfig& config,
                                        const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace strahler
