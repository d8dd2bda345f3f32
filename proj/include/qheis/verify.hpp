#pragma once

#include <string>
#include <vector>

#include "qheis/qsymb.hpp"

namespace qheis {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  // Acceptance criterion this check feeds (1..8); 0 for extra invariants.
  int criterion = 0;
};

struct VerifyOptions {
  // Test hook: substitute rule set for the position-momentum sector.
  const symb::RuleSet* pm_override = nullptr;
};

// Runs the module invariant suite and the golden-identity corpus.
// Deterministic (fixed seeds); deviations beyond tolerance fail the check.
std::vector<CheckResult> run_verification_suite(const VerifyOptions& opts = {});

// Three-convention comparison for the linear-Hamiltonian brackets: the
// canonical result under the plain, (1,q) and (q^{1/2},q^{-1/2}) weights
// next to the stated targets. Informational; printed, never asserted.
std::string bracket_convention_table();

}  // namespace qheis
