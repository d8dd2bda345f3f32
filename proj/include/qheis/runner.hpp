#pragma once

#include <iosfwd>
#include <vector>

#include "qheis/config.hpp"

namespace qheis {

struct RunOutcome {
  double max_pair_deviation = 0.0;
  bool tolerance_breached = false;
};

// Executes the configured scenario with every selected engine and writes a
// deterministic CSV: echoed config header, one column block per engine,
// pairwise deviation columns. Numbers use 17 significant digits.
RunOutcome run_to_csv(const RunConfig& cfg, std::ostream& out);

// One CSV block per q value (in input order, blank-line separated). Points
// a scenario rejects are skipped with a warning line instead of a block.
RunOutcome sweep_to_csv(const RunConfig& cfg, const std::vector<double>& q_values,
                        std::ostream& out);

}  // namespace qheis
