#pragma once

#include <string>

#include "ranksets/cnf.hpp"

namespace dratcheck {

// Forward DRAT checker, independent of the solver implementation: every added
// clause must be RUP (unit propagation on the accumulated database refutes
// its negation) or RAT on its first literal; deletions shrink the database.
// Returns true iff the trace is well formed and derives the empty clause.
bool check_refutation(const ranksets::CnfFormula& formula, const std::string& trace,
                      std::string* error = nullptr);

}  // namespace dratcheck
