#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sumlab/core.hpp"
#include "sumlab/ledger.hpp"

namespace sumlab {

// Positions (lo, hi) visited by the staircase scan; hi == -1 never appears.
struct Contour {
  std::vector<std::pair<std::size_t, std::size_t>> positions;
};

// Triple loop through the ledger (phase "scan"); stops at the first witness.
std::optional<Witness> solve_brute(const ThreeSumInstance& inst, ComparisonLedger& ledger);

// Two-pointer scan over every c. Keeps scanning after a witness (hi moves on
// equality) and returns the first one found.
std::optional<Witness> solve_quadratic(const ThreeSumInstance& inst, ComparisonLedger& ledger);

// Staircase trace of searching x in A + B; one 2-term test per step.
Contour contour(Scalar x, const std::vector<Scalar>& a, const std::vector<Scalar>& b, ComparisonLedger& ledger);

}  // namespace sumlab
