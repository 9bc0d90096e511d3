#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sumlab/core.hpp"
#include "sumlab/fredman.hpp"
#include "sumlab/ledger.hpp"

namespace sumlab {

struct GpOptions {
  std::size_t g = kAutoBlock;
  BoxAudit* audit = nullptr;
};

struct GpStats {
  std::size_t g = 0;
  std::size_t blocks_a = 0;
  std::size_t blocks_b = 0;
  std::uint64_t boxes_built = 0;
  std::size_t max_path_steps = 0;      // boxes visited for one c
  std::size_t max_box_search = 0;      // 3-term tests in one box search
  std::size_t max_box_cells = 0;
};

struct GpResult {
  std::optional<Witness> witness;
  GpStats stats;
};

// ceil(sqrt(n log2 n)), clamped to [1, n].
std::size_t gp_auto_block(std::size_t n);

// Blocked staircase: sort D over the A and B blocks, then for each c walk the
// box path, binary-searching -c in each box order. Stops at the first witness.
GpResult run_gp(const ThreeSumInstance& inst, const GpOptions& options, ComparisonLedger& ledger);

std::optional<Witness> solve_gp(const ThreeSumInstance& inst, std::size_t g, ComparisonLedger& ledger);

}  // namespace sumlab
