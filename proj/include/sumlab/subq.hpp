#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sumlab/core.hpp"
#include "sumlab/fredman.hpp"
#include "sumlab/ledger.hpp"

namespace sumlab {

// entries[a] = 1-based column of the down step in row a; rows form a prefix,
// columns weakly decrease. The column sum counts cells below the value.
struct PartialContour {
  std::vector<std::uint32_t> entries;

  std::size_t column_sum() const;
  bool operator==(const PartialContour&) const = default;
};

std::vector<PartialContour> enumerate_partial_contours(std::size_t g, std::size_t column_sum);
std::vector<PartialContour> enumerate_partial_contours(std::size_t rows, std::size_t cols, std::size_t column_sum);

// Group k holds the cells of value rank [k s, (k + 1) s). Group data lives in
// the flat arrays of SubqProfiles starting at `first`.
struct BoxProfile {
  std::size_t rows = 0, cols = 0;
  std::size_t first = 0;
  std::size_t groups = 0;
};

struct SubqProfiles {
  std::size_t g = 0, s = 0, h = 0;
  BlockPartition a_part, b_part;
  std::vector<BoxProfile> boxes;          // index i * b_part.count() + j
  std::vector<Cell> splits;               // per group: its rank k s cell
  std::vector<std::uint32_t> group_perm;  // per group: index into perms
  std::vector<std::uint32_t> firings;     // per group: tuples that fired
  std::vector<std::vector<Cell>> perms;   // ascending cell orders, shared between boxes
  std::uint64_t tuples = 0;
  std::uint64_t total_firings = 0;
  std::uint64_t max_dimension = 0;

  const BoxProfile& box(std::size_t i, std::size_t j) const { return boxes[i * b_part.count() + j]; }
  Cell split(const BoxProfile& b, std::size_t k) const { return splits[b.first + k]; }
  const std::vector<Cell>& group(const BoxProfile& b, std::size_t k) const { return perms[group_perm[b.first + k]]; }
};

// s = ceil(g / log2 g), h = ceil(g^2 / s).
std::pair<std::size_t, std::size_t> subq_group_sizes(std::size_t g);

// Uniform-model preprocessing: no ledger comparisons. Throws if some group
// of some box does not fire exactly once.
SubqProfiles build_profiles(const ThreeSumInstance& inst, std::size_t g);

struct SubqStats {
  std::size_t g = 0, s = 0, h = 0;
  std::uint64_t tuples = 0;
  std::uint64_t firings = 0;
  std::uint64_t boxes_searched = 0;
  std::size_t max_probes = 0;   // 3-term tests in one box search
  std::size_t probe_bound = 0;  // ceil(log2(h + 1)) + ceil(log2 s)
};

struct SubqResult {
  std::optional<Witness> witness;
  SubqStats stats;
};

SubqResult run_subq(const ThreeSumInstance& inst, std::size_t g, ComparisonLedger& ledger);
std::optional<Witness> solve_subq(const ThreeSumInstance& inst, std::size_t g, ComparisonLedger& ledger);

}  // namespace sumlab
