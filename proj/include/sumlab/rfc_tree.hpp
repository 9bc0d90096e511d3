#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sumlab/core.hpp"
#include "sumlab/fredman.hpp"
#include "sumlab/ledger.hpp"
#include "sumlab/operands.hpp"

namespace sumlab {

// row: blocks of A, block i receives samples of block i + 1.
// column: blocks of B, block j receives samples of block j - 1.
enum class Direction { row, column };

struct AugmentedKey {
  std::uint32_t element = 0;  // position in the sorted source set
  bool synthetic = false;
  std::uint32_t source_block = 0;

  bool operator==(const AugmentedKey&) const = default;
};

struct AugmentedBlock {
  std::vector<AugmentedKey> keys;  // ascending by element
  Direction direction = Direction::row;
};

// Samples each key of the neighbouring augmented block (or of its original
// keys when `cascade` is false) with probability p. Blocks are visited
// last-to-first for rows and first-to-last for columns; keys in ascending
// order. No comparisons: keys are positions in an already sorted set.
std::vector<AugmentedBlock> build_augmented_blocks(const BlockPartition& partition, Direction direction, double p,
                                                   std::mt19937_64& rng, bool cascade = true);
std::vector<AugmentedBlock> build_augmented_blocks(const BlockPartition& partition, Direction direction, double p,
                                                   std::uint64_t seed, bool cascade = true);

// (position in sorted A, position in sorted B).
struct GlobalCell {
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  bool operator==(const GlobalCell&) const = default;
};

// Sorted catalog of one augmented box A'_i + B'_j with fractional-cascading
// links. row_syn marks cells whose row was sampled from A'_{i+1} (they are
// cells of the box below); col_syn marks cells whose column came from B'_{j-1}
// (cells of the box to the left). prev_* / next_* give the nearest such
// position at or before / at or after each position (-1 or size() if none).
struct BoxCatalog {
  std::size_t i = 0;
  std::size_t j = 0;
  BoxOrder order;
  std::vector<std::uint32_t> inverse;
  std::vector<std::int32_t> prev_row_syn, next_row_syn;
  std::vector<std::int32_t> prev_col_syn, next_col_syn;

  std::size_t size() const { return order.cells.size(); }
};

class CatalogGrid {
 public:
  static constexpr std::uint32_t kFamilyA = 0;
  static constexpr std::uint32_t kFamilyB = 1;
  static constexpr std::uint32_t kFamilyC = 2;

  // a, b, c must be sorted. Sorts D over A', B' and C blocks through the ledger.
  CatalogGrid(const OperandSet& a, const OperandSet& b, const OperandSet& c, std::size_t g, double p,
              std::uint64_t seed, bool cascade, ComparisonLedger& ledger);

  std::size_t rows() const { return a_blocks_.size(); }
  std::size_t cols() const { return b_blocks_.size(); }
  std::size_t g() const { return g_; }
  const std::vector<AugmentedBlock>& a_blocks() const { return a_blocks_; }
  const std::vector<AugmentedBlock>& b_blocks() const { return b_blocks_; }
  const OperandSet& a_aug() const { return a_aug_; }
  const OperandSet& b_aug() const { return b_aug_; }
  const BlockPartition& a_part() const { return a_part_; }
  const BlockPartition& b_part() const { return b_part_; }
  const BlockPartition& c_part() const { return c_part_; }
  const DifferenceOrder& diffs() const { return diffs_; }

  // Zero-comparison derivations.
  BoxCatalog box(std::size_t i, std::size_t j, const ComparisonLedger& ledger, BoxAudit* audit = nullptr) const;
  BoxOrder ac_order(std::size_t i, std::size_t s, const ComparisonLedger& ledger) const;
  BoxOrder bc_order(std::size_t j, std::size_t s, const ComparisonLedger& ledger) const;

  GlobalCell global(std::size_t i, std::size_t j, Cell cell) const;
  // Local cell of box (i, j) holding the given element pair, if present.
  std::optional<Cell> locate(std::size_t i, std::size_t j, GlobalCell cell) const;

 private:
  std::size_t g_;
  std::vector<AugmentedBlock> a_blocks_, b_blocks_;
  OperandSet a_aug_, b_aug_;
  BlockPartition a_part_, b_part_, c_part_;
  DifferenceOrder diffs_;
};

// Bracket carried from one box to the next on a query's path.
struct QueryCursor {
  std::uint32_t c = 0;
  std::uint32_t step = 0;  // index of the current box on the path
  std::optional<GlobalCell> lo;  // largest known cell < -c, if any
  std::optional<GlobalCell> hi;  // smallest known cell > -c, if any
  bool retired = false;
};

struct RfcOptions {
  std::size_t g = kAutoBlock;  // auto: ceil(sqrt(n))
  double p = 0.25;
  std::uint64_t seed = 0;
  bool cascade = true;
  bool halt_on_witness = true;
  BoxAudit* audit = nullptr;
};

struct RfcStats {
  std::size_t g = 0;
  std::size_t blocks_a = 0, blocks_b = 0, blocks_c = 0;
  std::size_t augmented_a_keys = 0, augmented_b_keys = 0;
  std::uint64_t box_orders = 0;
  std::uint64_t box_nonzero_delta = 0;
  std::uint64_t sum_kappa = 0;
  std::uint64_t kappa_bound = 0;          // 2 ceil(n/g) |C|
  std::uint64_t contiguity_violations = 0;
  std::uint64_t merges = 0;
  std::uint64_t merge_bound = 0;          // sum over visited boxes of ceil(kappa/g) + 2
  std::uint64_t brackets = 0;             // arrivals resolved through a gap
  std::uint64_t gap_lines = 0;            // sum of |R_c|
  std::size_t max_gap_lines = 0;
  std::uint64_t start_searches = 0;
  std::uint64_t witnesses = 0;

  double mean_gap_lines() const { return brackets == 0 ? 0.0 : static_cast<double>(gap_lines) / brackets; }
  double mean_augmented_a() const { return blocks_a == 0 ? 0.0 : static_cast<double>(augmented_a_keys) / blocks_a; }
  double mean_augmented_b() const { return blocks_b == 0 ? 0.0 : static_cast<double>(augmented_b_keys) / blocks_b; }
};

struct RfcResult {
  std::optional<Witness> witness;  // first witness found
  RfcStats stats;
};

std::size_t rfc_auto_block(std::size_t n);

// Operand-level entry point (also used by the k-LDT reduction). Witness
// indices are positions in the sorted a, b, c.
RfcResult run_rfc(OperandSet a, OperandSet b, OperandSet c, const RfcOptions& options, ComparisonLedger& ledger);

RfcResult run_rfc(const ThreeSumInstance& inst, const RfcOptions& options, ComparisonLedger& ledger);

std::optional<Witness> solve_rfc(const ThreeSumInstance& inst, std::size_t g, std::uint64_t seed,
                                 ComparisonLedger& ledger);

}  // namespace sumlab
