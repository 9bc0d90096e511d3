#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "sumlab/ledger.hpp"
#include "sumlab/operands.hpp"

namespace sumlab {

// Consecutive slices [starts[b], starts[b + 1]) of a sorted operand set.
class BlockPartition {
 public:
  BlockPartition() = default;
  explicit BlockPartition(std::vector<std::size_t> starts);

  std::size_t count() const { return starts_.empty() ? 0 : starts_.size() - 1; }
  std::size_t begin(std::size_t b) const { return starts_[b]; }
  std::size_t end(std::size_t b) const { return starts_[b + 1]; }
  std::size_t size(std::size_t b) const { return starts_[b + 1] - starts_[b]; }
  std::size_t total() const { return starts_.empty() ? 0 : starts_.back(); }
  std::size_t block_of(std::size_t pos) const;
  std::size_t max_size() const;
  const std::vector<std::size_t>& starts() const { return starts_; }

 private:
  std::vector<std::size_t> starts_;
};

// Blocks of g consecutive elements; only the last may be shorter.
BlockPartition partition_blocks(std::size_t n, std::size_t g);

struct BlockFamily {
  const OperandSet* set = nullptr;
  BlockPartition blocks;
};

// x[p] - x[q] for positions p, q of one block of family `family`.
struct DiffRef {
  std::uint32_t family = 0;
  std::uint32_t p = 0;
  std::uint32_t q = 0;

  bool operator==(const DiffRef&) const = default;
};

struct BlockRef {
  std::uint32_t family = 0;
  std::uint32_t block = 0;
};

// Sorted union of the within-block difference sets of several families.
// Every difference gets an integer class: equal values share a class, larger
// values have larger classes, zero is class 0 and x[q]-x[p] = -(x[p]-x[q]).
class DifferenceOrder {
 public:
  std::size_t family_count() const { return families_.size(); }
  const BlockFamily& family(std::size_t f) const { return families_[f]; }

  std::int32_t value_class(std::uint32_t family, std::size_t p, std::size_t q) const;
  // Local-coordinate lookup for block b: row p, column q of its class table.
  const std::int32_t* class_table(BlockRef block) const;

  // Total order by (value, family, p, q).
  int compare(const DiffRef& x, const DiffRef& y) const;
  // Materialized order over every within-block pair, diagonal included.
  std::vector<DiffRef> entries() const;
  std::size_t rank(const DiffRef& d) const;
  // Number of sorted positive differences (the ledger-sorted part).
  std::size_t sorted_size() const { return sorted_size_; }

 private:
  friend DifferenceOrder sort_difference_set(std::vector<BlockFamily> families, ComparisonLedger& ledger);

  std::vector<BlockFamily> families_;
  std::vector<std::vector<std::int32_t>> tables_;
  std::vector<std::vector<std::size_t>> offsets_;
  std::size_t sorted_size_ = 0;
};

// Ledger-sorts x[p] - x[q] (p > q in a block) over all families with 4-term
// forms in phase "sort-D". Rows of one block are already sorted runs, so the
// sort merges those runs. Families must be sorted within each block.
DifferenceOrder sort_difference_set(std::vector<BlockFamily> families, ComparisonLedger& ledger);

struct Cell {
  std::uint32_t p = 0;
  std::uint32_t q = 0;

  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell&) const = default;
};

struct BoxOrder {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Cell> cells;       // ascending by (sum, p, q)
  std::uint64_t ledger_delta = 0;

  // Position of each cell in `cells`, indexed p * cols + q.
  std::vector<std::uint32_t> inverse() const;
};

// Fredman comparator for the box X_b + Y_b': resolved by difference classes.
class BoxComparator {
 public:
  BoxComparator(const DifferenceOrder& d, BlockRef x, BlockRef y);

  bool less(Cell u, Cell v) const {
    if (u.p == v.p) return u.q < v.q;
    const std::int32_t cx = x_[u.p * rows_ + v.p];
    const std::int32_t cy = y_[v.q * cols_ + u.q];
    if (cx != cy) return cx < cy;
    return u < v;
  }
  bool equal_sum(Cell u, Cell v) const { return x_[u.p * rows_ + v.p] == y_[v.q * cols_ + u.q]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::int32_t* x_table() const { return x_; }
  const std::int32_t* y_table() const { return y_; }

 private:
  const std::int32_t* x_;
  const std::int32_t* y_;
  std::size_t rows_;
  std::size_t cols_;
};

// Sorting permutation of X_b + Y_b', derived without ledger comparisons.
// `ledger_delta` records the ledger movement across the call (always 0).
BoxOrder box_order(const DifferenceOrder& d, BlockRef x, BlockRef y, const ComparisonLedger& ledger);

// Observer for every box order an algorithm derives.
struct BoxAudit {
  std::uint64_t boxes = 0;
  std::uint64_t nonzero_delta = 0;
  std::function<void(const DifferenceOrder&, BlockRef, BlockRef, const BoxOrder&)> on_box;

  void record(const DifferenceOrder& d, BlockRef x, BlockRef y, const BoxOrder& order) {
    ++boxes;
    if (order.ledger_delta != 0) ++nonzero_delta;
    if (on_box) on_box(d, x, y, order);
  }
};

// Reference sort of the same box by exact sums (test oracle).
BoxOrder direct_box_order(const DifferenceOrder& d, BlockRef x, BlockRef y);

}  // namespace sumlab
