#include "sumlab/gp_tree.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "sumlab/operands.hpp"

namespace sumlab {

std::size_t gp_auto_block(std::size_t n) {
  if (n <= 1) return 1;
  const double g = std::ceil(std::sqrt(static_cast<double>(n) * std::log2(static_cast<double>(n))));
  return std::clamp<std::size_t>(static_cast<std::size_t>(g), 1, n);
}

GpResult run_gp(const ThreeSumInstance& inst, const GpOptions& options, ComparisonLedger& ledger) {
  GpResult result;
  const std::size_t n = std::max(inst.a.size(), inst.b.size());
  std::size_t g = options.g == kAutoBlock ? gp_auto_block(n) : options.g;
  if (g < 1 || g > std::max<std::size_t>(n, 1)) throw std::invalid_argument("gp: block size out of range");
  result.stats.g = g;

  OperandSet a = OperandSet::plain(kSetA, inst.a);
  OperandSet b = OperandSet::plain(kSetB, inst.b);
  const OperandSet c = OperandSet::plain(kSetC, inst.c);
  a.sort(ledger);
  b.sort(ledger);
  if (a.size() == 0 || b.size() == 0 || c.size() == 0) return result;

  const BlockPartition pa = partition_blocks(a.size(), g);
  const BlockPartition pb = partition_blocks(b.size(), g);
  const std::size_t ma = pa.count();
  const std::size_t mb = pb.count();
  result.stats.blocks_a = ma;
  result.stats.blocks_b = mb;
  const DifferenceOrder d = sort_difference_set({BlockFamily{&a, pa}, BlockFamily{&b, pb}}, ledger);

  std::vector<std::unique_ptr<BoxOrder>> boxes(ma * mb);
  std::vector<std::size_t> stamp(ma * mb, SIZE_MAX);
  std::vector<std::size_t> visited, previous;

  auto box = [&](std::size_t i, std::size_t j) -> const BoxOrder& {
    auto& slot = boxes[i * mb + j];
    if (!slot) {
      const BlockRef x{0, static_cast<std::uint32_t>(i)};
      const BlockRef y{1, static_cast<std::uint32_t>(j)};
      slot = std::make_unique<BoxOrder>(box_order(d, x, y, ledger));
      ++result.stats.boxes_built;
      result.stats.max_box_cells = std::max(result.stats.max_box_cells, slot->cells.size());
      if (options.audit) options.audit->record(d, x, y, *slot);
    }
    return *slot;
  };

  for (std::size_t l = 0; l < c.size(); ++l) {
    std::size_t lo = 0;
    std::size_t hi = mb;  // one past the current column block
    std::size_t steps = 0;
    visited.clear();
    while (lo < ma && hi > 0) {
      const std::size_t j = hi - 1;
      ++steps;
      stamp[lo * mb + j] = l;
      visited.push_back(lo * mb + j);
      const BoxOrder& order = box(lo, j);
      const std::size_t x0 = pa.begin(lo);
      const std::size_t y0 = pb.begin(j);
      std::size_t left = 0, right = order.cells.size(), tests = 0;
      while (left < right) {
        const std::size_t mid = left + (right - left) / 2;
        const Cell cell = order.cells[mid];
        ++tests;
        const int s = sign_of_sum(a, x0 + cell.p, b, y0 + cell.q, c, l, ledger, phase::box_search);
        if (s == 0) {
          const std::size_t i = a.origin(x0 + cell.p);
          const std::size_t jj = b.origin(y0 + cell.q);
          result.witness = Witness{{i, jj, l}, {inst.a[i], inst.b[jj], inst.c[l]}};
          result.stats.max_box_search = std::max(result.stats.max_box_search, tests);
          result.stats.max_path_steps = std::max(result.stats.max_path_steps, steps);
          return result;
        }
        if (s < 0) {
          left = mid + 1;
        } else {
          right = mid;
        }
      }
      result.stats.max_box_search = std::max(result.stats.max_box_search, tests);
      if (sign_of_sum(a, pa.end(lo) - 1, b, pb.begin(j), c, l, ledger, phase::path) > 0) {
        --hi;
      } else {
        ++lo;
      }
    }
    result.stats.max_path_steps = std::max(result.stats.max_path_steps, steps);
    // C is sorted, so a box left behind by consecutive queries is never revisited.
    for (std::size_t id : previous) {
      if (stamp[id] != l) boxes[id].reset();
    }
    previous.swap(visited);
  }
  return result;
}

std::optional<Witness> solve_gp(const ThreeSumInstance& inst, std::size_t g, ComparisonLedger& ledger) {
  GpOptions options;
  options.g = g;
  return run_gp(inst, options, ledger).witness;
}

}  // namespace sumlab
