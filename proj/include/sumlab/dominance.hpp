#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "sumlab/core.hpp"
#include "sumlab/fredman.hpp"

namespace sumlab {

struct PointSet {
  std::size_t d = 0;
  std::vector<std::vector<Scalar>> red;
  std::vector<std::vector<Scalar>> blue;
};

using DominancePair = std::pair<std::size_t, std::size_t>;  // (red index, blue index)

// Every pair with red >= blue in all d coordinates, sorted ascending.
// Divide and conquer on the last active coordinate; brute force at <= 32 points.
std::vector<DominancePair> report_dominances(const PointSet& ps);

// Replaces each coordinate by its rank among all points (order preserving).
PointSet rank_compress(std::size_t d, const std::vector<std::vector<__int128>>& red,
                       const std::vector<std::vector<__int128>>& blue);

// Scaled copies of sorted A and B whose pairwise sums are all distinct and
// order ties of the real sums by (row, column).
struct TieBrokenValues {
  std::vector<__int128> a;
  std::vector<__int128> b;
};
TieBrokenValues tie_broken(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

// Box orders of every A_i + B_j found by enumerating all orderings of the
// cells and reporting, per ordering, which (A block, B block) pairs it sorts.
struct A1Result {
  std::size_t g = 0;
  BlockPartition a_part, b_part;
  std::vector<BoxOrder> boxes;         // index i * b_part.count() + j
  std::vector<std::uint32_t> firings;  // orderings that fired per box
  std::uint64_t orderings = 0;
  std::uint64_t dimension = 0;         // coordinates per point for full boxes
};

A1Result solve_a1(const ThreeSumInstance& inst, std::size_t g);

}  // namespace sumlab
