#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sumlab/core.hpp"
#include "sumlab/ledger.hpp"
#include "sumlab/operands.hpp"
#include "sumlab/rfc_tree.hpp"

namespace sumlab {

// Weighted tuple over A: value = sum coef * A[index].
struct TupleSum {
  Scalar value = 0;
  std::vector<std::pair<std::size_t, Scalar>> provenance;  // (input index, coefficient)
};

// Unbalanced 3SUM instance x + y + z = 0 equivalent to a k-LDT instance.
// x and y range over A^((k-1)/2) in lexicographic index order; z[l] is
// alpha_k * A[l] + alpha_0 (alpha_0 kept as a constant).
struct ReducedKLdt {
  int k = 3;
  std::vector<Scalar> a;
  std::vector<TupleSum> x, y, z;
  std::vector<Scalar> z_constant;

  ThreeSumInstance values() const;
  OperandSet operands(std::uint32_t side) const;  // kSetA -> x, kSetB -> y, kSetC -> z
  // k indices into A for the triple (ix, iy, iz).
  std::vector<std::size_t> expand(std::size_t ix, std::size_t iy, std::size_t iz) const;
};

ReducedKLdt reduce_kldt(const KLdtInstance& inst);

struct KLdtResult {
  std::optional<Witness> witness;
  RfcStats stats;
};

// RFC on the reduction with g = ceil(sqrt(|A|)) unless given.
KLdtResult run_kldt(const KLdtInstance& inst, std::size_t g, std::uint64_t seed, ComparisonLedger& ledger);

std::optional<Witness> solve_kldt(const KLdtInstance& inst, std::size_t g, std::uint64_t seed,
                                  ComparisonLedger& ledger);

}  // namespace sumlab
