#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sumlab/ledger.hpp"

namespace sumlab {

inline constexpr std::uint32_t kSetA = 0;
inline constexpr std::uint32_t kSetB = 1;
inline constexpr std::uint32_t kSetC = 2;

// One side of a (possibly reduced) 3SUM instance. Element e has value
// sum(coef * input) + constant over `width` provenance terms; `origin` is the
// element's id in the list it was built from and serves as the tie-break key.
class OperandSet {
 public:
  OperandSet() = default;
  explicit OperandSet(std::size_t width) : width_(width) {}

  // Element i is the original input (set_id, i).
  static OperandSet plain(std::uint32_t set_id, const std::vector<Scalar>& values);

  void push(Scalar constant, std::span<const Term> terms, std::uint32_t origin);

  std::size_t size() const { return values_.size(); }
  std::size_t width() const { return width_; }
  Scalar value(std::size_t pos) const { return values_[pos]; }
  const std::vector<Scalar>& values() const { return values_; }
  std::uint32_t origin(std::size_t pos) const { return origin_[pos]; }
  std::span<const Term> terms(std::size_t pos) const { return {terms_.data() + pos * width_, width_}; }

  // After sort() or gather(): value(pos) == value(pos - 1), known without a test.
  bool equal_prev(std::size_t pos) const { return !equal_prev_.empty() && equal_prev_[pos] != 0; }
  bool has_tie_flags() const { return !equal_prev_.empty() || values_.empty(); }
  bool sorted() const { return sorted_; }

  // Copies src[positions[k]] in order. src must be sorted; tie flags carry
  // over wherever positions ascend. No comparisons.
  static OperandSet gather(const OperandSet& src, const std::vector<std::uint32_t>& positions);

  // Appends sign * element(pos) to the form.
  void append(LinearForm& form, std::size_t pos, Scalar sign) const {
    const Term* t = terms_.data() + pos * width_;
    for (std::size_t k = 0; k < width_; ++k) form.add(sign * t[k].coef, t[k].operand, t[k].value);
    if (constants_[pos] != 0) form.add_constant(sign * constants_[pos]);
  }

  // Ledger-counted merge sort by (value, origin) using 2-element forms.
  void sort(ComparisonLedger& ledger, PhaseId phase = phase::sort_input);

 private:
  std::size_t width_ = 1;
  std::vector<Scalar> values_;
  std::vector<Scalar> constants_;
  std::vector<std::uint32_t> origin_;
  std::vector<Term> terms_;
  std::vector<std::uint8_t> equal_prev_;
  bool sorted_ = false;
};

// sign(x + y + z) for three elements, counted in `phase`.
int sign_of_sum(const OperandSet& x, std::size_t px, const OperandSet& y, std::size_t py, const OperandSet& z,
                std::size_t pz, ComparisonLedger& ledger, PhaseId phase);

}  // namespace sumlab
