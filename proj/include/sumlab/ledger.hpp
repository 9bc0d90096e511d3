#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumlab/core.hpp"

namespace sumlab {

// Reference to one original input: (set id, index in that set).
struct Operand {
  std::uint32_t set;
  std::uint32_t index;

  bool operator==(const Operand&) const = default;
};

struct Term {
  Scalar coef;
  Operand operand;
  Scalar value;
};

// Affine form over original inputs. Fixed capacity; k-LDT with k <= 9 fits.
class LinearForm {
 public:
  static constexpr std::size_t kCapacity = 32;

  LinearForm() = default;

  LinearForm& add(Scalar coef, Operand operand, Scalar value);
  LinearForm& add_constant(Scalar c);

  std::size_t size() const { return size_; }
  const Term& term(std::size_t i) const { return terms_[i]; }
  __int128 constant() const { return constant_; }

  // Distinct operands whose combined coefficient is nonzero.
  int arity() const;
  // Exact value; throws std::overflow_error if an intermediate leaves 128 bits.
  __int128 evaluate() const;

 private:
  std::array<Term, kCapacity> terms_;
  std::size_t size_ = 0;
  __int128 constant_ = 0;
};

using PhaseId = std::uint32_t;

namespace phase {
inline constexpr PhaseId sort_input = 0;
inline constexpr PhaseId sort_d = 1;
inline constexpr PhaseId path = 2;
inline constexpr PhaseId box_search = 3;
inline constexpr PhaseId merge = 4;
}  // namespace phase

struct LedgerSnapshot {
  std::uint64_t total = 0;
  std::vector<std::pair<std::string, std::uint64_t>> per_phase;  // nonzero phases, in id order
  int max_arity = 0;

  std::uint64_t count(std::string_view label) const;
  bool operator==(const LedgerSnapshot&) const = default;
};

struct TraceEntry {
  PhaseId phase = 0;
  int arity = 0;
  int sign = 0;
};

class ComparisonLedger {
 public:
  ComparisonLedger();

  // Interns a free-form label. The five standard labels are preregistered
  // with the ids in namespace `phase`.
  PhaseId phase_id(std::string_view label);
  const std::string& label(PhaseId id) const { return labels_.at(id); }

  int compare(const LinearForm& form, PhaseId phase);
  int compare(const LinearForm& form, std::string_view label) { return compare(form, phase_id(label)); }

  // Sign of a form whose terms cancel entirely; never counted.
  static int free_sign(const LinearForm& form);

  LedgerSnapshot snapshot() const;
  std::uint64_t total() const { return total_; }
  std::uint64_t count(PhaseId id) const { return id < counts_.size() ? counts_[id] : 0; }
  int max_arity() const { return max_arity_; }

  void set_trace(bool enabled) { trace_enabled_ = enabled; }
  bool trace_enabled() const { return trace_enabled_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  int max_arity_ = 0;
  bool trace_enabled_ = false;
  std::vector<TraceEntry> trace_;
};

// Stable bottom-up merge of presorted runs. `cmp(x, y)` is the counted
// three-way comparison of the values; value ties fall back to `key_less`.
// `run_starts` lists the first index of every run (must begin with 0).
// `equal_prev` holds per item "same value as its predecessor in its run";
// on return it describes the merged order. Tie tracking costs nothing
// extra: every merge step already compared the two heads.
template <class T, class Cmp, class KeyLess>
void merge_runs_tracking_ties(std::vector<T>& items, std::vector<std::size_t> run_starts,
                              std::vector<std::uint8_t>& equal_prev, Cmp&& cmp, KeyLess&& key_less) {
  const std::size_t n = items.size();
  if (n == 0) return;
  equal_prev.resize(n, 0);
  if (run_starts.empty() || run_starts.front() != 0) run_starts.insert(run_starts.begin(), 0);
  run_starts.push_back(n);
  std::vector<T> buf(n);
  std::vector<std::uint8_t> buf_eq(n);
  while (run_starts.size() > 2) {
    std::vector<std::size_t> next{0};
    for (std::size_t r = 0; r + 1 < run_starts.size(); r += 2) {
      const std::size_t lo = run_starts[r];
      const std::size_t mid = run_starts[r + 1];
      if (r + 2 >= run_starts.size()) {
        std::copy(items.begin() + static_cast<std::ptrdiff_t>(lo), items.end(),
                  buf.begin() + static_cast<std::ptrdiff_t>(lo));
        std::copy(equal_prev.begin() + static_cast<std::ptrdiff_t>(lo), equal_prev.end(),
                  buf_eq.begin() + static_cast<std::ptrdiff_t>(lo));
        next.push_back(n);
        break;
      }
      const std::size_t hi = run_starts[r + 2];
      std::size_t i = lo, j = mid, out = lo;
      int last_from = -1;  // 0 left, 1 right
      int last_sign = 1;
      while (i < mid && j < hi) {
        int s = cmp(items[i], items[j]);
        const bool left = s < 0 || (s == 0 && key_less(items[i], items[j]));
        const int from = left ? 0 : 1;
        const std::size_t src = left ? i : j;
        std::uint8_t eq = 0;
        if (out == lo) {
          eq = 0;
        } else if (from == last_from) {
          eq = equal_prev[src];
        } else {
          eq = last_sign == 0;
        }
        buf[out] = items[src];
        buf_eq[out] = eq;
        ++out;
        last_from = from;
        last_sign = s;
        if (left) ++i; else ++j;
      }
      auto drain = [&](std::size_t& k, std::size_t end, int from) {
        for (; k < end; ++k) {
          std::uint8_t eq = 0;
          if (out == lo) eq = 0;
          else if (from == last_from) eq = equal_prev[k];
          else eq = last_sign == 0;
          buf[out] = items[k];
          buf_eq[out] = eq;
          ++out;
          last_from = from;
        }
      };
      drain(i, mid, 0);
      drain(j, hi, 1);
      next.push_back(hi);
    }
    items.swap(buf);
    equal_prev.swap(buf_eq);
    run_starts.swap(next);
  }
  if (!equal_prev.empty()) equal_prev[0] = 0;
}

template <class T, class Cmp, class KeyLess>
std::vector<std::uint8_t> merge_sort_tracking_ties(std::vector<T>& items, Cmp&& cmp, KeyLess&& key_less) {
  std::vector<std::size_t> starts(items.size());
  for (std::size_t i = 0; i < starts.size(); ++i) starts[i] = i;
  std::vector<std::uint8_t> eq(items.size(), 0);
  merge_runs_tracking_ties(items, std::move(starts), eq, cmp, key_less);
  return eq;
}

}  // namespace sumlab
