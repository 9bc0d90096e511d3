#include "doctest.h"

#include <stdexcept>

#include "sumlab/ledger.hpp"
#include "sumlab/operands.hpp"

using namespace sumlab;

namespace {

Operand op(std::uint32_t set, std::uint32_t i) { return Operand{set, i}; }

}  // namespace

TEST_CASE("three-term form evaluates to zero") {
  ComparisonLedger ledger;
  LinearForm f;
  f.add(1, op(0, 0), 2).add(1, op(1, 0), 3).add(1, op(2, 0), -5);
  CHECK(ledger.compare(f, "path") == 0);
  CHECK(ledger.max_arity() == 3);
  CHECK(ledger.total() == 1);
}

TEST_CASE("four-term Fredman form") {
  ComparisonLedger ledger;
  // (a - a') - (b' - b) with (a, a', b, b') = (1, 3, 10, 14)
  LinearForm f;
  f.add(1, op(0, 0), 1).add(-1, op(0, 1), 3).add(-1, op(1, 1), 14).add(1, op(1, 0), 10);
  CHECK(ledger.compare(f, phase::sort_d) == -1);
  CHECK(ledger.max_arity() == 4);
}

TEST_CASE("max arity is the maximum over comparisons") {
  ComparisonLedger ledger;
  LinearForm f2, f4, f3;
  f2.add(1, op(0, 0), 1).add(-1, op(0, 1), 2);
  f4.add(1, op(0, 0), 1).add(-1, op(0, 1), 2).add(1, op(1, 0), 3).add(-1, op(1, 1), 4);
  f3.add(1, op(0, 0), 1).add(1, op(1, 0), 2).add(1, op(2, 0), 3);
  ledger.compare(f2, "a");
  ledger.compare(f4, "b");
  ledger.compare(f3, "c");
  CHECK(ledger.max_arity() == 4);
  const auto snap = ledger.snapshot();
  CHECK(snap.total == 3);
  CHECK(snap.count("a") == 1);
  CHECK(snap.count("b") == 1);
  std::uint64_t sum = 0;
  for (const auto& [label, c] : snap.per_phase) sum += c;
  CHECK(sum == snap.total);
}

TEST_CASE("fresh ledger snapshot is empty") {
  const ComparisonLedger ledger;
  const auto snap = ledger.snapshot();
  CHECK(snap.total == 0);
  CHECK(snap.max_arity == 0);
  CHECK(snap.per_phase.empty());
}

TEST_CASE("constants and coefficients do not count towards arity") {
  ComparisonLedger ledger;
  LinearForm f;
  f.add(3, op(0, 0), 2).add(-2, op(0, 1), 4).add_constant(7);
  CHECK(ledger.compare(f, "x") == 1);
  CHECK(ledger.max_arity() == 2);
}

TEST_CASE("cancelled forms are resolved for free, empty forms are rejected") {
  ComparisonLedger ledger;
  LinearForm f;
  f.add(1, op(0, 2), 5).add(-1, op(0, 2), 5).add_constant(-1);
  CHECK(ledger.compare(f, "x") == -1);
  CHECK(ledger.total() == 0);
  LinearForm empty;
  CHECK_THROWS_AS(ledger.compare(empty, "x"), std::invalid_argument);
}

TEST_CASE("overflow of the wide intermediate is reported") {
  LinearForm f;
  const Scalar big = Scalar{1} << 62;
  for (int i = 0; i < 8; ++i) f.add(big, op(0, static_cast<std::uint32_t>(i)), big);
  ComparisonLedger ledger;
  CHECK_THROWS_AS(ledger.compare(f, "x"), std::overflow_error);
}

TEST_CASE("trace records every comparison when enabled") {
  ComparisonLedger ledger;
  ledger.set_trace(true);
  LinearForm f;
  f.add(1, op(0, 0), 1).add(1, op(1, 0), -1);
  ledger.compare(f, phase::merge);
  REQUIRE(ledger.trace().size() == 1);
  CHECK(ledger.trace()[0].phase == phase::merge);
  CHECK(ledger.trace()[0].sign == 0);
  CHECK(ledger.trace()[0].arity == 2);
}

TEST_CASE("merge sort with tie tracking sorts and flags equal neighbours") {
  std::vector<int> values{5, 1, 3, 3, 9, 1, 1, 7};
  std::vector<std::size_t> items{0, 1, 2, 3, 4, 5, 6, 7};
  int calls = 0;
  auto cmp = [&](std::size_t x, std::size_t y) {
    ++calls;
    return values[x] < values[y] ? -1 : values[x] > values[y] ? 1 : 0;
  };
  const auto eq = merge_sort_tracking_ties(items, cmp, std::less<>{});
  std::vector<int> sorted;
  for (auto i : items) sorted.push_back(values[i]);
  CHECK(sorted == std::vector<int>{1, 1, 1, 3, 3, 5, 7, 9});
  CHECK(items[0] == 1);
  CHECK(items[1] == 5);
  CHECK(items[2] == 6);
  CHECK(eq == std::vector<std::uint8_t>{0, 1, 1, 0, 1, 0, 0, 0});
  CHECK(calls <= 8 * 3);
}

TEST_CASE("operand set sort is counted and stable on ties") {
  ComparisonLedger ledger;
  OperandSet s = OperandSet::plain(kSetA, {4, -1, 4, 0});
  s.sort(ledger);
  CHECK(s.sorted());
  CHECK(s.value(0) == -1);
  CHECK(s.origin(2) == 0);
  CHECK(s.origin(3) == 2);
  CHECK(s.equal_prev(3));
  CHECK_FALSE(s.equal_prev(2));
  CHECK(ledger.count(phase::sort_input) > 0);
  CHECK(ledger.max_arity() == 2);
}

TEST_CASE("same work on two ledgers gives identical snapshots") {
  auto work = [](ComparisonLedger& ledger) {
    OperandSet s = OperandSet::plain(kSetB, {9, 3, 7, 3, 1, 8});
    s.sort(ledger);
  };
  ComparisonLedger x, y;
  work(x);
  work(y);
  CHECK(x.snapshot() == y.snapshot());
}
