#include "doctest.h"

#include <map>
#include <random>

#include "sumlab/baseline.hpp"

using namespace sumlab;

using Positions = std::vector<std::pair<std::size_t, std::size_t>>;

TEST_CASE("quadratic scan finds 1 + 20 - 21") {
  ComparisonLedger ledger;
  const auto w = solve_quadratic(make_instance({1, 2}, {10, 20}, {-21}), ledger);
  REQUIRE(w.has_value());
  CHECK(w->values == std::vector<Scalar>{1, 20, -21});
  CHECK(ledger.max_arity() == 3);
}

TEST_CASE("quadratic scan: parity none, uniform equals oracle") {
  ComparisonLedger ledger;
  CHECK_FALSE(solve_quadratic(generate("no-solution-parity", 100, 4), ledger).has_value());
  const auto inst = generate("uniform", 128, 5);
  CHECK(solve_quadratic(inst, ledger).has_value() == three_sum_oracle(inst).has_value());
}

TEST_CASE("quadratic and brute agree with the oracle") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = generate(seed % 3 == 0 ? "planted" : "uniform", 1 + seed % 30, seed);
    const bool expect = three_sum_oracle(inst).has_value();
    ComparisonLedger l1, l2;
    const auto q = solve_quadratic(inst, l1);
    const auto b = solve_brute(inst, l2);
    CHECK(q.has_value() == expect);
    CHECK(b.has_value() == expect);
    if (q) CHECK(is_witness(inst, *q));
    if (b) CHECK(is_witness(inst, *b));
    // The scan makes at most |A| + |B| steps per c.
    CHECK(l1.count(phase::path) <= inst.c.size() * (inst.a.size() + inst.b.size()));
  }
}

TEST_CASE("contour examples") {
  ComparisonLedger ledger;
  CHECK(contour(15, {1, 2}, {10, 20}, ledger).positions == Positions{{0, 1}, {0, 0}, {1, 0}});
  CHECK(contour(0, {1, 2}, {10, 20, 30}, ledger).positions == Positions{{0, 2}, {0, 1}, {0, 0}});
  CHECK(contour(100, {1, 2, 3}, {10, 20}, ledger).positions == Positions{{0, 1}, {1, 1}, {2, 1}});
  CHECK(ledger.max_arity() == 2);
}

TEST_CASE("contours of smaller values never pass below larger ones") {
  std::mt19937_64 rng(2024);
  std::size_t violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t na = 1 + rng() % 30, nb = 1 + rng() % 30;
    std::vector<Scalar> a(na), b(nb);
    for (auto& v : a) v = static_cast<Scalar>(rng() % 200) - 100;
    for (auto& v : b) v = static_cast<Scalar>(rng() % 200) - 100;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    Scalar x = static_cast<Scalar>(rng() % 500) - 250;
    Scalar y = static_cast<Scalar>(rng() % 500) - 250;
    if (x == y) ++y;
    if (x > y) std::swap(x, y);
    ComparisonLedger ledger;
    const auto cx = contour(x, a, b, ledger).positions;
    const auto cy = contour(y, a, b, ledger).positions;
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> rx, ry;  // column -> (min row, max row)
    for (auto [lo, hi] : cx) {
      auto [it, fresh] = rx.try_emplace(hi, lo, lo);
      it->second.first = std::min(it->second.first, lo);
      it->second.second = std::max(it->second.second, lo);
    }
    for (auto [lo, hi] : cy) {
      auto [it, fresh] = ry.try_emplace(hi, lo, lo);
      it->second.first = std::min(it->second.first, lo);
      it->second.second = std::max(it->second.second, lo);
    }
    for (const auto& [col, r] : rx) {
      auto it = ry.find(col);
      if (it == ry.end()) continue;
      if (r.first > it->second.first || r.second > it->second.second) ++violations;
    }
  }
  CHECK(violations == 0);
}
