#include "doctest.h"

#include <algorithm>
#include <random>

#include "sumlab/dominance.hpp"
#include "sumlab/operands.hpp"

using namespace sumlab;

namespace {

std::vector<DominancePair> brute(const PointSet& ps) {
  std::vector<DominancePair> out;
  for (std::size_t r = 0; r < ps.red.size(); ++r) {
    for (std::size_t b = 0; b < ps.blue.size(); ++b) {
      bool dom = true;
      for (std::size_t t = 0; t < ps.d; ++t) dom = dom && ps.red[r][t] >= ps.blue[b][t];
      if (dom) out.emplace_back(r, b);
    }
  }
  return out;
}

PointSet random_points(std::size_t d, std::size_t reds, std::size_t blues, Scalar range, std::mt19937_64& rng) {
  std::uniform_int_distribution<Scalar> coord(0, range);
  PointSet ps;
  ps.d = d;
  for (std::size_t r = 0; r < reds; ++r) {
    ps.red.emplace_back(d);
    for (auto& x : ps.red.back()) x = coord(rng);
  }
  for (std::size_t b = 0; b < blues; ++b) {
    ps.blue.emplace_back(d);
    for (auto& x : ps.blue.back()) x = coord(rng);
  }
  return ps;
}

}  // namespace

TEST_CASE("dominance examples") {
  CHECK(report_dominances(PointSet{2, {{2, 2}}, {{1, 1}}}) == std::vector<DominancePair>{{0, 0}});
  CHECK(report_dominances(PointSet{2, {{2, 0}}, {{1, 1}}}).empty());
  CHECK(report_dominances(PointSet{2, {{1, 1}}, {{1, 1}}}) == std::vector<DominancePair>{{0, 0}});
  CHECK(report_dominances(PointSet{3, {}, {{1, 1, 1}}}).empty());
  CHECK_THROWS(report_dominances(PointSet{0, {{}, {}}, {{}}}));
}

TEST_CASE("dominance equals brute force") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + trial % 6;
    const auto ps = random_points(d, 20 + trial * 3, 30 + trial * 2, trial % 2 ? 6 : 1000, rng);
    CHECK(report_dominances(ps) == brute(ps));
  }
  const auto big = random_points(5, 64, 64, 9, rng);
  CHECK(report_dominances(big) == brute(big));
}

TEST_CASE("swapping colors and negating gives the transposed pairs") {
  std::mt19937_64 rng(8);
  const auto ps = random_points(4, 50, 40, 5, rng);
  PointSet flipped;
  flipped.d = ps.d;
  for (auto p : ps.blue) {
    for (auto& x : p) x = -x;
    flipped.red.push_back(p);
  }
  for (auto p : ps.red) {
    for (auto& x : p) x = -x;
    flipped.blue.push_back(p);
  }
  auto expect = report_dominances(ps);
  for (auto& [r, b] : expect) std::swap(r, b);
  std::sort(expect.begin(), expect.end());
  CHECK(report_dominances(flipped) == expect);
}

TEST_CASE("rank compression preserves order") {
  const auto ps = rank_compress(1, {{-5}, {100}}, {{7}, {-5}});
  CHECK(ps.red[0][0] == ps.blue[1][0]);
  CHECK(ps.red[0][0] < ps.blue[0][0]);
  CHECK(ps.blue[0][0] < ps.red[1][0]);
}

TEST_CASE("tie breaking orders equal sums by row then column") {
  const auto t = tie_broken({1, 2, 2}, {0, 1});
  std::vector<__int128> sums;
  for (auto x : t.a) for (auto y : t.b) sums.push_back(x + y);
  auto sorted = sums;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  CHECK(sums[1] < sums[2]);  // 1 + 1 before 2 + 0
  CHECK(sums[2] < sums[4]);  // 2 + 0 in row 1 before row 2
}

TEST_CASE("dominance-derived box orders") {
  const auto g1 = solve_a1(generate_distinct_sums(8, 1), 1);
  CHECK(g1.boxes.size() == 64);
  const auto inst = generate_distinct_sums(8, 2);
  const auto g2 = solve_a1(inst, 2);
  CHECK(g2.orderings == 24);
  CHECK(g2.dimension == 3);
  CHECK(std::all_of(g2.firings.begin(), g2.firings.end(), [](auto f) { return f == 1; }));
  ComparisonLedger ledger;
  auto a = OperandSet::plain(kSetA, inst.a);
  auto b = OperandSet::plain(kSetB, inst.b);
  a.sort(ledger);
  b.sort(ledger);
  const auto d = sort_difference_set({BlockFamily{&a, g2.a_part}, BlockFamily{&b, g2.b_part}}, ledger);
  for (std::uint32_t i = 0; i < g2.a_part.count(); ++i) {
    for (std::uint32_t j = 0; j < g2.b_part.count(); ++j) {
      CHECK(g2.boxes[i * g2.b_part.count() + j].cells == direct_box_order(d, BlockRef{0, i}, BlockRef{1, j}).cells);
    }
  }
  CHECK_THROWS(solve_a1(inst, 3));
}

TEST_CASE("dominance-derived box orders with repeated sums") {
  const auto inst = generate("clustered", 17, 4);
  const auto res = solve_a1(inst, 2);
  CHECK(std::all_of(res.firings.begin(), res.firings.end(), [](auto f) { return f == 1; }));
}
