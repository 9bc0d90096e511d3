#include "doctest.h"

#include "sumlab/subq.hpp"

using namespace sumlab;

TEST_CASE("partial contour enumeration") {
  CHECK(enumerate_partial_contours(1, 1) == std::vector<PartialContour>{PartialContour{{1}}});
  CHECK(enumerate_partial_contours(2, 0) == std::vector<PartialContour>{PartialContour{}});
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  for (std::size_t sum = 0; sum <= 4; ++sum) {
    counts.push_back(enumerate_partial_contours(2, sum).size());
    total += counts.back();
  }
  CHECK(counts == std::vector<std::size_t>{1, 1, 2, 1, 1});
  CHECK(total <= 256);
  for (const auto& pc : enumerate_partial_contours(3, 4, 5)) {
    CHECK(pc.column_sum() == 5);
    CHECK(pc.entries.size() <= 3);
    for (std::size_t t = 1; t < pc.entries.size(); ++t) CHECK(pc.entries[t] <= pc.entries[t - 1]);
  }
  CHECK(enumerate_partial_contours(2, 5).empty());
}

TEST_CASE("group sizes") {
  CHECK(subq_group_sizes(2) == std::pair<std::size_t, std::size_t>{2, 2});
  CHECK(subq_group_sizes(3) == std::pair<std::size_t, std::size_t>{2, 5});
  CHECK(subq_group_sizes(4) == std::pair<std::size_t, std::size_t>{2, 8});
}

TEST_CASE("every group fires exactly once") {
  for (std::size_t g = 2; g <= 4; ++g) {
    const std::size_t n = 48;
    const auto inst = generate_distinct_sums(n, g);
    const auto pr = build_profiles(inst, g);
    CHECK(pr.total_firings == pr.h * (n / g) * (n / g));
  }
}

TEST_CASE("group permutations and split positions equal direct sorting") {
  const auto inst = generate("clustered", 64, 3);
  const std::size_t g = 2;
  const auto pr = build_profiles(inst, g);
  ComparisonLedger ledger;
  auto a = OperandSet::plain(kSetA, inst.a);
  auto b = OperandSet::plain(kSetB, inst.b);
  a.sort(ledger);
  b.sort(ledger);
  const auto d = sort_difference_set({BlockFamily{&a, pr.a_part}, BlockFamily{&b, pr.b_part}}, ledger);
  for (std::uint32_t i = 0; i < pr.a_part.count(); ++i) {
    for (std::uint32_t j = 0; j < pr.b_part.count(); ++j) {
      const auto direct = direct_box_order(d, BlockRef{0, i}, BlockRef{1, j}).cells;
      const auto& box = pr.box(i, j);
      std::vector<Cell> joined;
      for (std::size_t k = 0; k < box.groups; ++k) {
        CHECK(pr.split(box, k) == direct[k * pr.s]);
        CHECK(pr.firings[box.first + k] == 1);
        joined.insert(joined.end(), pr.group(box, k).begin(), pr.group(box, k).end());
      }
      CHECK(joined == direct);
    }
  }
}

TEST_CASE("subq finds a planted witness") {
  ComparisonLedger ledger;
  const auto inst = generate("planted", 128, 1);
  const auto w = solve_subq(inst, 2, ledger);
  REQUIRE(w.has_value());
  CHECK(is_witness(inst, *w));
}

TEST_CASE("subq agrees with the oracle and respects the probe bound") {
  for (std::size_t g = 2; g <= 4; ++g) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto inst = generate("uniform", 1024, seed);
      ComparisonLedger ledger;
      const auto res = run_subq(inst, g, ledger);
      CHECK(res.witness.has_value() == two_pointer_oracle(inst).has_value());
      CHECK(res.stats.max_probes <= res.stats.probe_bound);
      CHECK(ledger.max_arity() <= 4);
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto inst = generate(seed % 2 ? "no-solution-parity" : "clustered", 3 + seed * 7, seed);
      ComparisonLedger ledger;
      const auto res = run_subq(inst, g, ledger);
      CHECK(res.witness.has_value() == three_sum_oracle(inst).has_value());
      CHECK(res.stats.max_probes <= res.stats.probe_bound);
    }
  }
}

TEST_CASE("subq rejects unsupported block sizes") {
  ComparisonLedger ledger;
  const auto inst = generate("uniform", 16, 0);
  CHECK_THROWS(solve_subq(inst, 5, ledger));
  CHECK_THROWS(solve_subq(inst, kAutoBlock, ledger));
}
