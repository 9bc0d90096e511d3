#include "doctest.h"

#include <algorithm>

#include "sumlab/baseline.hpp"
#include "sumlab/core.hpp"

using namespace sumlab;

namespace {

// Independent brute force used to check both oracles.
bool has_zero_triple(const ThreeSumInstance& inst) {
  for (auto x : inst.a)
    for (auto y : inst.b)
      for (auto z : inst.c)
        if (x + y + z == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("parity instances are all odd and have no witness") {
  const auto inst = generate("no-solution-parity", 4, 1);
  for (const auto* list : {&inst.a, &inst.b, &inst.c}) {
    CHECK(list->size() == 4);
    for (auto v : *list) CHECK(v % 2 != 0);
  }
  CHECK_FALSE(three_sum_oracle(inst).has_value());
}

TEST_CASE("planted instances have a witness") {
  const auto inst = generate("planted", 8, 7);
  const auto w = three_sum_oracle(inst);
  REQUIRE(w.has_value());
  CHECK(is_witness(inst, *w));
}

TEST_CASE("uniform n=64 seed=3: oracle and quadratic scan agree") {
  const auto inst = generate("uniform", 64, 3);
  ComparisonLedger ledger;
  CHECK(three_sum_oracle(inst).has_value() == solve_quadratic(inst, ledger).has_value());
}

TEST_CASE("generators are deterministic and sorted") {
  for (const char* kind : {"uniform", "planted", "no-solution-parity", "clustered"}) {
    const auto x = generate(kind, 50, 9);
    const auto y = generate(kind, 50, 9);
    CHECK(x.a == y.a);
    CHECK(x.b == y.b);
    CHECK(x.c == y.c);
    CHECK(std::is_sorted(x.a.begin(), x.a.end()));
    CHECK(std::is_sorted(x.c.begin(), x.c.end()));
    CHECK(x.balanced());
  }
  CHECK_THROWS(generate("gaussian", 4, 0));
  CHECK_THROWS(generate("uniform", 0, 0));
}

TEST_CASE("three_sum_oracle examples") {
  auto w = three_sum_oracle(make_instance({1}, {2}, {-3}));
  REQUIRE(w.has_value());
  CHECK(w->indices == std::vector<std::size_t>{0, 0, 0});
  CHECK(w->values == std::vector<Scalar>{1, 2, -3});
  CHECK_FALSE(three_sum_oracle(make_instance({1}, {2}, {4})).has_value());
  const auto inst = make_instance({-5, 1, 4}, {0, 2}, {-6, 3});
  CHECK(three_sum_oracle(inst).has_value() == has_zero_triple(inst));
}

TEST_CASE("two-pointer oracle matches the triple loop") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = generate(seed % 2 ? Distribution::uniform : Distribution::clustered, 1 + seed % 40, seed);
    const auto tp = two_pointer_oracle(inst);
    CHECK(tp.has_value() == has_zero_triple(inst));
    CHECK(three_sum_oracle(inst).has_value() == has_zero_triple(inst));
    if (tp) CHECK(is_witness(inst, *tp));
  }
}

TEST_CASE("k_ldt_oracle examples") {
  auto w = k_ldt_oracle(make_kldt_instance(3, {0, 1, 1, 1}, {-3, 1, 2}));
  REQUIRE(w.has_value());
  CHECK(w->values[0] + w->values[1] + w->values[2] == 0);

  const auto five = make_kldt_instance(5, {0, 1, 1, 1, 1, 1}, {-4, 1});
  w = k_ldt_oracle(five);
  REQUIRE(w.has_value());
  CHECK(is_witness(five, *w));

  const auto weighted = make_kldt_instance(3, {0, 2, 1, -1}, {1, 3, 5});
  w = k_ldt_oracle(weighted);
  REQUIRE(w.has_value());
  CHECK(is_witness(weighted, *w));

  CHECK_THROWS(make_kldt_instance(4, {0, 1, 1, 1, 1}, {1}));
  CHECK_THROWS(make_kldt_instance(3, {0, 1, 0, 1}, {1}));
}

TEST_CASE("parity k-LDT draws have no witness") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK_FALSE(k_ldt_oracle(generate_kldt(5, 8, seed, Distribution::no_solution_parity)).has_value());
  }
}

TEST_CASE("distinct-sums instances have distinct pairwise sums") {
  const auto inst = generate_distinct_sums(40, 3);
  std::vector<Scalar> sums;
  for (auto x : inst.a)
    for (auto y : inst.b) sums.push_back(x + y);
  std::sort(sums.begin(), sums.end());
  CHECK(std::adjacent_find(sums.begin(), sums.end()) == sums.end());
}

TEST_CASE("instance JSON round trip keeps values exact") {
  const auto inst = make_instance({-(Scalar{1} << 39), 3}, {7}, {(Scalar{1} << 39) - 1});
  const auto back = three_sum_from_json(to_json(inst));
  CHECK(back.a == inst.a);
  CHECK(back.b == inst.b);
  CHECK(back.c == inst.c);
  CHECK(to_json(inst).find("\"549755813887\"") != std::string::npos);

  const auto k = generate_kldt(5, 6, 2);
  CHECK(is_kldt_json(to_json(k)));
  const auto kb = kldt_from_json(to_json(k));
  CHECK(kb.k == 5);
  CHECK(kb.alphas == k.alphas);
  CHECK(kb.a == k.a);
}

TEST_CASE("values beyond the scalar bound are rejected") {
  CHECK_THROWS(make_instance({kScalarLimit}, {0}, {0}));
}
