#include "doctest.h"

#include <cmath>

#include "sumlab/harness.hpp"

using namespace sumlab;

TEST_CASE("quad runs match the oracle") {
  RunConfig cfg;
  cfg.algo = Algo::quad;
  cfg.ns = {64};
  cfg.trials = 3;
  const auto recs = run(cfg);
  REQUIRE(recs.size() == 3);
  for (const auto& r : recs) {
    CHECK(r.oracle == OracleCheck::match);
    CHECK(r.max_arity == 3);
    CHECK(r.wall_ns == 0);
  }
  CHECK_FALSE(any_mismatch(recs));
}

TEST_CASE("rfc record fields") {
  RunConfig cfg;
  cfg.algo = Algo::rfc;
  cfg.ns = {1024};
  cfg.dist = Distribution::no_solution_parity;
  const auto recs = run(cfg);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].max_arity == 4);
  CHECK(recs[0].g == 32);
  CHECK_FALSE(recs[0].witness_found);
  CHECK(recs[0].oracle == OracleCheck::match);
  std::uint64_t sum = 0;
  for (const auto& [name, count] : recs[0].comparisons_per_phase) sum += count;
  CHECK(sum == recs[0].comparisons_total);
}

TEST_CASE("runs replay for a fixed seed") {
  RunConfig cfg;
  cfg.algo = Algo::gp;
  cfg.ns = {50, 100};
  cfg.trials = 2;
  cfg.seed = 12;
  CHECK(to_csv(run(cfg)) == to_csv(run(cfg)));
  CHECK(trial_seed(12, 50, 0) != trial_seed(12, 50, 1));
}

TEST_CASE("power-law fit") {
  std::vector<std::pair<double, double>> quad, root;
  for (double n : {100.0, 200.0, 400.0, 800.0}) {
    quad.emplace_back(n, n * n);
    root.emplace_back(n, std::pow(n, 1.5));
  }
  CHECK(fit_power_law(quad) == doctest::Approx(2.0));
  CHECK(fit_power_law(root) == doctest::Approx(1.5));

  std::vector<RunRecord> recs;
  for (std::size_t n : {64u, 128u, 256u}) {
    for (std::size_t t = 0; t < 5; ++t) {
      RunRecord r;
      r.n = n;
      r.trial = t;
      r.comparisons_total = n * n;
      recs.push_back(r);
    }
  }
  CHECK(fit_exponent(recs) == doctest::Approx(2.0));
  recs.resize(10);
  CHECK_THROWS(fit_exponent(recs));
}

TEST_CASE("csv round trip") {
  RunConfig cfg;
  cfg.algo = Algo::kldt;
  cfg.ns = {8};
  cfg.trials = 2;
  const auto recs = run(cfg);
  const auto csv = to_csv(recs);
  CHECK(csv.rfind("algo,n,g,k,seed,trial,comparisons_total,comparisons_per_phase,max_arity,witness_found,oracle,wall_ns",
                  0) == 0);
  const auto back = records_from_csv(csv);
  CHECK(to_csv(back) == csv);
  CHECK(back[1].k == 5);
  CHECK_FALSE(to_json(recs).empty());
}

TEST_CASE("configuration validation") {
  RunConfig cfg;
  cfg.algo = Algo::subq;
  cfg.g = 7;
  CHECK_THROWS(cfg.validate());
  cfg.g = 3;
  CHECK_NOTHROW(cfg.validate());
  cfg.trials = 0;
  CHECK_THROWS(cfg.validate());
  CHECK(parse_algo("rfc") == Algo::rfc);
  CHECK_THROWS(parse_algo("bogus"));
}
