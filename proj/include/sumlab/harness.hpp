#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumlab/core.hpp"

namespace sumlab {

enum class Algo { brute, quad, gp, rfc, subq, kldt };

Algo parse_algo(std::string_view name);
std::string_view to_string(Algo algo);

struct RunConfig {
  Algo algo = Algo::quad;
  std::vector<std::size_t> ns{64};
  std::size_t g = kAutoBlock;
  int k = 5;                   // kldt only
  std::vector<Scalar> alphas;  // kldt only; empty draws random coefficients
  Distribution dist = Distribution::uniform;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::size_t oracle_limit = 512;         // triple loop up to this n
  std::size_t two_pointer_limit = 4096;   // two-pointer oracle up to this n
  bool cascade = true;                    // rfc
  bool timing = false;                    // wall_ns stays 0 unless set

  void validate() const;
};

enum class OracleCheck { match, mismatch, skipped };
std::string_view to_string(OracleCheck check);

struct RunRecord {
  Algo algo = Algo::quad;
  std::size_t n = 0;
  std::size_t g = 0;
  int k = 3;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::uint64_t comparisons_total = 0;
  std::vector<std::pair<std::string, std::uint64_t>> comparisons_per_phase;
  int max_arity = 0;
  bool witness_found = false;
  OracleCheck oracle = OracleCheck::skipped;
  std::uint64_t wall_ns = 0;
};

// Instance seed of one trial.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial);

// One record per (n, trial), ordered by n then trial.
std::vector<RunRecord> run(const RunConfig& config);

bool any_mismatch(const std::vector<RunRecord>& records);

// Least-squares slope of log(mean comparisons) against log(n).
double fit_exponent(const std::vector<RunRecord>& records);
double fit_power_law(const std::vector<std::pair<double, double>>& points);

std::string to_csv(const std::vector<RunRecord>& records);
std::string to_json(const std::vector<RunRecord>& records);
std::vector<RunRecord> records_from_csv(std::string_view text);

}  // namespace sumlab
