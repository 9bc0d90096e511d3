#include "sumlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sumlab/baseline.hpp"
#include "sumlab/gp_tree.hpp"
#include "sumlab/ksum.hpp"
#include "sumlab/ledger.hpp"
#include "sumlab/rfc_tree.hpp"
#include "sumlab/subq.hpp"

namespace sumlab {

namespace {

constexpr std::string_view kAlgoNames[] = {"brute", "quad", "gp", "rfc", "subq", "kldt"};

bool kldt_oracle_feasible(std::size_t n, int k) {
  return std::pow(static_cast<double>(n), k) <= 1e8;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Algo parse_algo(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kAlgoNames); ++i) {
    if (kAlgoNames[i] == name) return static_cast<Algo>(i);
  }
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

std::string_view to_string(Algo algo) { return kAlgoNames[static_cast<std::size_t>(algo)]; }

std::string_view to_string(OracleCheck check) {
  switch (check) {
    case OracleCheck::match: return "match";
    case OracleCheck::mismatch: return "mismatch";
    case OracleCheck::skipped: return "skipped";
  }
  return "skipped";
}

void RunConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (ns.empty()) throw std::invalid_argument("at least one n is required");
  for (auto n : ns) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (g != kAutoBlock && (algo == Algo::gp || algo == Algo::rfc) && g > n) {
      throw std::invalid_argument("g must not exceed n");
    }
  }
  if (algo == Algo::subq && (g < 2 || g > 4)) throw std::invalid_argument("subq requires g in {2, 3, 4}");
  if (algo == Algo::kldt) {
    if (k < 3 || k % 2 == 0) throw std::invalid_argument("k must be odd and at least 3");
    if (!alphas.empty() && alphas.size() != static_cast<std::size_t>(k) + 1) {
      throw std::invalid_argument("alphas must list alpha_0 .. alpha_k");
    }
  }
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial) {
  return mix_seed(mix_seed(seed, n), trial);
}

std::vector<RunRecord> run(const RunConfig& config) {
  config.validate();
  std::vector<RunRecord> out;
  for (std::size_t n : config.ns) {
    for (std::size_t t = 0; t < config.trials; ++t) {
      const std::uint64_t s = trial_seed(config.seed, n, t);
      RunRecord rec;
      rec.algo = config.algo;
      rec.n = n;
      rec.seed = config.seed;
      rec.trial = t;
      rec.k = config.algo == Algo::kldt ? config.k : 3;
      ComparisonLedger ledger;
      const auto start = std::chrono::steady_clock::now();
      std::optional<Witness> w;
      bool valid = true;
      bool expected = false;
      bool checked = false;
      if (config.algo == Algo::kldt) {
        KLdtInstance inst = generate_kldt(config.k, n, s, config.dist);
        if (!config.alphas.empty()) inst = make_kldt_instance(config.k, config.alphas, inst.a);
        const KLdtResult res = run_kldt(inst, config.g, s, ledger);
        w = res.witness;
        rec.g = res.stats.g;
        if (w) valid = is_witness(inst, *w);
        if (kldt_oracle_feasible(n, config.k)) {
          expected = k_ldt_oracle(inst).has_value();
          checked = true;
        }
      } else {
        const ThreeSumInstance inst = generate(config.dist, n, s);
        switch (config.algo) {
          case Algo::brute: w = solve_brute(inst, ledger); break;
          case Algo::quad: w = solve_quadratic(inst, ledger); break;
          case Algo::gp: {
            GpOptions opt;
            opt.g = config.g;
            const GpResult res = run_gp(inst, opt, ledger);
            w = res.witness;
            rec.g = res.stats.g;
            break;
          }
          case Algo::rfc: {
            RfcOptions opt;
            opt.g = config.g;
            opt.seed = s;
            opt.cascade = config.cascade;
            const RfcResult res = run_rfc(inst, opt, ledger);
            w = res.witness;
            rec.g = res.stats.g;
            break;
          }
          case Algo::subq:
            w = solve_subq(inst, config.g, ledger);
            rec.g = config.g;
            break;
          case Algo::kldt: break;
        }
        if (w) valid = is_witness(inst, *w);
        if (n <= config.oracle_limit) {
          expected = three_sum_oracle(inst).has_value();
          checked = true;
        } else if (n <= config.two_pointer_limit) {
          expected = two_pointer_oracle(inst).has_value();
          checked = true;
        }
      }
      const auto stop = std::chrono::steady_clock::now();
      if (config.timing) {
        rec.wall_ns = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
      }
      const LedgerSnapshot snap = ledger.snapshot();
      rec.comparisons_total = snap.total;
      rec.comparisons_per_phase = snap.per_phase;
      rec.max_arity = snap.max_arity;
      rec.witness_found = w.has_value();
      if (!valid) {
        rec.oracle = OracleCheck::mismatch;
      } else if (checked) {
        rec.oracle = expected == rec.witness_found ? OracleCheck::match : OracleCheck::mismatch;
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

bool any_mismatch(const std::vector<RunRecord>& records) {
  return std::any_of(records.begin(), records.end(),
                     [](const RunRecord& r) { return r.oracle == OracleCheck::mismatch; });
}

double fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("fit: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    if (x <= 0 || y <= 0) throw std::invalid_argument("fit: values must be positive");
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(points.size());
  const double den = m * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("fit: n values must differ");
  return (m * sxy - sx * sy) / den;
}

double fit_exponent(const std::vector<RunRecord>& records) {
  std::map<std::size_t, std::pair<double, std::size_t>> by_n;
  for (const auto& r : records) {
    auto& [sum, count] = by_n[r.n];
    sum += static_cast<double>(r.comparisons_total);
    ++count;
  }
  if (by_n.size() < 3) throw std::invalid_argument("fit: need at least 3 distinct n");
  std::vector<std::pair<double, double>> points;
  for (const auto& [n, acc] : by_n) {
    if (acc.second < 5) throw std::invalid_argument("fit: need at least 5 trials per n");
    points.emplace_back(static_cast<double>(n), acc.first / static_cast<double>(acc.second));
  }
  return fit_power_law(points);
}

std::string to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream os;
  os << "algo,n,g,k,seed,trial,comparisons_total,comparisons_per_phase,max_arity,witness_found,oracle,wall_ns\n";
  for (const auto& r : records) {
    os << to_string(r.algo) << ',' << r.n << ',' << r.g << ',' << r.k << ',' << r.seed << ',' << r.trial << ','
       << r.comparisons_total << ',';
    for (std::size_t i = 0; i < r.comparisons_per_phase.size(); ++i) {
      if (i) os << ';';
      os << r.comparisons_per_phase[i].first << '=' << r.comparisons_per_phase[i].second;
    }
    os << ',' << r.max_arity << ',' << (r.witness_found ? 1 : 0) << ',' << to_string(r.oracle) << ',' << r.wall_ns
       << '\n';
  }
  return os.str();
}

std::string to_json(const std::vector<RunRecord>& records) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json phases = nlohmann::ordered_json::object();
    for (const auto& [label, count] : r.comparisons_per_phase) phases[label] = count;
    doc.push_back({{"algo", std::string(to_string(r.algo))},
                   {"n", r.n},
                   {"g", r.g},
                   {"k", r.k},
                   {"seed", r.seed},
                   {"trial", r.trial},
                   {"comparisons_total", r.comparisons_total},
                   {"comparisons_per_phase", phases},
                   {"max_arity", r.max_arity},
                   {"witness_found", r.witness_found},
                   {"oracle", std::string(to_string(r.oracle))},
                   {"wall_ns", r.wall_ns}});
  }
  return doc.dump(2) + "\n";
}

std::vector<RunRecord> records_from_csv(std::string_view text) {
  std::vector<RunRecord> out;
  const auto lines = split(text, '\n');
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split(lines[i], ',');
    if (f.size() != 12) throw std::invalid_argument("csv: expected 12 fields on line " + std::to_string(i + 1));
    RunRecord r;
    r.algo = parse_algo(f[0]);
    r.n = std::stoull(f[1]);
    r.g = std::stoull(f[2]);
    r.k = std::stoi(f[3]);
    r.seed = std::stoull(f[4]);
    r.trial = std::stoull(f[5]);
    r.comparisons_total = std::stoull(f[6]);
    if (!f[7].empty()) {
      for (const auto& item : split(f[7], ';')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("csv: bad phase entry " + item);
        r.comparisons_per_phase.emplace_back(item.substr(0, eq), std::stoull(item.substr(eq + 1)));
      }
    }
    r.max_arity = std::stoi(f[8]);
    r.witness_found = f[9] == "1";
    r.oracle = f[10] == "match" ? OracleCheck::match : f[10] == "mismatch" ? OracleCheck::mismatch : OracleCheck::skipped;
    r.wall_ns = std::stoull(f[11]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sumlab
