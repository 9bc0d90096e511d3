#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sumlab/baseline.hpp"
#include "sumlab/core.hpp"
#include "sumlab/gp_tree.hpp"
#include "sumlab/harness.hpp"
#include "sumlab/ksum.hpp"
#include "sumlab/rfc_tree.hpp"
#include "sumlab/subq.hpp"

namespace {

using namespace sumlab;

std::size_t parse_g(const std::string& text) {
  if (text == "auto") return kAutoBlock;
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(text, &pos);
  if (pos != text.size() || v == 0) throw std::invalid_argument("--g must be a positive integer or auto");
  return static_cast<std::size_t>(v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

nlohmann::ordered_json snapshot_json(const LedgerSnapshot& snap) {
  nlohmann::ordered_json phases = nlohmann::ordered_json::object();
  for (const auto& [label, count] : snap.per_phase) phases[label] = count;
  return {{"total", snap.total}, {"per_phase", phases}, {"max_arity", snap.max_arity}};
}

nlohmann::ordered_json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  nlohmann::ordered_json values = nlohmann::ordered_json::array();
  for (auto v : w->values) values.push_back(std::to_string(v));
  return {{"indices", w->indices}, {"values", values}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sumlab: instrumented 3SUM / k-SUM / k-LDT lab"};
  app.require_subcommand(0, 1);

  std::string algo = "quad", dist = "uniform", g_text = "auto", out_path, format = "csv";
  std::vector<std::size_t> ns{64};
  std::vector<Scalar> alphas;
  int k = 5;
  std::uint64_t seed = 0;
  std::size_t trials = 1, oracle_limit = 512;
  bool timing = false, no_cascade = false;
  app.add_option("--algo", algo, "brute, quad, gp, rfc, subq or kldt");
  app.add_option("--n", ns, "input size(s), comma separated")->delimiter(',');
  app.add_option("--g", g_text, "block size or auto");
  app.add_option("--k", k, "k for kldt (odd, >= 3)");
  app.add_option("--alphas", alphas, "alpha_0..alpha_k, comma separated")->delimiter(',');
  app.add_option("--dist", dist, "uniform, planted, no-solution-parity or clustered");
  app.add_option("--seed", seed, "base seed");
  app.add_option("--trials", trials, "trials per n");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--oracle-limit", oracle_limit, "largest n checked with the triple-loop oracle");
  app.add_flag("--timing", timing, "record wall-clock time");
  app.add_flag("--no-cascade", no_cascade, "rfc: sample original keys only");

  auto* gen = app.add_subcommand("gen", "write a generated instance as JSON");
  std::size_t gen_n = 16;
  std::string gen_dist = "uniform", gen_out;
  std::uint64_t gen_seed = 0;
  int gen_k = 0;
  gen->add_option("--n", gen_n, "input size");
  gen->add_option("--dist", gen_dist, "distribution");
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--k", gen_k, "emit a k-LDT instance with this k");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "solve one instance file and print the ledger");
  std::string solve_in, solve_algo = "rfc", solve_g = "auto";
  std::uint64_t solve_seed = 0;
  solve->add_option("--in", solve_in, "instance JSON")->required();
  solve->add_option("--algo", solve_algo, "brute, quad, gp, rfc, subq or kldt");
  solve->add_option("--g", solve_g, "block size or auto");
  solve->add_option("--seed", solve_seed, "sampling seed (rfc, kldt)");

  auto* fit = app.add_subcommand("fit", "fit the growth exponent of a results CSV");
  std::string fit_in;
  fit->add_option("--in", fit_in, "CSV produced by a run")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Distribution d = parse_distribution(gen_dist);
      const std::string text = gen_k > 0 ? to_json(generate_kldt(gen_k, gen_n, gen_seed, d))
                                         : to_json(generate(d, gen_n, gen_seed));
      write_output(gen_out, text + "\n");
      return 0;
    }
    if (*fit) {
      const auto records = records_from_csv(read_file(fit_in));
      std::cout << fit_exponent(records) << "\n";
      return 0;
    }
    if (*solve) {
      const std::string text = read_file(solve_in);
      const Algo a = parse_algo(solve_algo);
      const std::size_t g = parse_g(solve_g);
      ComparisonLedger ledger;
      std::optional<Witness> w;
      bool expected = false, valid = true;
      if (is_kldt_json(text)) {
        if (a != Algo::kldt) throw std::invalid_argument("k-LDT instances need --algo kldt");
        const KLdtInstance inst = kldt_from_json(text);
        w = solve_kldt(inst, g, solve_seed, ledger);
        expected = k_ldt_oracle(inst).has_value();
        if (w) valid = is_witness(inst, *w);
      } else {
        const ThreeSumInstance inst = three_sum_from_json(text);
        switch (a) {
          case Algo::brute: w = solve_brute(inst, ledger); break;
          case Algo::quad: w = solve_quadratic(inst, ledger); break;
          case Algo::gp: w = solve_gp(inst, g, ledger); break;
          case Algo::rfc: w = solve_rfc(inst, g, solve_seed, ledger); break;
          case Algo::subq:
            if (g < 2 || g > 4) throw std::invalid_argument("subq requires --g in {2, 3, 4}");
            w = solve_subq(inst, g, ledger);
            break;
          case Algo::kldt: throw std::invalid_argument("--algo kldt needs a k-LDT instance");
        }
        expected = two_pointer_oracle(inst).has_value();
        if (w) valid = is_witness(inst, *w);
      }
      const bool ok = valid && expected == w.has_value();
      nlohmann::ordered_json doc = {{"algo", solve_algo},
                                    {"witness", witness_json(w)},
                                    {"oracle", ok ? "match" : "mismatch"},
                                    {"ledger", snapshot_json(ledger.snapshot())}};
      std::cout << doc.dump(2) << "\n";
      return ok ? 0 : 2;
    }

    RunConfig config;
    config.algo = parse_algo(algo);
    config.ns = ns;
    config.g = parse_g(g_text);
    config.k = k;
    config.alphas = alphas;
    config.dist = parse_distribution(dist);
    config.seed = seed;
    config.trials = trials;
    config.oracle_limit = oracle_limit;
    config.cascade = !no_cascade;
    config.timing = timing;
    const auto records = run(config);
    write_output(out_path, format == "json" ? to_json(records) : to_csv(records));
    return any_mismatch(records) ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
