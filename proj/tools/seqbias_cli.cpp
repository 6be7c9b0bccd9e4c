// seqbias command-line tool: simulate, correct, bench, oracle.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "seqbias/csv.hpp"
#include "seqbias/estimator.hpp"
#include "seqbias/experiments.hpp"
#include "seqbias/metrics.hpp"
#include "seqbias/model.hpp"
#include "seqbias/ostree.hpp"

namespace {

using namespace seqbias;
using Clock = std::chrono::steady_clock;

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

// Thrown for flag combinations CLI11 cannot reject on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ScoreTable load_table(const std::string& path) {
  return path.empty() ? ScoreTable::parametric() : ScoreTable::load_csv(path);
}

struct SimulateArgs {
  std::string sweep = "vary_delta";
  std::vector<std::size_t> ns;
  std::vector<double> deltas;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string noise = "uniform";
  std::string out = ".";
  std::string table;
  std::size_t threads = 0;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

// Fills options that were not given on the command line from `key=value` lines.
void apply_config_file(CLI::App& cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key(trim(text.substr(0, eq)));
    const std::string value(trim(text.substr(eq + 1)));
    CLI::Option* opt = nullptr;
    try {
      opt = cmd.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (key == "config") throw UsageError(path + ": config files cannot nest");
    if (opt->count() > 0) continue;
    try {
      opt->add_result(value);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

int run_simulate(const SimulateArgs& args) {
  ExperimentConfig cfg;
  try {
    cfg.sweep = parse_sweep_kind(args.sweep);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (args.noise == "none") {
    cfg.noise = NoiseSpec::Kind::none;
  } else if (args.noise == "uniform") {
    cfg.noise = NoiseSpec::Kind::uniform;
  } else {
    throw UsageError("--noise must be 'none' or 'uniform' for simulations");
  }
  cfg.n_values = args.ns;
  cfg.deltas = args.deltas;
  cfg.trials = args.trials;
  cfg.seed = args.seed;
  cfg.threads = args.threads;
  cfg.output_dir = args.out;
  try {
    cfg.validate();
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }

  const auto result = run_sweep(cfg, load_table(args.table));
  const auto files = write_sweep(result, cfg.output_dir);
  std::cout << "trials: " << files.trials.string() << " (" << result.trials.size() << " rows)\n";
  std::cout << "aggregate: " << files.aggregate.string() << " (" << result.aggregates.size() << " rows)\n";
  if (!files.per_position.empty()) {
    std::cout << "per_position: " << files.per_position.string() << " (" << result.per_position.size() << " rows)\n";
  }
  return 0;
}

int run_correct(const std::string& scores_path, double delta, const std::string& table_path) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw UsageError("--delta must lie in [0, 1]");
  const auto table = load_table(table_path);
  ScoreVector y(csv::read_values(scores_path));
  if (!table.covers(y.size())) throw DataError("score table does not cover " + std::to_string(y.size()) + " scores");
  const auto ls = ls_estimate(y, table);
  const auto induced = ranking_from_scores(y.values());
  std::cout << "n: " << y.size() << '\n';
  std::cout << "delta: " << csv::format_double(delta) << '\n';
  std::cout << "ls_ranking: " << ls.ranking.to_string() << '\n';
  std::cout << "induced_ranking: " << induced.to_string() << '\n';
  std::cout << "objective: " << csv::format_double(ls.objective) << '\n';
  return 0;
}

template <class F>
double best_seconds(int reps, F&& body) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = Clock::now();
    body();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - start).count());
  }
  return best;
}

int run_bench(std::size_t n_max, std::uint64_t seed, int reps) {
  if (n_max < 8) throw UsageError("--n must be at least 8");
  std::vector<std::size_t> sizes;
  for (std::size_t n = n_max; n >= 1 && sizes.size() < 4; n /= 2) sizes.push_back(n);
  std::reverse(sizes.begin(), sizes.end());

  std::cout << std::setw(10) << "n" << std::setw(16) << "ostree_s" << std::setw(16) << "ls_estimate_s" << std::setw(12)
            << "ls_ratio" << '\n';
  double prev = 0;
  for (const auto n : sizes) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> ranks(n);
    for (std::size_t i = 0; i < n; ++i) ranks[i] = 1 + std::uniform_int_distribution<std::size_t>(0, i)(rng);
    const double tree_s = best_seconds(reps, [&] {
      OrderStatTree tree;
      tree.reserve(n);
      for (std::size_t i = 0; i < n; ++i) tree.insert_at_rank(ranks[i], static_cast<OrderStatTree::Item>(i + 1));
    });

    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i + 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto y = generate_scores(Permutation(std::move(perm)), ScoreTable::parametric(), NoiseSpec::uniform(0.1), seed);
    const double ls_s = best_seconds(reps, [&] { (void)ls_estimate(y, ScoreTable::parametric()); });

    std::cout << std::setw(10) << n << std::setw(16) << std::fixed << std::setprecision(4) << tree_s << std::setw(16)
              << ls_s << std::setw(12);
    if (prev > 0) {
      std::cout << std::setprecision(2) << ls_s / prev;
    } else {
      std::cout << "-";
    }
    std::cout << '\n';
    prev = ls_s;
  }
  return 0;
}

int run_oracle(std::size_t max_n, std::size_t instances, std::uint64_t seed) {
  if (max_n < 1 || max_n > kMaxEnumerationSize) {
    throw UsageError("--max-n must be in [1, " + std::to_string(kMaxEnumerationSize) + "]");
  }
  const auto table = ScoreTable::parametric();
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < instances; ++i) {
      std::vector<int> ranks(n);
      for (std::size_t k = 0; k < n; ++k) ranks[k] = static_cast<int>(k + 1);
      std::shuffle(ranks.begin(), ranks.end(), rng);
      const double delta = i % 2 ? 0.05 : 0.3;
      const auto y = generate_scores(Permutation(std::move(ranks)), table, NoiseSpec::uniform(delta), rng());
      const auto bf = brute_force_ls(y.values(), table);
      const auto ls = ls_estimate(y, table);
      const bool member = std::find(bf.minimizers.begin(), bf.minimizers.end(), ls.ranking) != bf.minimizers.end();
      if (std::abs(ls.objective - bf.objective) <= 1e-12 && member) ++ok;
    }
    failures += instances - ok;
    std::cout << "n=" << n << ": " << ok << "/" << instances << " match brute force\n";
  }
  std::cout << (failures == 0 ? "oracle: PASS" : "oracle: FAIL") << '\n';
  return failures == 0 ? 0 : kExitData;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequential-bias correction: least-squares insertion estimator and simulations"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte-Carlo sweep and write CSV results");
  std::string config_path;
  simulate->add_option("--config", config_path, "Flat key=value file; command-line flags take precedence");
  simulate->add_option("--sweep", sim.sweep, "vary_n | vary_delta | per_position | adversarial")->capture_default_str();
  simulate->add_option("--n", sim.ns, "Comma-separated item counts")->delimiter(',');
  simulate->add_option("--deltas", sim.deltas, "Comma-separated noise levels in [0, 1]")->delimiter(',');
  simulate->add_option("--trials", sim.trials, "Trials per point")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  simulate->add_option("--noise", sim.noise, "none | uniform")->capture_default_str();
  simulate->add_option("--out", sim.out, "Output directory")->capture_default_str();
  simulate->add_option("--table", sim.table, "Explicit score table CSV (t,r,x); parametric if omitted");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)")->capture_default_str();

  std::string scores_path;
  std::string correct_table;
  double correct_delta = 0.0;
  auto* correct = app.add_subcommand("correct", "Estimate a ranking from one column of scores");
  correct->add_option("--scores", scores_path, "Score file")->required();
  correct->add_option("--delta", correct_delta, "Noise bound, echoed in the output")->capture_default_str();
  correct->add_option("--table", correct_table, "Explicit score table CSV (t,r,x)");

  std::size_t bench_n = 1u << 20;
  std::uint64_t bench_seed = 1;
  int bench_reps = 3;
  auto* bench = app.add_subcommand("bench", "Time tree inserts and ls_estimate at n/8, n/4, n/2, n");
  bench->add_option("--n", bench_n, "Largest size")->capture_default_str();
  bench->add_option("--seed", bench_seed)->capture_default_str();
  bench->add_option("--reps", bench_reps, "Repetitions per size (best is reported)")->check(CLI::PositiveNumber);

  std::size_t oracle_max_n = 7;
  std::size_t oracle_instances = 200;
  std::uint64_t oracle_seed = 1;
  auto* oracle = app.add_subcommand("oracle", "Check the insertion estimator against brute-force least squares");
  oracle->add_option("--max-n", oracle_max_n)->capture_default_str();
  oracle->add_option("--instances", oracle_instances, "Random instances per n")->capture_default_str();
  oracle->add_option("--seed", oracle_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*simulate) {
      if (!config_path.empty()) apply_config_file(*simulate, config_path);
      return run_simulate(sim);
    }
    if (*correct) return run_correct(scores_path, correct_delta, correct_table);
    if (*bench) return run_bench(bench_n, bench_seed, bench_reps);
    if (*oracle) return run_oracle(oracle_max_n, oracle_instances, oracle_seed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
