#include "seqbias/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "seqbias/csv.hpp"
#include "seqbias/estimator.hpp"
#include "seqbias/metrics.hpp"

namespace seqbias {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

const std::vector<std::size_t> kDefaultNs{10, 20, 50, 100, 200, 500};
const std::vector<double> kDefaultDeltas{0.025, 0.05, 0.1, 0.2, 0.4};

Permutation uniform_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<int> ranks(n);
  for (std::size_t i = 0; i < n; ++i) ranks[i] = static_cast<int>(i + 1);
  // Fisher-Yates
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(ranks[i - 1], ranks[pick(rng)]);
  }
  return Permutation(std::move(ranks));
}

void write_line(std::ofstream& out, const std::filesystem::path& path, const std::string& line) {
  out << line << '\n';
  if (!out) throw IoError("write failed: '" + path.string() + "'");
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

} // namespace

std::string_view to_string(SweepKind kind) noexcept {
  switch (kind) {
  case SweepKind::vary_n:
    return "vary_n";
  case SweepKind::vary_delta:
    return "vary_delta";
  case SweepKind::per_position:
    return "per_position";
  case SweepKind::adversarial:
    return "adversarial";
  }
  return "unknown";
}

SweepKind parse_sweep_kind(std::string_view name) {
  for (const auto kind : {SweepKind::vary_n, SweepKind::vary_delta, SweepKind::per_position, SweepKind::adversarial}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown sweep kind '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (trials == 0) throw std::domain_error("config: trials must be >= 1");
  if (noise == NoiseSpec::Kind::explicit_vector) {
    throw std::domain_error("config: sweeps support noise 'none' or 'uniform'");
  }
  for (const auto n : n_values) {
    if (n == 0) throw std::domain_error("config: n must be >= 1");
    if (sweep == SweepKind::adversarial && (n < 8 || n % 4 != 0)) {
      throw std::domain_error("config: adversarial sweep needs n a multiple of 4 and >= 8");
    }
  }
  for (const auto d : deltas) {
    if (!(d >= 0.0 && d <= 1.0)) throw std::domain_error("config: delta outside [0, 1]");
  }
}

std::vector<ExperimentConfig::Point> ExperimentConfig::points() const {
  std::vector<std::size_t> ns = n_values;
  std::vector<double> ds = deltas;
  if (ns.empty()) {
    switch (sweep) {
    case SweepKind::vary_n:
      ns = kDefaultNs;
      break;
    case SweepKind::adversarial:
      ns = {8, 16, 32, 64};
      break;
    default:
      ns = {100};
    }
  }
  if (ds.empty()) ds = sweep == SweepKind::vary_delta ? kDefaultDeltas : std::vector<double>{0.1};
  if (noise == NoiseSpec::Kind::none) ds = {0.0};
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  std::vector<Point> out;
  for (const auto n : ns) {
    for (const auto d : ds) out.push_back({n, d});
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial) noexcept {
  return splitmix64(splitmix64(splitmix64(master) ^ point) ^ trial);
}

TrialRecord run_trial(std::size_t n, double delta, const ScoreTable& table, std::uint64_t seed, TruthSource truth_source) {
  std::mt19937_64 rng(seed);
  const Permutation truth =
      truth_source == TruthSource::adversarial ? adversarial_permutation(n) : uniform_permutation(n, rng);
  const auto noise = delta > 0.0 ? NoiseSpec::uniform(delta) : NoiseSpec::none();
  const auto y = generate_scores(truth, table, noise, splitmix64(seed));

  const auto ls = ls_estimate(y, table).ranking;
  const auto induced = ranking_from_scores(y.values());

  TrialRecord rec{};
  rec.n = n;
  rec.delta = delta;
  rec.seed = seed;
  rec.d_sf_ls = d_sf(ls, truth);
  rec.d_sf_induced = d_sf(induced, truth);
  rec.d_kt_ls = d_kt(ls, truth);
  rec.d_kt_induced = d_kt(induced, truth);
  rec.entrywise_ls.resize(n);
  rec.entrywise_induced.resize(n);
  for (std::size_t t = 1; t <= n; ++t) {
    rec.entrywise_ls[t - 1] = d_entrywise(ls, truth, t);
    rec.entrywise_induced[t - 1] = d_entrywise(induced, truth, t);
  }
  return rec;
}

MeanSem mean_sem(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  double sum = 0;
  for (const double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const auto count = static_cast<double>(values.size());
  return {mean, std::sqrt(ss / (count - 1.0)) / std::sqrt(count)};
}

SweepResult run_sweep(const ExperimentConfig& config, const ScoreTable& table) {
  config.validate();
  const auto points = config.points();
  for (const auto& p : points) {
    if (!table.covers(p.n)) throw std::domain_error("score table does not cover n=" + std::to_string(p.n));
  }
  const auto truth = config.sweep == SweepKind::adversarial ? TruthSource::adversarial : TruthSource::uniform;

  SweepResult result;
  const std::size_t total = points.size() * config.trials;
  result.trials.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const std::size_t point = job / config.trials;
      const std::size_t trial = job % config.trials;
      const auto seed = derive_seed(config.seed, point, trial);
      auto rec = run_trial(points[point].n, points[point].delta, table, seed, truth);
      rec.sweep = config.sweep;
      rec.trial = trial;
      result.trials[job] = std::move(rec);
    }
  };
  std::size_t threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
  threads = std::min(threads, std::max<std::size_t>(total, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  // Reduction over the trial slots, which are already in canonical order.
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto first = result.trials.begin() + static_cast<std::ptrdiff_t>(p * config.trials);
    const std::span<const TrialRecord> group(&*first, config.trials);
    const std::size_t n = points[p].n;
    const double delta = points[p].delta;

    auto collect = [&](auto field) {
      std::vector<double> v;
      v.reserve(group.size());
      for (const auto& rec : group) v.push_back(field(rec));
      return v;
    };
    auto add = [&](std::string metric, std::string estimator, std::span<const double> values) {
      const auto ms = mean_sem(values);
      result.aggregates.push_back({config.sweep, n, delta, std::move(metric), std::move(estimator), ms.mean, ms.sem, values.size()});
    };

    // Per-position statistics; the max-entrywise metric reports the position
    // with the largest mean error.
    std::vector<MeanSem> pos_ls(n), pos_induced(n);
    for (std::size_t t = 0; t < n; ++t) {
      pos_ls[t] = mean_sem(collect([t](const TrialRecord& r) { return r.entrywise_ls[t]; }));
      pos_induced[t] = mean_sem(collect([t](const TrialRecord& r) { return r.entrywise_induced[t]; }));
    }
    auto argmax = [](const std::vector<MeanSem>& v) {
      return static_cast<std::size_t>(
          std::max_element(v.begin(), v.end(), [](const MeanSem& a, const MeanSem& b) { return a.mean < b.mean; }) -
          v.begin());
    };
    const auto worst_ls = argmax(pos_ls);
    const auto worst_induced = argmax(pos_induced);

    add("d_kt", "induced", collect([](const TrialRecord& r) { return r.d_kt_induced; }));
    add("d_kt", "ls", collect([](const TrialRecord& r) { return r.d_kt_ls; }));
    add("d_sf", "induced", collect([](const TrialRecord& r) { return r.d_sf_induced; }));
    add("d_sf", "ls", collect([](const TrialRecord& r) { return r.d_sf_ls; }));
    add("max_entrywise", "induced", collect([&](const TrialRecord& r) { return r.entrywise_induced[worst_induced]; }));
    add("max_entrywise", "ls", collect([&](const TrialRecord& r) { return r.entrywise_ls[worst_ls]; }));

    if (config.sweep == SweepKind::per_position) {
      for (std::size_t t = 0; t < n; ++t) {
        result.per_position.push_back(
            {n, delta, t + 1, pos_ls[t].mean, pos_ls[t].sem, pos_induced[t].mean, pos_induced[t].sem});
      }
    }
  }
  std::stable_sort(result.aggregates.begin(), result.aggregates.end(), [](const auto& a, const auto& b) {
    return std::tie(a.n, a.delta, a.metric, a.estimator) < std::tie(b.n, b.delta, b.metric, b.estimator);
  });
  return result;
}

SweepFiles write_sweep(const SweepResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  using csv::format_double;

  SweepFiles files{dir / "trials.csv", dir / "aggregate.csv", {}};
  {
    auto out = open_for_write(files.trials);
    write_line(out, files.trials, std::string(kTrialCsvHeader));
    for (const auto& r : result.trials) {
      write_line(out, files.trials,
                 std::string(to_string(r.sweep)) + ',' + std::to_string(r.n) + ',' + format_double(r.delta) + ',' +
                     std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' + format_double(r.d_sf_ls) + ',' +
                     format_double(r.d_sf_induced) + ',' + format_double(r.d_kt_ls) + ',' +
                     format_double(r.d_kt_induced));
    }
  }
  {
    auto out = open_for_write(files.aggregate);
    write_line(out, files.aggregate, std::string(kAggregateCsvHeader));
    for (const auto& a : result.aggregates) {
      write_line(out, files.aggregate,
                 std::string(to_string(a.sweep)) + ',' + std::to_string(a.n) + ',' + format_double(a.delta) + ',' +
                     a.metric + ',' + a.estimator + ',' + format_double(a.mean) + ',' + format_double(a.sem) + ',' +
                     std::to_string(a.count));
    }
  }
  if (!result.per_position.empty()) {
    files.per_position = dir / "per_position.csv";
    auto out = open_for_write(files.per_position);
    write_line(out, files.per_position, std::string(kPerPositionCsvHeader));
    for (const auto& p : result.per_position) {
      write_line(out, files.per_position,
                 std::to_string(p.n) + ',' + format_double(p.delta) + ',' + std::to_string(p.t) + ',' +
                     format_double(p.mean_err_ls) + ',' + format_double(p.sem_ls) + ',' +
                     format_double(p.mean_err_induced) + ',' + format_double(p.sem_induced));
    }
  }
  return files;
}

} // namespace seqbias
