#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqbias/model.hpp"

namespace seqbias {

enum class SweepKind { vary_n, vary_delta, per_position, adversarial };

std::string_view to_string(SweepKind kind) noexcept;
/// Throws std::invalid_argument for unknown names.
SweepKind parse_sweep_kind(std::string_view name);

/// How the true ranking of each trial is drawn.
enum class TruthSource { uniform, adversarial };

struct ExperimentConfig {
  SweepKind sweep = SweepKind::vary_delta;
  /// Empty lists fall back to the defaults for the sweep kind.
  std::vector<std::size_t> n_values;
  std::vector<double> deltas;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  /// `none` runs every point noiseless (delta recorded as 0).
  NoiseSpec::Kind noise = NoiseSpec::Kind::uniform;
  std::filesystem::path output_dir = ".";
  /// Worker threads; 0 uses the hardware concurrency.
  std::size_t threads = 0;

  /// Throws std::domain_error on trials == 0, n == 0, delta outside [0, 1],
  /// explicit noise, or adversarial sizes that are not multiples of 4 (>= 8).
  void validate() const;

  struct Point {
    std::size_t n;
    double delta;
  };
  /// Sorted (n, delta) grid after applying defaults.
  std::vector<Point> points() const;
};

struct TrialRecord {
  SweepKind sweep;
  std::size_t n;
  double delta;
  std::size_t trial;
  std::uint64_t seed;
  double d_sf_ls;
  double d_sf_induced;
  double d_kt_ls;
  double d_kt_induced;
  std::vector<double> entrywise_ls;      // l_t for t = 1..n
  std::vector<double> entrywise_induced;
};

struct AggregateRecord {
  SweepKind sweep;
  std::size_t n;
  double delta;
  std::string metric;    // d_sf | d_kt | max_entrywise
  std::string estimator; // ls | induced
  double mean;
  double sem;
  std::size_t count;
};

struct PerPositionRecord {
  std::size_t n;
  double delta;
  std::size_t t;
  double mean_err_ls;
  double sem_ls;
  double mean_err_induced;
  double sem_induced;
};

struct SweepResult {
  std::vector<TrialRecord> trials;
  std::vector<AggregateRecord> aggregates;
  std::vector<PerPositionRecord> per_position; // filled for per_position sweeps
};

/// Stable 64-bit mix of (master seed, point index, trial index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial) noexcept;

/// One simulated trial: draw the true ranking, score it with Uniform[-delta, delta]
/// noise, and compare the least-squares and score-induced rankings against it.
TrialRecord run_trial(std::size_t n, double delta, const ScoreTable& table, std::uint64_t seed,
                      TruthSource truth = TruthSource::uniform);

/// Mean and standard error of the mean (sample stddev / sqrt(count)).
struct MeanSem {
  double mean;
  double sem;
};
MeanSem mean_sem(std::span<const double> values);

SweepResult run_sweep(const ExperimentConfig& config, const ScoreTable& table = ScoreTable::parametric());

struct SweepFiles {
  std::filesystem::path trials;
  std::filesystem::path aggregate;
  std::filesystem::path per_position; // empty unless written
};

/// Writes trials.csv, aggregate.csv and (per_position sweeps) per_position.csv
/// into `dir`, creating it if needed. Throws IoError on failure.
SweepFiles write_sweep(const SweepResult& result, const std::filesystem::path& dir);

inline constexpr std::string_view kTrialCsvHeader =
    "sweep,n,delta,trial,seed,d_sf_ls,d_sf_induced,d_kt_ls,d_kt_induced";
inline constexpr std::string_view kPerPositionCsvHeader =
    "n,delta,t,mean_err_ls,sem_ls,mean_err_induced,sem_induced";
inline constexpr std::string_view kAggregateCsvHeader = "sweep,n,delta,metric,estimator,mean,sem,count";

} // namespace seqbias
