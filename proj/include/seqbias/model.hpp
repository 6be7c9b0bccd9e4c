#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqbias/permutation.hpp"

namespace seqbias {

/// x(t, r) = r / (t + 1). Throws std::domain_error unless 1 <= r <= t.
double parametric_score(std::size_t t, long long r);

/// Mean score x(t, r) given at position t to an item of relative rank r.
///
/// Either the closed-form parametric table (defined for every t) or an
/// explicit triangular array covering positions 1..max_size(). Copies share
/// the explicit storage, which is never mutated after construction.
class ScoreTable {
public:
  static ScoreTable parametric();

  /// rows[t-1] holds x(t, 1..t).
  static ScoreTable from_rows(const std::vector<std::vector<double>>& rows);

  /// CSV with header `t,r,x`; every (t, r) with r <= t <= max t must appear once.
  static ScoreTable load_csv(const std::filesystem::path& path);

  bool is_parametric() const noexcept { return values_ == nullptr; }

  /// Largest supported position; empty for the parametric table.
  std::optional<std::size_t> max_size() const noexcept;

  bool covers(std::size_t n) const noexcept { return is_parametric() || n <= size_; }

  double operator()(std::size_t t, long long r) const;

  /// x(t, 1..t) for an explicit table.
  std::span<const double> row(std::size_t t) const;

private:
  std::shared_ptr<const std::vector<double>> values_;
  std::size_t size_ = 0;
};

/// First place where strict monotonicity in r fails: x(t, r) >= x(t, r_next).
struct MonotonicityViolation {
  std::size_t t;
  int r;
  int r_next;
  friend bool operator==(const MonotonicityViolation&, const MonotonicityViolation&) = default;
};

/// Empty when x(t, r) < x(t, r + 1) everywhere (non-finite entries also fail).
std::optional<MonotonicityViolation> validate_table(const ScoreTable& table);

class NoiseSpec {
public:
  enum class Kind { none, uniform, explicit_vector };

  static NoiseSpec none();
  /// i.i.d. Uniform[-delta, delta], delta in [0, 1].
  static NoiseSpec uniform(double delta);
  /// Fixed per-position noise; every entry must lie in [-delta, delta].
  static NoiseSpec explicit_vector(std::vector<double> eps, double delta);

  /// "none" | "uniform:<delta>" | "explicit:<path>". For explicit files the
  /// bound delta is the largest absolute entry.
  static NoiseSpec parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  double delta() const noexcept { return delta_; }
  std::span<const double> values() const noexcept { return eps_; }
  std::string to_string() const;

private:
  NoiseSpec(Kind kind, double delta, std::vector<double> eps);

  Kind kind_;
  double delta_;
  std::vector<double> eps_;
};

struct ScoreProvenance {
  NoiseSpec noise;
  std::uint64_t seed;
};

/// Observed scores y_1..y_n. All entries are finite.
class ScoreVector {
public:
  explicit ScoreVector(std::vector<double> values, std::optional<ScoreProvenance> provenance = {});

  std::size_t size() const noexcept { return values_.size(); }
  double at(std::size_t t) const { return values_.at(t - 1); }
  std::span<const double> values() const noexcept { return values_; }
  const std::optional<ScoreProvenance>& provenance() const noexcept { return provenance_; }

private:
  std::vector<double> values_;
  std::optional<ScoreProvenance> provenance_;
};

/// y_t = x(t, r_t(perm)) + eps_t. Deterministic for a given seed.
ScoreVector generate_scores(const Permutation& perm, const ScoreTable& table, const NoiseSpec& noise,
                            std::uint64_t seed);

/// Noiseless scores x(t, r_t(perm)).
std::vector<double> noiseless_scores(const Permutation& perm, const ScoreTable& table);

/// A pair whose noiseless score order disagrees with the true order.
struct ConflictPair {
  std::size_t i;
  std::size_t j;
  double score_i;
  double score_j;
};

/// All conflicting pairs (i < j), O(n^2).
std::vector<ConflictPair> detect_conflicts(const ScoreTable& table, const Permutation& truth);

/// A ranking of n >= 4 items that has at least one conflict under `table`.
/// Tries [1,3,4,2] and [4,1,2,3] (followed by 5..n) before every ordering of the first four.
Permutation exists_conflict_ranking(const ScoreTable& table, std::size_t n);

/// For n = 4m, m >= 2: identity on the first half, then the odd positions get
/// ranks 2m+1..3m and the even positions get 3m+1..4m.
Permutation adversarial_permutation(std::size_t n);

/// A response rule tau(t, r): the score reported at position t for relative rank r.
using ResponseFn = std::function<double(std::size_t t, int r)>;

struct BayesLossRecord {
  std::size_t t;
  double normalized_rank; // truth(t) / (n + 1)
  double response;
  double sq_err;
};

/// Per-position squared error of `response` against one true ranking.
std::vector<BayesLossRecord> bayes_loss_records(const ResponseFn& response, const Permutation& truth);

/// Average over all n! rankings of sum_t (response(t, r_t) - truth(t)/(n+1))^2. n <= 8.
double exact_bayes_loss(const ResponseFn& response, std::size_t n);

inline constexpr std::size_t kMaxEnumerationSize = 8;

} // namespace seqbias
