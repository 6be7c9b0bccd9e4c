#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seqbias/model.hpp"
#include "seqbias/ostree.hpp"
#include "seqbias/permutation.hpp"

namespace seqbias {

/// argmin over r in [1, t] of |y - x(t, r)|. Exact half-way ties go to the
/// smaller r; scores beyond the attainable range clamp to 1 or t.
int choose_relative_rank(double y, std::size_t t, const ScoreTable& table);

struct LsResult {
  Permutation ranking;
  RelativeRankVector rhat;
  double objective; // sum_t (y_t - x(t, rhat_t))^2
};

/// Online insertion estimator. Each score is consumed once and its item is
/// placed irrevocably at the chosen relative rank.
class InsertionState {
public:
  explicit InsertionState(ScoreTable table, std::size_t expected_n = 0);

  /// Consumes y_t for the next position t and returns the chosen relative rank.
  int step(double y);

  std::size_t consumed() const noexcept { return rhat_.size(); }
  std::span<const int> rhat() const noexcept { return rhat_; }
  double objective() const noexcept { return objective_; }

  /// Items 1..t listed from worst to best under the current estimate.
  const OrderStatTree& sequence() const noexcept { return tree_; }

  /// Ranking of the consumed items: the inverse of the in-order sequence.
  LsResult result() const;

private:
  ScoreTable table_;
  OrderStatTree tree_;
  std::vector<int> rhat_;
  double objective_ = 0.0;
};

/// Least-squares ranking under `table` in O(n log n).
LsResult ls_estimate(std::span<const double> y, const ScoreTable& table);
LsResult ls_estimate(const ScoreVector& y, const ScoreTable& table);

/// Squared loss ||y - x(gamma)||^2, summed in position order.
double ls_objective(std::span<const double> y, const Permutation& gamma, const ScoreTable& table);

struct BruteForceLs {
  std::vector<Permutation> minimizers; // lexicographic order
  double objective;
};

/// Exhaustive least squares over all n! rankings (n <= 8). Rankings whose
/// loss is within `tie_tolerance` of the minimum are all returned.
BruteForceLs brute_force_ls(std::span<const double> y, const ScoreTable& table, double tie_tolerance = 1e-12);

/// ceil(delta * (t + 1)), with products within 1e-9 (relative) of an integer
/// treated as that integer.
long long noise_rank_radius(double delta, std::size_t t);

/// (1/n^2) sum_t (rho^t_{r_t + k_t} - rho^t_{r_t - k_t}) with k_t = ceil(delta (t+1)),
/// rho clamped to [1, t]. No leading constant is applied.
double sf_error_bound(const Permutation& truth, double delta);

} // namespace seqbias
