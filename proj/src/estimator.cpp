#include "seqbias/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace seqbias {

int choose_relative_rank(double y, std::size_t t, const ScoreTable& table) {
  if (t < 1) throw std::domain_error("choose_relative_rank: position must be >= 1");
  if (!std::isfinite(y)) throw std::domain_error("choose_relative_rank: non-finite score");
  const auto tt = static_cast<long long>(t);
  if (table.is_parametric()) {
    // Nearest integer to y (t + 1), halves rounded down, clamped to [1, t].
    const double v = y * static_cast<double>(t + 1);
    if (v <= 1.0) return 1;
    if (v >= static_cast<double>(t)) return static_cast<int>(t);
    return static_cast<int>(std::clamp(static_cast<long long>(std::ceil(v - 0.5)), 1LL, tt));
  }
  const auto row = table.row(t);
  const auto hi = std::lower_bound(row.begin(), row.end(), y);
  if (hi == row.begin()) return 1;
  if (hi == row.end()) return static_cast<int>(t);
  const auto lo = hi - 1;
  const bool take_lower = (y - *lo) <= (*hi - y);
  return static_cast<int>((take_lower ? lo : hi) - row.begin()) + 1;
}

InsertionState::InsertionState(ScoreTable table, std::size_t expected_n) : table_(std::move(table)) {
  tree_.reserve(expected_n);
  rhat_.reserve(expected_n);
}

int InsertionState::step(double y) {
  const std::size_t t = consumed() + 1;
  if (!table_.covers(t)) {
    throw std::domain_error("InsertionState: score table does not cover position " + std::to_string(t));
  }
  const int r = choose_relative_rank(y, t, table_);
  const double residual = y - table_(t, r);
  objective_ += residual * residual;
  tree_.insert_at_rank(static_cast<std::size_t>(r), static_cast<OrderStatTree::Item>(t));
  rhat_.push_back(r);
  return r;
}

LsResult InsertionState::result() const {
  if (consumed() == 0) throw std::domain_error("InsertionState::result: no scores consumed");
  const auto seq = tree_.to_sequence();
  std::vector<int> ranks(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) ranks[seq[k] - 1] = static_cast<int>(k + 1);
  return LsResult{Permutation(std::move(ranks)), RelativeRankVector(rhat_), objective_};
}

LsResult ls_estimate(std::span<const double> y, const ScoreTable& table) {
  if (y.empty()) throw std::domain_error("ls_estimate: no scores");
  InsertionState state(table, y.size());
  for (const double v : y) state.step(v);
  return state.result();
}

LsResult ls_estimate(const ScoreVector& y, const ScoreTable& table) { return ls_estimate(y.values(), table); }

double ls_objective(std::span<const double> y, const Permutation& gamma, const ScoreTable& table) {
  if (y.size() != gamma.size()) throw std::domain_error("ls_objective: size mismatch");
  const auto x = noiseless_scores(gamma, table);
  double total = 0;
  for (std::size_t i = 0; i < y.size(); ++i) total += (y[i] - x[i]) * (y[i] - x[i]);
  return total;
}

BruteForceLs brute_force_ls(std::span<const double> y, const ScoreTable& table, double tie_tolerance) {
  const std::size_t n = y.size();
  if (n < 1 || n > kMaxEnumerationSize) {
    throw std::domain_error("brute_force_ls: n must be in [1, " + std::to_string(kMaxEnumerationSize) + "]");
  }
  std::vector<int> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 1);
  std::vector<std::pair<double, std::vector<int>>> scored;
  double best = std::numeric_limits<double>::infinity();
  do {
    const double obj = ls_objective(y, Permutation(ranks), table);
    best = std::min(best, obj);
    if (obj <= best + tie_tolerance) scored.emplace_back(obj, ranks);
  } while (std::next_permutation(ranks.begin(), ranks.end()));

  BruteForceLs out{{}, best};
  for (auto& [obj, r] : scored) {
    if (obj <= best + tie_tolerance) out.minimizers.emplace_back(std::move(r));
  }
  return out;
}

long long noise_rank_radius(double delta, std::size_t t) {
  const double v = delta * static_cast<double>(t + 1);
  const double nearest = std::round(v);
  if (std::abs(v - nearest) <= 1e-9 * std::max(1.0, v)) return static_cast<long long>(nearest);
  return static_cast<long long>(std::ceil(v));
}

double sf_error_bound(const Permutation& truth, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::domain_error("sf_error_bound: delta outside [0, 1]");
  const std::size_t n = truth.size();
  const auto rel = relative_ranks(truth);
  // In-order sequence of the first t items by true order; rho^t_r is the rank of the r-th one.
  OrderStatTree prefix;
  prefix.reserve(n);
  long long total = 0;
  for (std::size_t t = 1; t <= n; ++t) {
    const long long r = rel.at(t);
    prefix.insert_at_rank(static_cast<std::size_t>(r), static_cast<OrderStatTree::Item>(t));
    const long long k = noise_rank_radius(delta, t);
    const auto clamp_rank = [t](long long q) {
      return static_cast<std::size_t>(std::clamp<long long>(q, 1, static_cast<long long>(t)));
    };
    const int upper = truth.rank_at(prefix.item_at_rank(clamp_rank(r + k)));
    const int lower = truth.rank_at(prefix.item_at_rank(clamp_rank(r - k)));
    total += upper - lower;
  }
  const auto nd = static_cast<double>(n);
  return static_cast<double>(total) / (nd * nd);
}

} // namespace seqbias
