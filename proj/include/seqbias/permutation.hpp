#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seqbias {

/// A ranking of n items shown in sequence.
///
/// Positions and ranks are 1-based. `rank_at(t)` is the absolute rank of the
/// item that appears at position t; a larger rank means a better item.
class Permutation {
public:
  /// Validates that `ranks` is a bijection on {1..n}, n >= 1.
  explicit Permutation(std::vector<int> ranks);

  static Permutation identity(std::size_t n);

  /// Parses a comma-separated rank list such as "2,3,1".
  static Permutation parse(std::string_view text);

  std::size_t size() const noexcept { return ranks_.size(); }
  int rank_at(std::size_t t) const;
  std::span<const int> ranks() const noexcept { return ranks_; }

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> ranks_;
};

/// Inversion vector {r_t}: rel[t] is the rank of item t among items 1..t.
class RelativeRankVector {
public:
  /// Validates 1 <= rel[t] <= t for every position.
  explicit RelativeRankVector(std::vector<int> rel);

  std::size_t size() const noexcept { return rel_.size(); }
  int at(std::size_t t) const;
  std::span<const int> values() const noexcept { return rel_; }

  friend bool operator==(const RelativeRankVector&, const RelativeRankVector&) = default;

private:
  std::vector<int> rel_;
};

/// |{i <= t : perm(i) <= perm(t)}|, computed in O(t).
int relative_rank(const Permutation& perm, std::size_t t);

/// Full inversion vector in O(n log n).
RelativeRankVector relative_ranks(const Permutation& perm);

/// Rebuilds the unique permutation with the given inversion vector, O(n log n).
Permutation from_relative_ranks(const RelativeRankVector& rel);

/// Relative ordering of the first t items.
Permutation restrict(const Permutation& perm, std::size_t t);

/// Absolute rank of the r-th smallest item among the first t. r is clamped to [1, t].
int rho(const Permutation& perm, std::size_t t, long long r);

Permutation inverse(const Permutation& perm);

/// Composition (a o b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);

/// Ranking induced by sorting raw scores: rank 1 to the smallest score.
/// Equal scores keep position order (earlier item gets the lower rank).
Permutation ranking_from_scores(std::span<const double> scores);

} // namespace seqbias
