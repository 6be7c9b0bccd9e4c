#include "seqbias/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fenwick.hpp"

namespace seqbias {

namespace {

void check_position(std::size_t t, std::size_t n, const char* what) {
  if (t < 1 || t > n) {
    throw std::domain_error(std::string(what) + ": position " + std::to_string(t) +
                            " outside [1, " + std::to_string(n) + "]");
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

} // namespace

Permutation::Permutation(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  const std::size_t n = ranks_.size();
  if (n == 0) throw std::domain_error("Permutation: empty");
  std::vector<char> seen(n + 1, 0);
  for (const int r : ranks_) {
    if (r < 1 || static_cast<std::size_t>(r) > n || seen[static_cast<std::size_t>(r)]) {
      throw std::domain_error("Permutation: not a bijection on {1.." + std::to_string(n) + "}");
    }
    seen[static_cast<std::size_t>(r)] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 1);
  return Permutation(std::move(ranks));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> ranks;
  while (true) {
    const auto comma = text.find(',');
    const auto field = trim(text.substr(0, comma));
    int value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw std::invalid_argument("Permutation::parse: bad entry '" + std::string(field) + "'");
    }
    ranks.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Permutation(std::move(ranks));
}

int Permutation::rank_at(std::size_t t) const {
  check_position(t, size(), "Permutation::rank_at");
  return ranks_[t - 1];
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ranks_[i]);
  }
  return out;
}

RelativeRankVector::RelativeRankVector(std::vector<int> rel) : rel_(std::move(rel)) {
  if (rel_.empty()) throw std::domain_error("RelativeRankVector: empty");
  for (std::size_t i = 0; i < rel_.size(); ++i) {
    if (rel_[i] < 1 || static_cast<std::size_t>(rel_[i]) > i + 1) {
      throw std::domain_error("RelativeRankVector: entry " + std::to_string(i + 1) +
                              " outside [1, " + std::to_string(i + 1) + "]");
    }
  }
}

int RelativeRankVector::at(std::size_t t) const {
  check_position(t, size(), "RelativeRankVector::at");
  return rel_[t - 1];
}

int relative_rank(const Permutation& perm, std::size_t t) {
  check_position(t, perm.size(), "relative_rank");
  const auto ranks = perm.ranks();
  const int current = ranks[t - 1];
  return static_cast<int>(
      std::count_if(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(t),
                    [current](int r) { return r <= current; }));
}

RelativeRankVector relative_ranks(const Permutation& perm) {
  const std::size_t n = perm.size();
  detail::Fenwick seen(n);
  std::vector<int> rel(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto r = static_cast<std::size_t>(perm.ranks()[t]);
    seen.add(r, 1);
    rel[t] = static_cast<int>(seen.prefix(r));
  }
  return RelativeRankVector(std::move(rel));
}

Permutation from_relative_ranks(const RelativeRankVector& rel) {
  // Walk backwards: item t holds the rel[t]-th smallest rank not used by items after it.
  const std::size_t n = rel.size();
  auto available = detail::Fenwick::full(n);
  std::vector<int> ranks(n);
  for (std::size_t t = n; t >= 1; --t) {
    const std::size_t r = available.select(rel.values()[t - 1]);
    ranks[t - 1] = static_cast<int>(r);
    available.add(r, -1);
  }
  return Permutation(std::move(ranks));
}

Permutation restrict(const Permutation& perm, std::size_t t) {
  check_position(t, perm.size(), "restrict");
  std::vector<int> order(t);
  std::iota(order.begin(), order.end(), 0);
  const auto ranks = perm.ranks();
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ranks[a] < ranks[b]; });
  std::vector<int> out(t);
  for (std::size_t k = 0; k < t; ++k) out[static_cast<std::size_t>(order[k])] = static_cast<int>(k + 1);
  return Permutation(std::move(out));
}

int rho(const Permutation& perm, std::size_t t, long long r) {
  check_position(t, perm.size(), "rho");
  const auto k = static_cast<std::size_t>(std::clamp<long long>(r, 1, static_cast<long long>(t)));
  std::vector<int> prefix(perm.ranks().begin(), perm.ranks().begin() + static_cast<std::ptrdiff_t>(t));
  std::nth_element(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(k - 1), prefix.end());
  return prefix[k - 1];
}

Permutation inverse(const Permutation& perm) {
  std::vector<int> out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out[static_cast<std::size_t>(perm.ranks()[i] - 1)] = static_cast<int>(i + 1);
  }
  return Permutation(std::move(out));
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::domain_error("compose: size mismatch");
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a.ranks()[static_cast<std::size_t>(b.ranks()[i] - 1)];
  }
  return Permutation(std::move(out));
}

Permutation ranking_from_scores(std::span<const double> scores) {
  if (scores.empty()) throw std::domain_error("ranking_from_scores: no scores");
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) {
      throw std::domain_error("ranking_from_scores: non-finite score at position " +
                              std::to_string(i + 1));
    }
  }
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[static_cast<std::size_t>(a)] < scores[static_cast<std::size_t>(b)]; });
  std::vector<int> ranks(scores.size());
  for (std::size_t k = 0; k < order.size(); ++k) ranks[static_cast<std::size_t>(order[k])] = static_cast<int>(k + 1);
  return Permutation(std::move(ranks));
}

} // namespace seqbias
