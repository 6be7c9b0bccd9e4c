#include "seqbias/metrics.hpp"

#include <cstdlib>
#include <stdexcept>

#include "fenwick.hpp"

namespace seqbias {

namespace {

void check_sizes(const Permutation& a, const Permutation& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::domain_error(std::string(what) + ": size mismatch (" + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()) + ")");
  }
}

double n_squared(std::size_t n) {
  const auto nd = static_cast<double>(n);
  return nd * nd;
}

} // namespace

double d_sf(const Permutation& a, const Permutation& b) {
  check_sizes(a, b, "d_sf");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a.ranks()[i] - b.ranks()[i]);
  return static_cast<double>(total) / n_squared(a.size());
}

double d_entrywise(const Permutation& a, const Permutation& b, std::size_t t) {
  check_sizes(a, b, "d_entrywise");
  return static_cast<double>(std::abs(a.rank_at(t) - b.rank_at(t))) / static_cast<double>(a.size());
}

std::int64_t kendall_flips(const Permutation& a, const Permutation& b) {
  check_sizes(a, b, "kendall_flips");
  // Order items by b, then count inversions of a along that order.
  const std::size_t n = a.size();
  std::vector<int> a_by_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a_by_b[static_cast<std::size_t>(b.ranks()[i] - 1)] = a.ranks()[i];
  }
  detail::Fenwick seen(n);
  std::int64_t flips = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = static_cast<std::size_t>(a_by_b[k]);
    flips += static_cast<std::int64_t>(k) - seen.prefix(v);
    seen.add(v, 1);
  }
  return flips;
}

double d_kt(const Permutation& a, const Permutation& b) {
  return static_cast<double>(kendall_flips(a, b)) / n_squared(a.size());
}

double d_inv(const Permutation& a, const Permutation& b) {
  check_sizes(a, b, "d_inv");
  const auto ra = relative_ranks(a);
  const auto rb = relative_ranks(b);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(ra.values()[i] - rb.values()[i]);
  return static_cast<double>(total) / n_squared(a.size());
}

} // namespace seqbias
