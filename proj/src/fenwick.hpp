#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace seqbias::detail {

// Binary indexed tree over 1..n holding non-negative counts.
class Fenwick {
public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

  // Every slot set to one, built in O(n).
  static Fenwick full(std::size_t n) {
    Fenwick f(n);
    for (std::size_t i = 1; i <= n; ++i) {
      f.tree_[i] += 1;
      const std::size_t parent = i + (i & (~i + 1));
      if (parent <= n) f.tree_[parent] += f.tree_[i];
    }
    return f;
  }

  void add(std::size_t i, std::int64_t delta) {
    for (; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  std::int64_t prefix(std::size_t i) const {
    std::int64_t s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

  // Smallest index whose prefix sum reaches k (k >= 1, k <= total).
  std::size_t select(std::int64_t k) const {
    const std::size_t n = tree_.size() - 1;
    std::size_t pos = 0;
    for (std::size_t step = std::bit_floor(n == 0 ? std::size_t{1} : n); step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next <= n && tree_[next] < k) {
        pos = next;
        k -= tree_[next];
      }
    }
    return pos + 1;
  }

private:
  std::vector<std::int64_t> tree_;
};

} // namespace seqbias::detail
