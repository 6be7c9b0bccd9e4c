#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace seqbias {

/// Sequence of item ids with O(log n) insert-at-rank and lookup-by-rank.
///
/// An AVL tree augmented with left-subtree sizes, stored in a node arena. Ranks are 1-based
/// positions in the in-order sequence. There is no deletion.
class OrderStatTree {
public:
  using Item = std::uint32_t;

  OrderStatTree() = default;

  void reserve(std::size_t n) {
    nodes_.reserve(n);
    items_.reserve(n);
  }

  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  /// Places `item` at rank `rank` (1 <= rank <= size()+1); items at rank and
  /// beyond shift right by one.
  void insert_at_rank(std::size_t rank, Item item);

  /// The rank-th item of the in-order sequence.
  Item item_at_rank(std::size_t rank) const;

  /// Full in-order sequence, O(n).
  std::vector<Item> to_sequence() const;

  /// Height of the tree; zero when empty.
  int height() const noexcept;

  /// Recomputes subtree sizes and heights from scratch and checks them against
  /// the stored values and the AVL balance condition.
  bool check_invariants() const;

private:
  using Index = std::uint32_t;
  static constexpr Index kNil = 0xffffffffu;

  // left_size counts the nodes in the left subtree; balance is
  // height(right) - height(left), kept in [-1, 1].
  struct Node {
    Index left = kNil;
    Index right = kNil;
    std::uint32_t left_size = 0;
    std::int32_t balance = 0;
  };

  Index rotate_left(Index x) noexcept;
  Index rotate_right(Index x) noexcept;
  Index fix_right_heavy(Index x) noexcept;
  Index fix_left_heavy(Index x) noexcept;

  struct Check {
    std::uint32_t size;
    std::int32_t height;
    bool ok;
  };
  Check check(Index i) const;

  // Item ids live beside the nodes so that descents touch 16-byte nodes only.
  std::vector<Node> nodes_;
  std::vector<Item> items_;
  Index root_ = kNil;
  std::size_t count_ = 0;
  struct Step {
    Index node;
    bool went_right;
  };
  std::vector<Step> path_; // scratch for insert
};

} // namespace seqbias
