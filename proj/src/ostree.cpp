#include "seqbias/ostree.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace seqbias {

namespace {

template <class Node>
inline void prefetch_node(const std::vector<Node>& nodes, std::uint32_t i) {
#if defined(__GNUC__)
  if (i != 0xffffffffu) __builtin_prefetch(&nodes[i]);
#else
  (void)nodes;
  (void)i;
#endif
}

} // namespace

OrderStatTree::Index OrderStatTree::rotate_left(Index x) noexcept {
  const Index y = nodes_[x].right;
  nodes_[x].right = nodes_[y].left;
  nodes_[y].left = x;
  nodes_[y].left_size += nodes_[x].left_size + 1;
  return y;
}

OrderStatTree::Index OrderStatTree::rotate_right(Index x) noexcept {
  const Index y = nodes_[x].left;
  nodes_[x].left = nodes_[y].right;
  nodes_[y].right = x;
  nodes_[x].left_size -= nodes_[y].left_size + 1;
  return y;
}

// x has balance +2 after an insertion into its right subtree.
OrderStatTree::Index OrderStatTree::fix_right_heavy(Index x) noexcept {
  const Index c = nodes_[x].right;
  if (nodes_[c].balance > 0) {
    nodes_[x].balance = 0;
    nodes_[c].balance = 0;
    return rotate_left(x);
  }
  const Index g = nodes_[c].left;
  const int bg = nodes_[g].balance;
  nodes_[x].balance = bg > 0 ? -1 : 0;
  nodes_[c].balance = bg < 0 ? 1 : 0;
  nodes_[g].balance = 0;
  nodes_[x].right = rotate_right(c);
  return rotate_left(x);
}

OrderStatTree::Index OrderStatTree::fix_left_heavy(Index x) noexcept {
  const Index c = nodes_[x].left;
  if (nodes_[c].balance < 0) {
    nodes_[x].balance = 0;
    nodes_[c].balance = 0;
    return rotate_right(x);
  }
  const Index g = nodes_[c].right;
  const int bg = nodes_[g].balance;
  nodes_[x].balance = bg < 0 ? 1 : 0;
  nodes_[c].balance = bg > 0 ? -1 : 0;
  nodes_[g].balance = 0;
  nodes_[x].left = rotate_left(c);
  return rotate_right(x);
}

void OrderStatTree::insert_at_rank(std::size_t rank, Item item) {
  if (rank < 1 || rank > size() + 1) {
    throw std::domain_error("OrderStatTree::insert_at_rank: rank " + std::to_string(rank) +
                            " outside [1, " + std::to_string(size() + 1) + "]");
  }
  if (nodes_.size() >= std::numeric_limits<Index>::max() - 1) {
    throw std::length_error("OrderStatTree: too many items");
  }
  const auto fresh = static_cast<Index>(nodes_.size());
  nodes_.push_back(Node{});
  items_.push_back(item);
  ++count_;
  if (root_ == kNil) {
    root_ = fresh;
    return;
  }

  // Descent fixes left_size on the way down; only balances remain afterwards.
  path_.clear();
  Index node = root_;
  while (node != kNil) {
    Node& n = nodes_[node];
    // Both children are already in flight; start the grandchildren too.
    for (const Index c : {n.left, n.right}) {
      if (c != kNil) {
        prefetch_node(nodes_, nodes_[c].left);
        prefetch_node(nodes_, nodes_[c].right);
      }
    }
    if (rank <= n.left_size + 1) {
      ++n.left_size;
      path_.push_back({node, false});
      node = n.left;
    } else {
      rank -= n.left_size + 1;
      path_.push_back({node, true});
      node = n.right;
    }
  }
  const Step last = path_.back();
  (last.went_right ? nodes_[last.node].right : nodes_[last.node].left) = fresh;

  for (std::size_t i = path_.size(); i-- > 0;) {
    const Step s = path_[i];
    Node& n = nodes_[s.node];
    n.balance += s.went_right ? 1 : -1;
    if (n.balance == 0) return;
    if (n.balance == 1 || n.balance == -1) continue;
    const Index top = n.balance > 0 ? fix_right_heavy(s.node) : fix_left_heavy(s.node);
    if (i == 0) {
      root_ = top;
    } else {
      const Step up = path_[i - 1];
      (up.went_right ? nodes_[up.node].right : nodes_[up.node].left) = top;
    }
    return;
  }
}

OrderStatTree::Item OrderStatTree::item_at_rank(std::size_t rank) const {
  if (rank < 1 || rank > size()) {
    throw std::domain_error("OrderStatTree::item_at_rank: rank " + std::to_string(rank) +
                            " outside [1, " + std::to_string(size()) + "]");
  }
  Index node = root_;
  while (true) {
    const std::size_t left_size = nodes_[node].left_size;
    if (rank == left_size + 1) return items_[node];
    if (rank <= left_size) {
      node = nodes_[node].left;
    } else {
      rank -= left_size + 1;
      node = nodes_[node].right;
    }
  }
}

int OrderStatTree::height() const noexcept {
  int h = 0;
  for (Index node = root_; node != kNil; ++h) {
    node = nodes_[node].balance > 0 ? nodes_[node].right : nodes_[node].left;
  }
  return h;
}

std::vector<OrderStatTree::Item> OrderStatTree::to_sequence() const {
  std::vector<Item> out;
  out.reserve(size());
  std::vector<Index> stack;
  stack.reserve(static_cast<std::size_t>(height()) + 1);
  Index node = root_;
  while (node != kNil || !stack.empty()) {
    while (node != kNil) {
      stack.push_back(node);
      node = nodes_[node].left;
    }
    node = stack.back();
    stack.pop_back();
    out.push_back(items_[node]);
    node = nodes_[node].right;
  }
  return out;
}

OrderStatTree::Check OrderStatTree::check(Index i) const {
  if (i == kNil) return {0, 0, true};
  const auto l = check(nodes_[i].left);
  const auto r = check(nodes_[i].right);
  const std::uint32_t size = 1 + l.size + r.size;
  const std::int32_t height = 1 + std::max(l.height, r.height);
  const bool ok = l.ok && r.ok && l.size == nodes_[i].left_size && r.height - l.height == nodes_[i].balance &&
                  std::abs(l.height - r.height) <= 1;
  return {size, height, ok};
}

bool OrderStatTree::check_invariants() const {
  const auto c = check(root_);
  return c.ok && c.size == count_ && count_ == nodes_.size();
}

} // namespace seqbias
