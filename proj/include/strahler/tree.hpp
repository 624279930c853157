#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "strahler/numeric.hpp"

namespace strahler {

inline constexpr int kDefaultEnumerationLimit = 14;

// Full ordered binary tree, stored as its preorder node sequence
// (1 = internal node, 0 = leaf). The preorder code of a full binary tree is
// unique, so structural equality is code equality.
class BinaryTree {
 public:
  BinaryTree() : code_{0} {}

  static BinaryTree leaf() { return BinaryTree(); }
  static BinaryTree join(const BinaryTree& left, const BinaryTree& right);
  // Throws std::invalid_argument unless `code` is a valid full-tree preorder.
  static BinaryTree from_preorder(std::vector<std::uint8_t> code);

  bool is_leaf() const noexcept { return code_.size() == 1; }
  std::size_t node_count() const noexcept { return code_.size(); }
  int magnitude() const noexcept { return static_cast<int>((code_.size() + 1) / 2); }

  // Both require !is_leaf().
  BinaryTree left() const;
  BinaryTree right() const;

  std::span<const std::uint8_t> preorder() const noexcept { return code_; }

  friend bool operator==(const BinaryTree&, const BinaryTree&) = default;
  friend auto operator<=>(const BinaryTree&, const BinaryTree&) = default;

 private:
  struct Unchecked {};
  BinaryTree(std::vector<std::uint8_t> code, Unchecked) : code_(std::move(code)) {}
  std::size_t left_end() const;

  std::vector<std::uint8_t> code_;

  friend BinaryTree unrank_tree(int n, const BigInt& rank);
};

inline int magnitude(const BinaryTree& t) noexcept { return t.magnitude(); }

// Tree with a Horton-Strahler order on every node, in preorder.
struct OrderedTree {
  BinaryTree tree;
  std::vector<int> orders;

  int root_order() const { return orders.front(); }
};

OrderedTree strahler_orders(const BinaryTree& t);

// counts[r - 1] = S_r, the number of order-r branches, for r = 1..R.
struct BranchProfile {
  std::vector<std::int64_t> counts;
  int magnitude = 1;

  int max_order() const noexcept { return static_cast<int>(counts.size()); }
  // S_r, zero above the root order.
  std::int64_t at(int r) const noexcept {
    return r >= 1 && r <= max_order() ? counts[static_cast<std::size_t>(r - 1)] : 0;
  }
  // (S_r, ..., S_{r+p-1}).
  std::vector<std::int64_t> window(int r, int p) const;

  friend bool operator==(const BranchProfile&, const BranchProfile&) = default;
};

// An order-r node heads a branch iff it is the root or its parent has a
// different order; S_r counts the heads. One pass over the preorder code.
BranchProfile branch_counts(const BinaryTree& t);

// All of Omega_n in canonical order: left-subtree magnitude ascending, then
// left rank, then right rank. Throws LimitExceeded when n > limit.
std::vector<BinaryTree> enumerate_trees(int n, int limit = kDefaultEnumerationLimit);

// Streaming form of enumerate_trees; same order, only magnitudes < n are kept.
void for_each_tree(int n, const std::function<void(const BinaryTree&)>& visit,
                   int limit = kDefaultEnumerationLimit);

// Position of t in the canonical order of Omega_{magnitude(t)}.
BigInt rank_tree(const BinaryTree& t);
// Inverse of rank_tree; requires 0 <= rank < catalan(n - 1).
BinaryTree unrank_tree(int n, const BigInt& rank);

// Text codec: leaf "*", internal "(" left " " right ")".
std::string encode(const BinaryTree& t);
BinaryTree decode(std::string_view text);

BinaryTree left_caterpillar(int n);
BinaryTree complete_tree(int depth);

}  // namespace strahler

template <>
struct std::hash<strahler::BinaryTree> {
  std::size_t operator()(const strahler::BinaryTree& t) const noexcept {
    auto code = t.preorder();
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(code.data()), code.size()));
  }
};
