#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "strahler/tree.hpp"

namespace strahler {

// Remove every leaf, then contract each resulting single-child node into its
// child. Shifts every Horton-Strahler order down by one. Requires magnitude >= 2.
BinaryTree phi(const BinaryTree& t);

// True iff S_{r-1}(phi(t)) == S_r(t) for every r >= 2.
bool shift_check(const BinaryTree& t);

struct PreimageSpec {
  BinaryTree base;  // tau, magnitude m
  int n = 0;        // target magnitude, n >= 2m

  int intermediate_count() const { return n - 2 * base.magnitude(); }
};

// Deterministic, resumable generator of phi^{-1}(tau) within Omega_n.
//
// Construction: every leaf of tau becomes a cherry; the n - 2m intermediate
// nodes are distributed as chains over the 2m - 1 slots (the edge above each
// node of tau, root included), giving C(n-2, n-2m) placements; each
// intermediate node carries one new leaf on its left or right side.
// Placements are visited in lexicographic order of the per-slot chain lengths
// (slots in tau's preorder), side patterns in binary counting order.
class PreimageGenerator {
 public:
  explicit PreimageGenerator(PreimageSpec spec);

  std::optional<BinaryTree> next();

 private:
  bool advance_sides();
  bool advance_chains();
  BinaryTree build() const;

  PreimageSpec spec_;
  std::vector<int> chains_;          // chain length per slot
  std::vector<std::uint8_t> sides_;  // 0 = new leaf on the left
  bool done_ = false;
};

std::vector<BinaryTree> preimages(const PreimageSpec& spec);

}  // namespace strahler
