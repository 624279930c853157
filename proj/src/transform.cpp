#include "strahler/transform.hpp"

#include <stdexcept>
#include <utility>

namespace strahler {

BinaryTree phi(const BinaryTree& t) {
  if (t.is_leaf()) throw std::invalid_argument("phi is undefined on a single leaf");
  const auto code = t.preorder();
  // Image code of each finished subtree; empty for a leaf (removed).
  std::vector<std::vector<std::uint8_t>> stack;
  for (std::size_t i = code.size(); i-- > 0;) {
    if (code[i] == 0) {
      stack.emplace_back();
      continue;
    }
    auto left = std::move(stack.back());
    stack.pop_back();
    auto right = std::move(stack.back());
    stack.pop_back();
    if (left.empty() && right.empty()) {
      stack.push_back({0});
    } else if (left.empty()) {
      stack.push_back(std::move(right));
    } else if (right.empty()) {
      stack.push_back(std::move(left));
    } else {
      std::vector<std::uint8_t> joined;
      joined.reserve(1 + left.size() + right.size());
      joined.push_back(1);
      joined.insert(joined.end(), left.begin(), left.end());
      joined.insert(joined.end(), right.begin(), right.end());
      stack.push_back(std::move(joined));
    }
  }
  return BinaryTree::from_preorder(std::move(stack.back()));
}

bool shift_check(const BinaryTree& t) {
  const BranchProfile before = branch_counts(t);
  const BranchProfile after = branch_counts(phi(t));
  const int top = std::max(before.max_order(), after.max_order() + 1);
  for (int r = 2; r <= top; ++r) {
    if (after.at(r - 1) != before.at(r)) return false;
  }
  return true;
}

PreimageGenerator::PreimageGenerator(PreimageSpec spec) : spec_(std::move(spec)) {
  const int m = spec_.base.magnitude();
  const int extra = spec_.intermediate_count();
  if (extra < 0) throw std::invalid_argument("preimage target magnitude must be >= 2m");
  chains_.assign(static_cast<std::size_t>(2 * m - 1), 0);
  chains_.back() = extra;
  sides_.assign(static_cast<std::size_t>(extra), 0);
}

std::optional<BinaryTree> PreimageGenerator::next() {
  if (done_) return std::nullopt;
  BinaryTree out = build();
  if (!advance_sides() && !advance_chains()) done_ = true;
  return out;
}

bool PreimageGenerator::advance_sides() {
  // Binary increment, last position least significant.
  for (std::size_t i = sides_.size(); i-- > 0;) {
    if (sides_[i] == 0) {
      sides_[i] = 1;
      return true;
    }
    sides_[i] = 0;
  }
  return false;
}

bool PreimageGenerator::advance_chains() {
  std::size_t last = chains_.size();
  for (std::size_t i = chains_.size(); i-- > 0;) {
    if (chains_[i] > 0) {
      last = i;
      break;
    }
  }
  if (last == chains_.size() || last == 0) return false;
  const int v = chains_[last];
  chains_[last] = 0;
  ++chains_[last - 1];
  chains_.back() += v - 1;
  return true;
}

BinaryTree PreimageGenerator::build() const {
  const auto tau = spec_.base.preorder();
  std::vector<std::size_t> first_side(chains_.size() + 1, 0);
  for (std::size_t s = 0; s < chains_.size(); ++s) {
    first_side[s + 1] = first_side[s] + static_cast<std::size_t>(chains_[s]);
  }

  std::size_t cursor = 0;
  auto grow = [&](auto&& self) -> BinaryTree {
    const std::size_t node = cursor++;
    BinaryTree inner;
    if (tau[node] == 0) {
      inner = BinaryTree::join(BinaryTree::leaf(), BinaryTree::leaf());
    } else {
      BinaryTree l = self(self);
      BinaryTree r = self(self);
      inner = BinaryTree::join(l, r);
    }
    // Wrap the chain bottom-up; the first side bit belongs to the top node.
    for (std::size_t j = first_side[node + 1]; j-- > first_side[node];) {
      inner = sides_[j] == 0 ? BinaryTree::join(BinaryTree::leaf(), inner)
                             : BinaryTree::join(inner, BinaryTree::leaf());
    }
    return inner;
  };
  return grow(grow);
}

std::vector<BinaryTree> preimages(const PreimageSpec& spec) {
  std::vector<BinaryTree> out;
  PreimageGenerator gen(spec);
  while (auto t = gen.next()) out.push_back(std::move(*t));
  return out;
}

}  // namespace strahler
