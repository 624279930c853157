#include "strahler/tree.hpp"

#include <stdexcept>
#include <utility>

#include "strahler/combinatorics.hpp"
#include "strahler/error.hpp"

namespace strahler {

namespace {

bool valid_preorder(const std::vector<std::uint8_t>& code) {
  // `need` counts subtrees still to be read.
  std::size_t need = 1;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (need == 0) return false;
    if (code[i] == 1) {
      ++need;
    } else if (code[i] == 0) {
      --need;
    } else {
      return false;
    }
  }
  return need == 0;
}

int combine_orders(int left, int right) {
  return left == right ? left + 1 : std::max(left, right);
}

void check_enumeration_limit(int n, int limit) {
  if (n < 1) throw std::invalid_argument("magnitude must be >= 1");
  if (n > limit) {
    throw LimitExceeded("enumeration of magnitude " + std::to_string(n) +
                        " exceeds the limit " + std::to_string(limit));
  }
}

std::vector<std::vector<BinaryTree>> trees_below(int n) {
  std::vector<std::vector<BinaryTree>> by_size(static_cast<std::size_t>(n));
  if (n > 1) by_size[1].push_back(BinaryTree::leaf());
  for (int k = 2; k < n; ++k) {
    auto& out = by_size[static_cast<std::size_t>(k)];
    for (int a = 1; a < k; ++a) {
      for (const auto& l : by_size[static_cast<std::size_t>(a)]) {
        for (const auto& r : by_size[static_cast<std::size_t>(k - a)]) {
          out.push_back(BinaryTree::join(l, r));
        }
      }
    }
  }
  return by_size;
}

void unrank_into(int n, BigInt rank, std::vector<std::uint8_t>& out) {
  while (n > 1) {
    // Trees with left magnitude a occupy a block of c_{a-1} * c_{n-a-1} ranks.
    int a = 1;
    BigInt block;
    for (;; ++a) {
      block = catalan(a - 1) * catalan(n - a - 1);
      if (rank < block) break;
      rank -= block;
    }
    const BigInt right_count = catalan(n - a - 1);
    BigInt left_rank, right_rank;
    mpz_fdiv_qr(left_rank.get_mpz_t(), right_rank.get_mpz_t(), rank.get_mpz_t(),
                right_count.get_mpz_t());
    out.push_back(1);
    unrank_into(a, left_rank, out);
    n -= a;
    rank = right_rank;
  }
  out.push_back(0);
}

}  // namespace

BinaryTree BinaryTree::join(const BinaryTree& left, const BinaryTree& right) {
  std::vector<std::uint8_t> code;
  code.reserve(1 + left.code_.size() + right.code_.size());
  code.push_back(1);
  code.insert(code.end(), left.code_.begin(), left.code_.end());
  code.insert(code.end(), right.code_.begin(), right.code_.end());
  return BinaryTree(std::move(code), Unchecked{});
}

BinaryTree BinaryTree::from_preorder(std::vector<std::uint8_t> code) {
  if (!valid_preorder(code)) throw std::invalid_argument("not a full binary tree preorder code");
  return BinaryTree(std::move(code), Unchecked{});
}

std::size_t BinaryTree::left_end() const {
  std::size_t need = 1;
  std::size_t i = 1;
  for (; need != 0; ++i) need = code_[i] == 1 ? need + 1 : need - 1;
  return i;
}

BinaryTree BinaryTree::left() const {
  if (is_leaf()) throw std::logic_error("leaf has no children");
  return BinaryTree({code_.begin() + 1, code_.begin() + static_cast<std::ptrdiff_t>(left_end())},
                    Unchecked{});
}

BinaryTree BinaryTree::right() const {
  if (is_leaf()) throw std::logic_error("leaf has no children");
  return BinaryTree({code_.begin() + static_cast<std::ptrdiff_t>(left_end()), code_.end()},
                    Unchecked{});
}

OrderedTree strahler_orders(const BinaryTree& t) {
  const auto code = t.preorder();
  std::vector<int> orders(code.size());
  // Reverse preorder: a node is seen after both subtrees, left on top.
  std::vector<int> stack;
  for (std::size_t i = code.size(); i-- > 0;) {
    if (code[i] == 0) {
      orders[i] = 1;
    } else {
      const int left = stack.back();
      stack.pop_back();
      const int right = stack.back();
      stack.pop_back();
      orders[i] = combine_orders(left, right);
    }
    stack.push_back(orders[i]);
  }
  return OrderedTree{t, std::move(orders)};
}

std::vector<std::int64_t> BranchProfile::window(int r, int p) const {
  std::vector<std::int64_t> values(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) values[static_cast<std::size_t>(j)] = at(r + j);
  return values;
}

BranchProfile branch_counts(const BinaryTree& t) {
  const auto code = t.preorder();
  std::vector<std::int64_t> counts;
  auto bump = [&counts](int order) {
    if (counts.size() < static_cast<std::size_t>(order)) counts.resize(static_cast<std::size_t>(order), 0);
    ++counts[static_cast<std::size_t>(order - 1)];
  };
  std::vector<int> stack;
  for (std::size_t i = code.size(); i-- > 0;) {
    if (code[i] == 0) {
      stack.push_back(1);
      continue;
    }
    const int left = stack.back();
    stack.pop_back();
    const int right = stack.back();
    stack.pop_back();
    const int order = combine_orders(left, right);
    if (left != order) bump(left);
    if (right != order) bump(right);
    stack.push_back(order);
  }
  bump(stack.back());
  return BranchProfile{std::move(counts), t.magnitude()};
}

std::vector<BinaryTree> enumerate_trees(int n, int limit) {
  std::vector<BinaryTree> out;
  for_each_tree(n, [&out](const BinaryTree& t) { out.push_back(t); }, limit);
  return out;
}

void for_each_tree(int n, const std::function<void(const BinaryTree&)>& visit, int limit) {
  check_enumeration_limit(n, limit);
  if (n == 1) {
    visit(BinaryTree::leaf());
    return;
  }
  const auto by_size = trees_below(n);
  for (int a = 1; a < n; ++a) {
    for (const auto& l : by_size[static_cast<std::size_t>(a)]) {
      for (const auto& r : by_size[static_cast<std::size_t>(n - a)]) {
        visit(BinaryTree::join(l, r));
      }
    }
  }
}

BigInt rank_tree(const BinaryTree& t) {
  if (t.is_leaf()) return 0;
  const int n = t.magnitude();
  const BinaryTree l = t.left();
  const BinaryTree r = t.right();
  const int a = l.magnitude();
  BigInt rank = 0;
  for (int j = 1; j < a; ++j) rank += catalan(j - 1) * catalan(n - j - 1);
  rank += rank_tree(l) * catalan(n - a - 1) + rank_tree(r);
  return rank;
}

BinaryTree unrank_tree(int n, const BigInt& rank) {
  if (n < 1) throw std::invalid_argument("magnitude must be >= 1");
  if (rank < 0 || rank >= catalan(n - 1)) throw std::out_of_range("tree rank out of range");
  std::vector<std::uint8_t> code;
  code.reserve(static_cast<std::size_t>(2 * n - 1));
  unrank_into(n, rank, code);
  return BinaryTree(std::move(code), BinaryTree::Unchecked{});
}

std::string encode(const BinaryTree& t) {
  const auto code = t.preorder();
  std::string out;
  out.reserve(code.size() * 2);
  std::vector<int> done;  // children finished, per open internal node
  for (const std::uint8_t c : code) {
    if (c == 1) {
      out.push_back('(');
      done.push_back(0);
      continue;
    }
    out.push_back('*');
    while (!done.empty()) {
      if (++done.back() == 1) {
        out.push_back(' ');
        break;
      }
      out.push_back(')');
      done.pop_back();
    }
  }
  return out;
}

BinaryTree decode(std::string_view text) {
  std::vector<std::uint8_t> code;
  std::vector<int> done;
  std::size_t pos = 0;
  auto expect = [&](char want) {
    if (pos >= text.size()) {
      throw ParseError(std::string("expected '") + want + "', got end of input", pos);
    }
    if (text[pos] != want) {
      throw ParseError(std::string("expected '") + want + "'", pos);
    }
    ++pos;
  };
  for (;;) {
    // Expecting the start of a subtree.
    if (pos >= text.size()) throw ParseError("expected '*' or '(', got end of input", pos);
    const char c = text[pos];
    if (c == '(') {
      code.push_back(1);
      done.push_back(0);
      ++pos;
      continue;
    }
    if (c != '*') throw ParseError("expected '*' or '('", pos);
    code.push_back(0);
    ++pos;
    // A subtree just closed; unwind finished parents.
    bool need_subtree = false;
    while (!done.empty()) {
      if (++done.back() == 1) {
        expect(' ');
        need_subtree = true;
        break;
      }
      expect(')');
      done.pop_back();
    }
    if (!need_subtree) break;
  }
  if (pos != text.size()) throw ParseError("trailing characters", pos);
  return BinaryTree::from_preorder(std::move(code));
}

BinaryTree left_caterpillar(int n) {
  if (n < 1) throw std::invalid_argument("magnitude must be >= 1");
  // Internal nodes down the left spine, a leaf hanging right of each.
  std::vector<std::uint8_t> code(static_cast<std::size_t>(n - 1), 1);
  code.insert(code.end(), static_cast<std::size_t>(n), 0);
  return BinaryTree::from_preorder(std::move(code));
}

BinaryTree complete_tree(int depth) {
  BinaryTree t;
  for (int d = 0; d < depth; ++d) t = BinaryTree::join(t, t);
  return t;
}

}  // namespace strahler
