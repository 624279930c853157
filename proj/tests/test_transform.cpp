#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "strahler/combinatorics.hpp"
#include "strahler/transform.hpp"

using namespace strahler;

namespace {

const BinaryTree L = BinaryTree::leaf();
const BinaryTree cherry = BinaryTree::join(L, L);

}  // namespace

TEST_CASE("phi examples") {
  CHECK(phi(BinaryTree::join(cherry, cherry)) == cherry);
  CHECK(phi(BinaryTree::join(cherry, L)) == L);
  CHECK(phi(cherry) == L);
  CHECK_THROWS_AS(phi(L), std::invalid_argument);
}

TEST_CASE("phi magnitude equals S2") {
  for (int n = 2; n <= 12; ++n) {
    for_each_tree(n, [](const BinaryTree& t) {
      REQUIRE(phi(t).magnitude() == branch_counts(t).at(2));
    });
  }
}

TEST_CASE("shift identity on omega_8") {
  int count = 0;
  for (const auto& t : enumerate_trees(8)) {
    CHECK(shift_check(t));
    ++count;
  }
  CHECK(count == 429);
  CHECK(shift_check(BinaryTree::join(cherry, cherry)));
}

TEST_CASE("preimage examples") {
  CHECK(preimages({cherry, 5}).size() == 6);
  const auto four = preimages({cherry, 4});
  REQUIRE(four.size() == 1);
  CHECK(four[0] == BinaryTree::join(cherry, cherry));
  CHECK(preimages({L, 2}) == std::vector<BinaryTree>{cherry});
}

TEST_CASE("preimages equal the filtered fibre") {
  for (int n = 2; n <= 10; ++n) {
    std::map<BinaryTree, std::set<BinaryTree>> fibres;
    for_each_tree(n, [&](const BinaryTree& t) { fibres[phi(t)].insert(t); });
    for (int m = 1; 2 * m <= n; ++m) {
      for (const auto& tau : enumerate_trees(m)) {
        const auto gen = preimages({tau, n});
        const std::set<BinaryTree> as_set(gen.begin(), gen.end());
        CHECK(as_set.size() == gen.size());
        CHECK(as_set == fibres[tau]);
        CHECK(BigInt(static_cast<unsigned long>(gen.size())) == multiplicity(n, m));
      }
    }
  }
}

TEST_CASE("round trip through the fibre") {
  for (int n = 2; n <= 10; ++n) {
    for_each_tree(n, [n](const BinaryTree& t) {
      const auto gen = preimages({phi(t), n});
      REQUIRE(std::count(gen.begin(), gen.end(), t) == 1);
    });
  }
}

TEST_CASE("phi is surjective") {
  for (int m = 1; m <= 5; ++m) {
    std::set<BinaryTree> reached;
    for_each_tree(2 * m, [&](const BinaryTree& t) {
      if (branch_counts(t).at(2) == m) reached.insert(phi(t));
    });
    CHECK(BigInt(static_cast<unsigned long>(reached.size())) == catalan(m - 1));
  }
}

TEST_CASE("generator is lazy and terminates") {
  PreimageGenerator gen({BinaryTree::join(cherry, L), 9});
  long count = 0;
  while (auto t = gen.next()) {
    CHECK(t->magnitude() == 9);
    ++count;
  }
  CHECK(BigInt(count) == multiplicity(9, 3));
  CHECK_FALSE(gen.next().has_value());
}

TEST_CASE("invalid preimage requests") {
  CHECK_THROWS_AS(preimages({cherry, 3}), std::invalid_argument);
}
