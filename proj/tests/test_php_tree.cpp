#include "phplab/errors.hpp"
#include "phplab/php_tree.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace phplab;

namespace {

std::vector<Condition> conds(std::initializer_list<Condition> list) { return {list}; }

}  // namespace

TEST_CASE("leaf families of canonical constructions") {
  const Scale s3 = Scale::make(3, 2);
  CHECK(leaves(PhpTree::root_only(s3, Condition())).leaves == conds({Condition()}));
  CHECK(leaves(pigeon_chain(Condition(), 1, s3)).leaves ==
        conds({Condition{{0, 0}}, Condition{{0, 1}}, Condition{{0, 2}}}));

  const PhpTree d = decide_condition_tree(Condition(), Condition{{0, 0}}, s3);
  CHECK(leaf_count(d) == 7);
  for (const auto& l : leaves(d).leaves) {
    CHECK(decides_condition(l, Condition(), Condition{{0, 0}}));
    if (!l.contains({0, 0})) CHECK(l.size() == 2);
  }
  CHECK(leaf_count(decide_condition_tree(Condition(), Condition(), s3)) == 1);
  CHECK(leaf_count(decide_condition_tree(Condition{{0, 0}}, Condition{{0, 0}}, s3)) == 1);
  CHECK_THROWS_AS(decide_condition_tree(Condition{{0, 0}}, Condition{{0, 1}}, s3), RegimeError);
}

TEST_CASE("pigeon chains") {
  const Scale s4 = Scale::make(4, 2);
  CHECK(leaf_count(pigeon_chain(Condition(), 2, s4)) == 12);
  CHECK(leaf_count(pigeon_chain(Condition(), 0, s4)) == 1);
  CHECK(leaf_count(pigeon_chain(Condition{{5, 5}}, 1, Scale::make(6, 2))) == 5);
  CHECK(is_uniform(pigeon_chain(Condition(), 3, s4), 3));
  CHECK_THROWS_AS(pigeon_chain(Condition(), 5, s4), RegimeError);
}

TEST_CASE("min leaf count") {
  CHECK(min_leaf_count(4, 0, 2) == 12);
  CHECK(min_leaf_count(7, 2, 0) == 1);
  CHECK(min_leaf_count(5, 1, 3) == 24);
  CHECK_THROWS_AS(min_leaf_count(3, 1, 3), RegimeError);
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k <= std::min(3, n); ++k) {
      CHECK(BigInt(leaf_count(pigeon_chain(Condition(), k, Scale::make(n, 1)))) ==
            min_leaf_count(n, 0, k));
    }
  }
}

TEST_CASE("grafting") {
  const Scale s3 = Scale::make(3, 2);
  const Scale s4 = Scale::make(4, 2);
  const PhpTree p = pigeon_chain(Condition(), 1, s4);
  const PhpTree same = graft(p, [&](const Condition& l) { return PhpTree::root_only(s4, l); });
  CHECK(leaves(same).leaves == leaves(p).leaves);

  const PhpTree root = PhpTree::root_only(s3, Condition());
  const PhpTree grown = graft(root, std::map<Condition, PhpTree>{
                                        {Condition(), pigeon_chain(Condition(), 1, s3)}});
  CHECK(leaves(grown).leaves == leaves(pigeon_chain(Condition(), 1, s3)).leaves);

  const PhpTree two = graft(p, [&](const Condition& l) { return pigeon_chain(l, 1, s4); });
  CHECK(is_uniform(two, 2));
  CHECK(leaf_count(two) == 12);

  CHECK_THROWS_AS(graft(p, std::map<Condition, PhpTree>{}), PreconditionError);
  CHECK_THROWS_AS(graft(p, [&](const Condition&) { return PhpTree::root_only(s4, Condition()); }),
                  AmbientMismatchError);
  CHECK_THROWS_AS(
      graft(p, [&](const Condition& l) { return PhpTree::root_only(Scale::make(5, 2), l); }),
      AmbientMismatchError);
}

TEST_CASE("graft leaves extend exactly one base leaf") {
  const Scale s = Scale::make(5, 2);
  testing::TreeGenerator gen(s, 7);
  for (int trial = 0; trial < 30; ++trial) {
    const PhpTree p = gen.next(Condition(), 2);
    const PhpTree g = graft(p, [&](const Condition& l) { return gen.next(l, 2); });
    const auto base_leaves = leaves(p).leaves;
    for (const auto& l : leaves(g).leaves) {
      int hits = 0;
      for (const auto& b : base_leaves) hits += extends(l, b) ? 1 : 0;
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("extend_uniform") {
  const Scale s3 = Scale::make(3, 2);
  const Scale s4 = Scale::make(4, 2);
  const PhpTree r = extend_uniform(PhpTree::root_only(s3, Condition()), 1);
  CHECK(leaf_count(r) == 3);
  const PhpTree c = pigeon_chain(Condition(), 2, s4);
  CHECK(leaves(extend_uniform(c, 2)).leaves == leaves(c).leaves);
  const PhpTree d = extend_uniform(decide_condition_tree(Condition(), Condition{{0, 0}}, s4), 2);
  CHECK(is_uniform(d, 2));
  CHECK(BigInt(leaf_count(d)) >= min_leaf_count(4, 0, 2));
  CHECK_THROWS_AS(extend_uniform(c, 1), PreconditionError);
  CHECK_THROWS_AS(extend_uniform(c, 5), RegimeError);
}

TEST_CASE("covering") {
  CHECK(check_covering(leaves(pigeon_chain(Condition(), 1, Scale::make(3, 1))),
                       Scale::make(3, 1)));
  const auto tight = leaves(pigeon_chain(Condition(), 2, Scale::make(2, 1)));
  CHECK_FALSE(check_covering(tight, Scale::make(2, 1)));
  CHECK(find_uncovered(tight, Scale::make(2, 1)) == Condition{{2, 0}});
  CHECK(check_covering(LeafFamily{Condition(), {Condition()}}, Scale::make(3, 2)));
}

TEST_CASE("random trees: antichain always, covering in regime") {
  for (int n = 3; n <= 5; ++n) {
    const Scale s = Scale::make(n, 1);
    testing::TreeGenerator gen(s, 100 + static_cast<std::uint64_t>(n));
    for (int trial = 0; trial < 40; ++trial) {
      const PhpTree t = gen.next(Condition(), n - 1);
      const auto fam = leaves(t);
      CHECK(is_antichain(fam.leaves));
      if (depth(t) + s.k_cap <= n) CHECK(check_covering(fam, s));
    }
  }
}

TEST_CASE("tree validation rejects malformed trees") {
  const Scale s = Scale::make(2, 1);
  std::map<int, NodePtr> partial{{0, make_leaf()}};
  CHECK_THROWS_AS(PhpTree(s, Condition(), make_pigeon_query(0, partial)), InvalidTreeError);
  std::map<int, NodePtr> full{{0, make_leaf()}, {1, make_leaf()}};
  CHECK_THROWS_AS(PhpTree(s, Condition{{0, 0}}, make_pigeon_query(0, full)), InvalidTreeError);
  CHECK_THROWS_AS(PhpTree(s, Condition{{5, 0}}, make_leaf()), InvalidTreeError);
}

TEST_CASE("tree JSON round-trips") {
  const Scale s = Scale::make(4, 2);
  const PhpTree t = decide_condition_tree(Condition{{4, 3}}, Condition{{0, 0}}, s);
  const PhpTree back = tree_from_json(to_json(t));
  CHECK(back.base() == t.base());
  CHECK(back.scale() == t.scale());
  CHECK(to_json(back) == to_json(t));
}
