#include <gtest/gtest.h>

#include "balpairs/poset.hpp"
#include "support.hpp"

using namespace balpairs;
using namespace testing_support;

namespace {

std::vector<Relation> rel(std::initializer_list<Relation> r) { return r; }

}  // namespace

TEST(FromRelations, TwoPlusOneClosureAndCovers) {
  const Poset p = two_plus_one();
  EXPECT_TRUE(p.less(0, 2));
  EXPECT_FALSE(p.less(2, 0));
  EXPECT_FALSE(p.comparable(0, 1));
  EXPECT_EQ(p.cover_relations(), rel({{0, 2}}));
}

TEST(FromRelations, AntichainHasNoCovers) {
  const Poset p = antichain(2);
  EXPECT_TRUE(p.incomparable(0, 1));
  EXPECT_TRUE(p.cover_relations().empty());
}

TEST(FromRelations, ReductionDropsTransitiveEdge) {
  const Poset p = Poset::from_relations(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(p.cover_relations(), rel({{0, 1}, {1, 2}}));
  EXPECT_TRUE(p.less(0, 2));
}

TEST(FromRelations, CycleIsRejectedWithWitness) {
  try {
    Poset::from_relations(3, {{0, 1}, {1, 2}, {2, 0}});
    FAIL() << "expected CycleError";
  } catch (const CycleError& e) {
    const auto& c = e.cycle();
    ASSERT_GE(c.size(), 3u);
    EXPECT_EQ(c.front(), c.back());
  }
  EXPECT_THROW(Poset::from_relations(1, {{0, 0}}), CycleError);
}

TEST(FromRelations, BadIdIsRejected) {
  EXPECT_THROW(Poset::from_relations(2, {{0, 2}}), BadIdError);
}

TEST(Dual, ReversesChainAndKeepsAntichain) {
  const Poset d = dual(chain(3));
  EXPECT_TRUE(d.less(2, 1));
  EXPECT_TRUE(d.less(1, 0));
  EXPECT_EQ(dual(antichain(3)), antichain(3));
}

TEST(Dual, ThreePlusOneKeepsYIsolated) {
  const Poset d = dual(three_plus_one());
  EXPECT_TRUE(d.less(3, 1));
  EXPECT_TRUE(d.less(1, 0));
  for (ElementId v : {0u, 1u, 3u}) EXPECT_TRUE(d.incomparable(2, v));
}

TEST(UpDownSets, Examples) {
  EXPECT_EQ(up_set(three_plus_one(), 0), (std::vector<ElementId>{1, 3}));
  EXPECT_TRUE(up_set(antichain(3), 1).empty());
  EXPECT_EQ(down_set(two_plus_one(), 2), (std::vector<ElementId>{0}));
}

TEST(IncomparablePairs, Examples) {
  EXPECT_TRUE(incomparable_pairs(chain(4)).empty());
  EXPECT_EQ(incomparable_pairs(antichain(2)), rel({{0, 1}, {1, 0}}));
  EXPECT_EQ(incomparable_pairs(two_plus_one()), rel({{0, 1}, {1, 0}, {1, 2}, {2, 1}}));
}

TEST(CriticalPair, Examples) {
  EXPECT_TRUE(is_critical_pair(two_plus_one(), 1, 2));
  EXPECT_FALSE(is_critical_pair(two_plus_one(), 0, 2));
  EXPECT_TRUE(is_critical_pair(antichain(2), 0, 1));
  EXPECT_TRUE(is_critical_pair(antichain(2), 1, 0));
}

TEST(Autonomous, Examples) {
  const Poset p = two_plus_one();
  EXPECT_TRUE(is_autonomous(p, std::vector<ElementId>{2}));
  EXPECT_FALSE(is_autonomous(p, std::vector<ElementId>{0, 1}));
  const Restriction r = restrict_without(p, std::vector<ElementId>{2});
  EXPECT_TRUE(is_autonomous(r.poset, std::vector<ElementId>{0, 1}));
}

TEST(Restrict, Examples) {
  const Poset r = restrict(chain(3), std::vector<ElementId>{0, 2});
  EXPECT_EQ(r.cover_relations(), rel({{0, 1}}));
  EXPECT_TRUE(is_chain(restrict(three_plus_one(), std::vector<ElementId>{0, 1, 3})));
  const Poset n = n_poset();
  EXPECT_EQ(restrict(n, std::vector<ElementId>{0, 1, 2, 3}), n);
}

TEST(CoverGraph, Examples) {
  const auto g = cover_graph(chain(3));
  EXPECT_EQ(g[1], (std::vector<ElementId>{0, 2}));
  const auto a = cover_graph(two_plus_one());
  EXPECT_TRUE(a[1].empty());
  EXPECT_EQ(a[0], (std::vector<ElementId>{2}));
  const auto d = cover_graph(diamond());
  for (const auto& adj : d) EXPECT_EQ(adj.size(), 2u);
}

TEST(ChainSubset, Examples) {
  const Poset p = three_plus_one();
  EXPECT_TRUE(is_chain_subset(p, std::vector<ElementId>{}));
  EXPECT_TRUE(is_chain_subset(p, std::vector<ElementId>{2}));
  EXPECT_TRUE(is_chain_subset(p, std::vector<ElementId>{0, 1, 3}));
  EXPECT_FALSE(is_chain_subset(p, std::vector<ElementId>{0, 2}));
}

TEST(Components, SplitsIsolatedElement) {
  const auto c = components(three_plus_one());
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (std::vector<ElementId>{0, 1, 3}));
  EXPECT_EQ(c[1], (std::vector<ElementId>{2}));
}

// Invariants over random posets.
class PosetProperties : public ::testing::TestWithParam<int> {};

TEST_P(PosetProperties, ClosureReductionDualRestrict) {
  std::mt19937_64 rng(1000 + GetParam());
  for (int iter = 0; iter < 40; ++iter) {
    const std::size_t n = 1 + rng() % 9;
    const double density = 0.1 + 0.1 * (rng() % 5);
    std::vector<ElementId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Relation> r;
    std::bernoulli_distribution coin(density);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (coin(rng)) r.push_back({perm[i], perm[j]});
    const Poset p = Poset::from_relations(n, r);

    // closure equals the brute-force closure of the input
    const auto c = brute_closure(n, r);
    for (ElementId a = 0; a < n; ++a)
      for (ElementId b = 0; b < n; ++b) ASSERT_EQ(p.less(a, b), c[a][b]);

    // covers are exactly the pairs without an intermediate element, and
    // they generate the closure
    const auto covers = p.cover_relations();
    const auto cc = brute_closure(n, covers);
    for (ElementId a = 0; a < n; ++a)
      for (ElementId b = 0; b < n; ++b) {
        ASSERT_EQ(cc[a][b], c[a][b]);
        bool intermediate = false;
        for (ElementId z = 0; z < n; ++z) intermediate |= c[a][z] && c[z][b];
        ASSERT_EQ(p.covers(a, b), c[a][b] && !intermediate);
      }

    const Poset d = dual(p);
    ASSERT_EQ(dual(d), p);
    for (ElementId x = 0; x < n; ++x) ASSERT_EQ(up_set(p, x), down_set(d, x));

    for (const auto& [x, y] : incomparable_pairs(p)) {
      ASSERT_TRUE(p.incomparable(x, y));
      ASSERT_TRUE(p.incomparable(y, x));
    }
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = 0; y < n; ++y)
        if (x != y && is_critical_pair(p, x, y)) ASSERT_TRUE(p.incomparable(x, y));

    std::vector<ElementId> subset;
    for (ElementId x = 0; x < n; ++x)
      if (rng() % 2) subset.push_back(x);
    if (subset.empty()) continue;
    const Poset s = restrict(p, subset);
    for (std::size_t i = 0; i < subset.size(); ++i)
      for (std::size_t j = 0; j < subset.size(); ++j)
        ASSERT_EQ(s.less(i, j), p.less(subset[i], subset[j]));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PosetProperties, ::testing::Range(0, 5));
