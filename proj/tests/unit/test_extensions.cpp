#include <gtest/gtest.h>

#include "balpairs/extensions.hpp"
#include "balpairs/harness.hpp"
#include "support.hpp"

using namespace balpairs;
using namespace testing_support;

namespace {

Rational q(long a, long b) { return make_rational(a, b); }

std::vector<std::vector<ElementId>> orders(const std::vector<LinearExtension>& e) {
  std::vector<std::vector<ElementId>> out;
  for (const auto& x : e) out.push_back(x.order);
  return out;
}

}  // namespace

TEST(Enumerate, Examples) {
  EXPECT_EQ(orders(enumerate_extensions(antichain(2))),
            (std::vector<std::vector<ElementId>>{{0, 1}, {1, 0}}));
  // xyz, xzy, yxz
  EXPECT_EQ(orders(enumerate_extensions(two_plus_one())),
            (std::vector<std::vector<ElementId>>{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}}));
  EXPECT_EQ(orders(enumerate_extensions(chain(3))), (std::vector<std::vector<ElementId>>{{0, 1, 2}}));
}

TEST(Enumerate, CapRaisesSizeError) {
  EXPECT_THROW(enumerate_extensions(antichain(13)), SizeError);
  EngineLimits l;
  l.enumeration_cap = 3;
  EXPECT_THROW(enumerate_extensions(antichain(4), l), SizeError);
}

TEST(Count, Examples) {
  EXPECT_EQ(count_extensions(antichain(5)), BigInt(120));
  EXPECT_EQ(count_extensions(two_plus_two()), BigInt(6));
  EXPECT_EQ(count_extensions(n_poset()), BigInt(5));
  EXPECT_EQ(count_extensions(chain(7)), BigInt(1));
  // 20! does not fit the oracle, but the DP is exact
  EXPECT_EQ(count_extensions(antichain(20)).get_str(), "2432902008176640000");
}

TEST(ProbBefore, Examples) {
  EXPECT_EQ(prob_before(two_plus_one(), 0, 1), q(2, 3));
  EXPECT_EQ(prob_before(chain(2), 0, 1), q(1, 1));
  EXPECT_EQ(prob_before(three_plus_one(), 2, 0), q(1, 4));
}

TEST(IsBalanced, Examples) {
  EXPECT_TRUE(is_balanced(two_plus_one(), 0, 1));
  EXPECT_FALSE(is_balanced(three_plus_one(), 2, 0));
  EXPECT_FALSE(is_balanced(chain(2), 0, 1));
}

TEST(Sandwich, Examples) {
  EXPECT_EQ(prob_sandwich(two_plus_one(), 0, 2, 1), q(1, 3));
  EXPECT_EQ(prob_sandwich(chain(3), 2, 1, 0), q(0, 1));
  EXPECT_EQ(prob_sandwich(antichain(3), 0, 1, 2), q(1, 6));
}

TEST(AddRelation, Examples) {
  const Poset r = add_relation(two_plus_one(), 1, 2);
  EXPECT_TRUE(r.less(0, 2));
  EXPECT_TRUE(r.less(1, 2));
  EXPECT_TRUE(r.incomparable(0, 1));
  EXPECT_EQ(add_relation(two_plus_one(), 0, 2), two_plus_one());
  EXPECT_EQ(add_relation(antichain(2), 0, 1), chain(2));
  EXPECT_THROW(add_relation(chain(2), 1, 0), WouldCycleError);
}

TEST(AddRelation, CriticalPairAddsExactlyOnePair) {
  const Poset p = n_poset();
  for (const auto& [a, b] : incomparable_pairs(p)) {
    if (!is_critical_pair(p, a, b)) continue;
    const Poset r = add_relation(p, a, b);
    std::size_t added = 0;
    for (ElementId u = 0; u < p.size(); ++u)
      for (ElementId v = 0; v < p.size(); ++v) added += r.less(u, v) && !p.less(u, v);
    EXPECT_EQ(added, 1u);
  }
}

TEST(QDistribution, Examples) {
  const QDistribution d = q_distribution(three_plus_one(), 2, 0);
  EXPECT_EQ(d.chain, (std::vector<ElementId>{0, 1, 3}));
  EXPECT_EQ(d.q, (std::vector<Rational>{q(1, 4), q(1, 4), q(1, 4), q(1, 4)}));

  // b1 < b2 plus an isolated a
  const Poset p = Poset::from_relations(3, {{0, 1}});
  const QDistribution e = q_distribution(p, 2, 0);
  EXPECT_EQ(e.q, (std::vector<Rational>{q(1, 3), q(1, 3), q(1, 3)}));
  EXPECT_EQ(e.sum(), q(1, 1));
  EXPECT_TRUE(e.nonincreasing());
}

TEST(QDistribution, Errors) {
  EXPECT_THROW(q_distribution(antichain(2), 0, 1), EmptyChainError);
  // D(z) is not contained in D(y) on either side
  EXPECT_THROW(q_distribution(two_plus_one(), 2, 1), NotGoodPairError);
}

TEST(PrecedenceTable, MatchesProbBefore) {
  const Poset p = n_poset();
  const PrecedenceTable t(p);
  EXPECT_EQ(t.total(), BigInt(5));
  for (ElementId x = 0; x < 4; ++x)
    for (ElementId y = 0; y < 4; ++y)
      if (x != y) EXPECT_EQ(t.probability(x, y), prob_before(p, x, y));
}

TEST(TightnessWitness, TwoPlusOne) {
  const Poset p = two_plus_one();
  const Poset qp = add_relation(p, 1, 2);
  const Rational pq = prob_before(qp, 0, 1);
  EXPECT_EQ(pq, q(1, 2));
  EXPECT_EQ(prob_before(p, 0, 1), q(2, 3));
  EXPECT_EQ(prob_before(p, 0, 1), Rational(2 * pq / (1 + pq)));
}

// Random posets against the permutation-filter oracle.
class ExtensionProperties : public ::testing::TestWithParam<int> {};

TEST_P(ExtensionProperties, OracleAgreement) {
  std::mt19937_64 rng(77 + GetParam());
  for (int iter = 0; iter < 25; ++iter) {
    const std::size_t n = 1 + rng() % 7;
    const Poset p = random_poset(n, 0.1 * (1 + rng() % 6), rng);
    const auto brute = brute_extensions(p);
    const auto exts = enumerate_extensions(p);
    ASSERT_EQ(orders(exts), brute);
    ASSERT_EQ(count_extensions(p), BigInt(static_cast<unsigned long>(brute.size())));
    for (const auto& e : exts) ASSERT_TRUE(is_linear_extension(p, e));
    const PrecedenceTable t(p);
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = 0; y < n; ++y) {
        if (x == y) continue;
        const Rational pxy = prob_before(p, x, y);
        ASSERT_EQ(pxy, brute_prob(p, x, y));
        ASSERT_EQ(pxy + prob_before(p, y, x), q(1, 1));
        ASSERT_EQ(t.probability(x, y), pxy);
        if (is_critical_pair(p, x, y)) ASSERT_GE(pxy, q(1, 2));
      }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ExtensionProperties, ::testing::Range(0, 4));

TEST(ExtensionInvariants, DpMatchesEnumerationOnAllPosetsUpTo6) {
  for (std::size_t n = 1; n <= 6; ++n)
    for_each_poset({n, PosetFilter::all, Dedup::isomorphism}, [&](const Poset& p) {
      ASSERT_EQ(count_extensions(p), BigInt(static_cast<unsigned long>(enumerate_extensions(p).size())));
    });
}

TEST(ExtensionInvariants, DpBeyondEnumerationCap) {
  // two disjoint chains of 8: C(16, 8)
  std::vector<Relation> r;
  for (ElementId i = 0; i + 1 < 8; ++i) {
    r.push_back({i, i + 1});
    r.push_back({8 + i, 9 + i});
  }
  const Poset p = Poset::from_relations(16, r);
  EXPECT_EQ(count_extensions(p), BigInt(12870));
  EXPECT_EQ(prob_before(p, 0, 8), q(1, 2));
  EXPECT_EQ(prob_before(p, 7, 8), q(1, 12870));
}
