#include <gtest/gtest.h>

#include <set>

#include "balpairs/harness.hpp"
#include "support.hpp"

using namespace balpairs;
using namespace testing_support;

TEST(Generation, LabeledCounts) {
  const std::vector<std::size_t> expected{1, 3, 19, 219, 4231, 130023};
  for (std::size_t n = 1; n <= 6; ++n)
    EXPECT_EQ(generate_posets({n, PosetFilter::all, Dedup::labeled}).size(), expected[n - 1]) << n;
}

TEST(Generation, MatchesRelationMatrixFilter) {
  for (std::size_t n = 1; n <= 4; ++n)
    EXPECT_EQ(count_posets_bruteforce(n), generate_posets({n, PosetFilter::all, Dedup::labeled}).size());
  EXPECT_EQ(count_posets_bruteforce(5), 4231u);
}

TEST(Generation, IsomorphismClassCounts) {
  const std::vector<std::size_t> expected{1, 2, 5, 16, 63, 318, 2045};
  for (std::size_t n = 1; n <= 7; ++n)
    EXPECT_EQ(generate_posets({n, PosetFilter::all, Dedup::isomorphism}).size(), expected[n - 1]) << n;
}

TEST(Generation, EachPosetOnce) {
  const auto all = generate_posets({4, PosetFilter::all, Dedup::labeled});
  std::set<std::vector<std::uint16_t>> seen;
  for (const auto& s : all) seen.insert({s.up.begin(), s.up.begin() + s.n});
  EXPECT_EQ(seen.size(), all.size());
}

TEST(Generation, Filters) {
  for (const auto& s : generate_posets({5, PosetFilter::non_chain, Dedup::labeled}))
    ASSERT_FALSE(is_chain(s.to_poset()));
  // chains on 4 labeled points: 4!
  EXPECT_EQ(generate_posets({4, PosetFilter::all, Dedup::labeled}).size() -
                generate_posets({4, PosetFilter::non_chain, Dedup::labeled}).size(),
            24u);
  EXPECT_THROW(generate_posets({9, PosetFilter::all, Dedup::isomorphism}), SizeError);
}

TEST(Canonical, InvariantUnderRelabeling) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const Poset p = random_poset(6, 0.4, rng);
    std::vector<ElementId> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Poset r = restrict(p, perm);
    EXPECT_EQ(canonical_code(to_small(p)), canonical_code(to_small(r)));
  }
}

TEST(BalanceMargin, Examples) {
  EXPECT_EQ(balance_margin(two_plus_one()), make_rational(1, 3));
  EXPECT_EQ(balance_margin(antichain(2)), make_rational(1, 2));
  EXPECT_EQ(balance_margin(three_plus_one()), make_rational(1, 2));
  EXPECT_THROW(balance_margin(chain(3)), IsChainError);
}

TEST(RandomTree, IsForestWithRequestedSize) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 2u, 10u, 60u}) {
    const Poset p = random_tree_poset(n, rng);
    EXPECT_EQ(p.size(), n);
    EXPECT_EQ(components(p).size(), 1u);
    EXPECT_EQ(p.cover_relations().size(), n - 1);
  }
}

TEST(Campaign, UnknownNameIsUsageError) {
  EXPECT_THROW(run_campaign("nope", 3), UsageError);
}

TEST(Campaign, AllCampaignsPassAtSmallSize) {
  CampaignOptions o;
  o.threads = 1;
  for (const auto& name : campaign_names()) {
    const CampaignReport r = run_campaign(name, 4, o);
    EXPECT_TRUE(r.passed()) << r.summary();
    EXPECT_GT(r.instances, 0u) << name;
    EXPECT_EQ(r.to_json_line().find('\n'), std::string::npos);
  }
}

TEST(Campaign, DeterministicAcrossThreadCounts) {
  CampaignOptions one, two;
  one.threads = 1;
  two.threads = 2;
  EXPECT_EQ(run_campaign("theorem1_good_balanced", 5, one).to_json_line(),
            run_campaign("theorem1_good_balanced", 5, two).to_json_line());
}
