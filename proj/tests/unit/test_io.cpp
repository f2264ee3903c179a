#include <gtest/gtest.h>

#include "balpairs/harness.hpp"
#include "balpairs/io.hpp"
#include "support.hpp"

using namespace balpairs;
using namespace testing_support;

TEST(Parse, TwoPlusOne) {
  const Poset p = parse_poset("# chain of two plus a point\nelements: x y z\nx < z\n");
  EXPECT_EQ(p, two_plus_one());
}

TEST(Parse, AutoRegistersInFirstUseOrder) {
  const Poset p = parse_poset("b < a\nc < a\n");
  EXPECT_EQ(p.labels(), (std::vector<std::string>{"b", "a", "c"}));
  EXPECT_TRUE(p.less(0, 1));
  EXPECT_TRUE(p.less(2, 1));
}

TEST(Parse, NonCoverRelationsAreAccepted) {
  const Poset p = parse_poset("a < b\nb < c\na < c\n");
  EXPECT_EQ(p.cover_relations().size(), 2u);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_poset("a < b\nb < a\n"), CycleError);
  try {
    parse_poset("a < b\na <\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_poset("elements: a a\n"), ParseError);
  EXPECT_THROW(parse_poset("a > b\n"), ParseError);
}

TEST(Parse, Diamond) {
  const Poset p = parse_poset("a < b\na < c\nb < d\nc < d\n");
  EXPECT_EQ(p.cover_relations(), (std::vector<Relation>{{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
}

TEST(Dot, Deterministic) {
  const std::string a = to_dot(three_plus_one());
  EXPECT_EQ(a, to_dot(three_plus_one()));
  // t=n0 x=n1 y=n2 z=n3: path t-x-z, y isolated
  EXPECT_NE(a.find("n0 -> n1;"), std::string::npos);
  EXPECT_NE(a.find("n1 -> n3;"), std::string::npos);
  EXPECT_EQ(a.find("n2 ->"), std::string::npos);
  EXPECT_EQ(a.find("-> n2"), std::string::npos);
  EXPECT_NE(a.find("n2 [label=\"y\"]"), std::string::npos);

  const std::string c = to_dot(chain(2));
  std::size_t edges = 0;
  for (std::size_t i = c.find("->"); i != std::string::npos; i = c.find("->", i + 1)) ++edges;
  EXPECT_EQ(edges, 1u);

  const std::string d = to_dot(diamond());
  edges = 0;
  for (std::size_t i = d.find("->"); i != std::string::npos; i = d.find("->", i + 1)) ++edges;
  EXPECT_EQ(edges, 4u);
}

TEST(RoundTrip, AllPosetsUpTo5) {
  for (std::size_t n = 1; n <= 5; ++n)
    for_each_poset({n, PosetFilter::all, Dedup::labeled}, [&](const Poset& p) {
      const Poset r = parse_poset(serialize(p));
      ASSERT_EQ(r.size(), p.size());
      for (ElementId x = 0; x < n; ++x) ASSERT_EQ(r.up(x), p.up(x));
    });
}

TEST(RoundTrip, LabelledPosetIsIdentical) {
  const Poset p = n_poset();
  EXPECT_EQ(parse_poset(serialize(p)), p);
}
