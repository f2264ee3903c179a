#pragma once

#include <cstdint>
#include <vector>

#include "balpairs/poset.hpp"
#include "balpairs/rational.hpp"

namespace balpairs {

// Entry k is the number of linear extensions of a processed sub-poset that
// put `element` at position k + 1.
struct RankVector {
  ElementId element = 0;
  std::vector<BigInt> counts;

  BigInt total() const;
};

struct ForestCount {
  BigInt count;
  // Big-integer multiplications and additions performed, including the
  // binomial table.
  std::uint64_t arithmetic_ops = 0;
};

// Linear extensions of a poset whose cover graph is a forest, by merging
// rank vectors of rooted cover subtrees with binomial interleavings.
// Throws NotForestError with a cycle of the cover graph otherwise.
BigInt count_extensions_forest(const Poset& p);
ForestCount count_extensions_forest_instrumented(const Poset& p);

// Rank vector of the cover tree containing `root`, rooted there.
RankVector rooted_rank_vector(const Poset& p, ElementId root);

// n! / prod_v |{w : w >= v}| for posets where every element has at most one
// lower cover. Throws NotUpwardForestError otherwise.
BigInt count_rooted_forest_hook(const Poset& p);

// Returns a cycle in the cover graph (first vertex repeated), or empty.
std::vector<ElementId> cover_cycle(const Poset& p);

}  // namespace balpairs
