#pragma once

// Fixtures and brute-force oracles shared by the unit tests. The oracles use
// nothing from the library beyond Poset::less, so they can check the engines.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "balpairs/poset.hpp"
#include "balpairs/rational.hpp"

namespace testing_support {

using balpairs::ElementId;
using balpairs::Poset;
using balpairs::Relation;

// x=0 y=1 z=2, x<z.
inline Poset two_plus_one() { return Poset::from_relations(3, {{0, 2}}, {"x", "y", "z"}); }
// x=0 y=1 z=2 t=3, x<z, y<t.
inline Poset two_plus_two() { return Poset::from_relations(4, {{0, 2}, {1, 3}}, {"x", "y", "z", "t"}); }
// t=0 x=1 y=2 z=3, t<x<z, y isolated.
inline Poset three_plus_one() { return Poset::from_relations(4, {{0, 1}, {1, 3}}, {"t", "x", "y", "z"}); }
// x=0 y=1 z=2 t=3, x<z, y<z, y<t.
inline Poset n_poset() {
  return Poset::from_relations(4, {{0, 2}, {1, 2}, {1, 3}}, {"x", "y", "z", "t"});
}
// d1=0 d2=1 d3=2 d4=3.
inline Poset diamond() {
  return Poset::from_relations(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {"d1", "d2", "d3", "d4"});
}
inline Poset chain(std::size_t n) {
  std::vector<Relation> r;
  for (ElementId i = 0; i + 1 < n; ++i) r.push_back({i, i + 1});
  return Poset::from_relations(n, r);
}
inline Poset antichain(std::size_t n) { return Poset::from_relations(n, std::vector<Relation>{}); }

// Random poset: each pair i<j (ids) is related with probability `density`,
// then shuffled so ids are not a linear extension.
inline Poset random_poset(std::size_t n, double density, std::mt19937_64& rng) {
  std::vector<ElementId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(density);
  std::vector<Relation> r;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) r.push_back({perm[i], perm[j]});
  return Poset::from_relations(n, r);
}

// All permutations consistent with the order, in lexicographic order.
inline std::vector<std::vector<ElementId>> brute_extensions(const Poset& p) {
  std::vector<ElementId> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<ElementId>> out;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < perm.size() && ok; ++i)
      for (std::size_t j = i + 1; j < perm.size() && ok; ++j)
        if (p.less(perm[j], perm[i])) ok = false;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline balpairs::Rational brute_prob(const Poset& p, ElementId x, ElementId y) {
  const auto exts = brute_extensions(p);
  long hits = 0;
  for (const auto& e : exts) {
    const auto px = std::find(e.begin(), e.end(), x) - e.begin();
    const auto py = std::find(e.begin(), e.end(), y) - e.begin();
    if (px < py) ++hits;
  }
  return balpairs::make_rational(hits, static_cast<long>(exts.size()));
}

// Floyd-Warshall closure of a relation list.
inline std::vector<std::vector<bool>> brute_closure(std::size_t n, const std::vector<Relation>& r) {
  std::vector<std::vector<bool>> c(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : r) c[a][b] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (c[i][k] && c[k][j]) c[i][j] = true;
  return c;
}

}  // namespace testing_support
