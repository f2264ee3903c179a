#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "balpairs/errors.hpp"

namespace balpairs {

using Bitset = boost::dynamic_bitset<std::uint64_t>;
using Relation = std::pair<ElementId, ElementId>;

// Finite poset on the dense ids 0..n-1. The strict order is stored as bit
// rows (up_[x] = {y : x < y}, down_[x] = {y : y < x}); covers are the
// transitive reduction. Values are immutable once built.
class Poset {
 public:
  Poset() = default;

  // Closes `pairs` (read as x < y) transitively and reduces to covers.
  // Throws BadIdError for ids >= n and CycleError when the closure is cyclic.
  static Poset from_relations(std::size_t n, std::span<const Relation> pairs,
                              std::vector<std::string> labels = {});
  static Poset from_relations(std::size_t n,
                              std::initializer_list<Relation> pairs,
                              std::vector<std::string> labels = {}) {
    return from_relations(
        n, std::span<const Relation>(pairs.begin(), pairs.size()),
        std::move(labels));
  }

  // `up_rows[x]` must already be a transitively closed, irreflexive,
  // antisymmetric relation; only the covers are derived.
  static Poset from_closure(std::vector<Bitset> up_rows,
                            std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return up_.size(); }

  bool less(ElementId x, ElementId y) const { return up_[x].test(y); }
  bool leq(ElementId x, ElementId y) const { return x == y || less(x, y); }
  bool comparable(ElementId x, ElementId y) const {
    return x == y || less(x, y) || less(y, x);
  }
  bool incomparable(ElementId x, ElementId y) const {
    return !comparable(x, y);
  }

  // Strict up-set U(x) and down-set D(x) as bit rows.
  const Bitset& up(ElementId x) const { return up_[x]; }
  const Bitset& down(ElementId x) const { return down_[x]; }
  // up(x) | down(x) | {x}
  Bitset comparability(ElementId x) const;

  const std::vector<ElementId>& upper_covers(ElementId x) const {
    return upper_covers_[x];
  }
  const std::vector<ElementId>& lower_covers(ElementId x) const {
    return lower_covers_[x];
  }
  bool covers(ElementId lower, ElementId upper) const;
  // All cover pairs (lower, upper), lexicographically sorted.
  std::vector<Relation> cover_relations() const;

  bool is_minimal(ElementId x) const { return down_[x].none(); }
  bool is_maximal(ElementId x) const { return up_[x].none(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  // Display name; falls back to the decimal id.
  std::string label(ElementId x) const;
  bool has_labels() const noexcept { return !labels_.empty(); }

  Bitset empty_set() const { return Bitset(size()); }
  Bitset full_set() const { return ~Bitset(size()); }

  void check_id(ElementId x) const;

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.up_ == b.up_ && a.labels_ == b.labels_;
  }

 private:
  void derive_covers();

  std::vector<Bitset> up_;
  std::vector<Bitset> down_;
  std::vector<std::vector<ElementId>> upper_covers_;
  std::vector<std::vector<ElementId>> lower_covers_;
  std::vector<std::string> labels_;
};

std::vector<ElementId> to_ids(const Bitset& set);
Bitset to_bitset(std::size_t n, std::span<const ElementId> ids);

Poset dual(const Poset& p);

std::vector<ElementId> up_set(const Poset& p, ElementId x);
std::vector<ElementId> down_set(const Poset& p, ElementId x);

// Ordered pairs (x, y), x != y, with x and y incomparable; lexicographic.
std::vector<Relation> incomparable_pairs(const Poset& p);

// x and y incomparable, U(y) within U(x) and D(x) within D(y).
bool is_critical_pair(const Poset& p, ElementId x, ElementId y);

// Every element outside `members` relates identically to all members.
bool is_autonomous(const Poset& p, std::span<const ElementId> members);
bool is_autonomous(const Poset& p, const Bitset& members);

// Induced suborder on `subset`. Element i of the result is subset[i]; labels
// carry over.
Poset restrict(const Poset& p, std::span<const ElementId> subset);

// P minus `removed`, with the map back to the parent's ids.
struct Restriction {
  Poset poset;
  std::vector<ElementId> original;  // original[i] = id in the parent poset
};
Restriction restrict_without(const Poset& p, std::span<const ElementId> removed);

// Undirected cover graph; neighbours sorted by id.
std::vector<std::vector<ElementId>> cover_graph(const Poset& p);

bool is_chain_subset(const Poset& p, std::span<const ElementId> subset);
bool is_chain_subset(const Poset& p, const Bitset& subset);
bool is_chain(const Poset& p);

std::vector<ElementId> minimal_elements(const Poset& p);
std::vector<ElementId> maximal_elements(const Poset& p);
// Minimal / maximal members of `subset` with respect to p.
std::vector<ElementId> minimal_of(const Poset& p, const Bitset& subset);
std::vector<ElementId> maximal_of(const Poset& p, const Bitset& subset);

// Connected components of the cover graph, each sorted, ordered by least id.
std::vector<std::vector<ElementId>> components(const Poset& p);

// Length of the longest chain ending at each element (minimal elements: 0).
std::vector<std::size_t> heights(const Poset& p);

}  // namespace balpairs
