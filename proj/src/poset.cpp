#include "balpairs/poset.hpp"

#include <algorithm>
#include <numeric>

namespace balpairs {

namespace {

// Cycle through the relation graph of `pairs`, used only for diagnostics.
std::vector<ElementId> find_cycle(std::size_t n, std::span<const Relation> pairs) {
  std::vector<std::vector<ElementId>> adj(n);
  for (auto [x, y] : pairs) adj[x].push_back(y);
  for (auto& row : adj) std::sort(row.begin(), row.end());
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> state(n, 0);
  std::vector<ElementId> stack;
  std::vector<ElementId> cycle;
  auto dfs = [&](auto&& self, ElementId v) -> bool {
    state[v] = 1;
    stack.push_back(v);
    for (ElementId w : adj[v]) {
      if (state[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle.assign(it, stack.end());
        cycle.push_back(w);
        return true;
      }
      if (state[w] == 0 && self(self, w)) return true;
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };
  for (ElementId v = 0; v < n; ++v)
    if (state[v] == 0 && dfs(dfs, v)) return cycle;
  return cycle;
}

}  // namespace

Poset Poset::from_relations(std::size_t n, std::span<const Relation> pairs,
                            std::vector<std::string> labels) {
  std::vector<Bitset> up(n, Bitset(n));
  for (auto [x, y] : pairs) {
    if (x >= n || y >= n)
      throw BadIdError("relation (" + std::to_string(x) + ", " +
                       std::to_string(y) + ") refers to an id >= " +
                       std::to_string(n));
    if (x == y) {
      throw CycleError("relation " + std::to_string(x) + " < " +
                           std::to_string(x) + " is reflexive",
                       {x, x});
    }
    up[x].set(y);
  }
  // Warshall over bit rows.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (up[i].test(k)) up[i] |= up[k];
  for (std::size_t i = 0; i < n; ++i) {
    if (up[i].test(i)) {
      auto cycle = find_cycle(n, pairs);
      std::string msg = "relations contain a cycle:";
      for (auto v : cycle) {
        msg += ' ';
        msg += (v < labels.size() ? labels[v] : std::to_string(v));
      }
      throw CycleError(msg, std::move(cycle));
    }
  }
  return from_closure(std::move(up), std::move(labels));
}

Poset Poset::from_closure(std::vector<Bitset> up_rows,
                          std::vector<std::string> labels) {
  Poset p;
  const std::size_t n = up_rows.size();
  if (!labels.empty() && labels.size() != n)
    throw BadIdError("label count " + std::to_string(labels.size()) +
                     " does not match element count " + std::to_string(n));
  p.up_ = std::move(up_rows);
  p.down_.assign(n, Bitset(n));
  for (std::size_t x = 0; x < n; ++x)
    for (auto y = p.up_[x].find_first(); y != Bitset::npos;
         y = p.up_[x].find_next(y))
      p.down_[y].set(x);
  p.labels_ = std::move(labels);
  p.derive_covers();
  return p;
}

void Poset::derive_covers() {
  const std::size_t n = size();
  upper_covers_.assign(n, {});
  lower_covers_.assign(n, {});
  for (std::size_t x = 0; x < n; ++x) {
    for (auto y = up_[x].find_first(); y != Bitset::npos;
         y = up_[x].find_next(y)) {
      if (!up_[x].intersects(down_[y])) {
        upper_covers_[x].push_back(static_cast<ElementId>(y));
        lower_covers_[y].push_back(static_cast<ElementId>(x));
      }
    }
  }
}

Bitset Poset::comparability(ElementId x) const {
  Bitset c = up_[x] | down_[x];
  c.set(x);
  return c;
}

bool Poset::covers(ElementId lower, ElementId upper) const {
  const auto& row = upper_covers_[lower];
  return std::binary_search(row.begin(), row.end(), upper);
}

std::vector<Relation> Poset::cover_relations() const {
  std::vector<Relation> out;
  for (ElementId x = 0; x < size(); ++x)
    for (ElementId y : upper_covers_[x]) out.emplace_back(x, y);
  return out;
}

std::string Poset::label(ElementId x) const {
  if (x < labels_.size()) return labels_[x];
  return std::to_string(x);
}

void Poset::check_id(ElementId x) const {
  if (x >= size())
    throw BadIdError("element id " + std::to_string(x) + " out of range [0, " +
                     std::to_string(size()) + ")");
}

std::vector<ElementId> to_ids(const Bitset& set) {
  std::vector<ElementId> out;
  out.reserve(set.count());
  for (auto i = set.find_first(); i != Bitset::npos; i = set.find_next(i))
    out.push_back(static_cast<ElementId>(i));
  return out;
}

Bitset to_bitset(std::size_t n, std::span<const ElementId> ids) {
  Bitset b(n);
  for (auto id : ids) {
    if (id >= n) throw BadIdError("element id " + std::to_string(id) + " out of range");
    b.set(id);
  }
  return b;
}

Poset dual(const Poset& p) {
  std::vector<Bitset> rows(p.size());
  for (ElementId x = 0; x < p.size(); ++x) rows[x] = p.down(x);
  return Poset::from_closure(std::move(rows), p.labels());
}

std::vector<ElementId> up_set(const Poset& p, ElementId x) {
  p.check_id(x);
  return to_ids(p.up(x));
}

std::vector<ElementId> down_set(const Poset& p, ElementId x) {
  p.check_id(x);
  return to_ids(p.down(x));
}

std::vector<Relation> incomparable_pairs(const Poset& p) {
  std::vector<Relation> out;
  for (ElementId x = 0; x < p.size(); ++x)
    for (ElementId y = 0; y < p.size(); ++y)
      if (x != y && p.incomparable(x, y)) out.emplace_back(x, y);
  return out;
}

bool is_critical_pair(const Poset& p, ElementId x, ElementId y) {
  p.check_id(x);
  p.check_id(y);
  if (x == y || p.comparable(x, y)) return false;
  return p.up(y).is_subset_of(p.up(x)) && p.down(x).is_subset_of(p.down(y));
}

bool is_autonomous(const Poset& p, const Bitset& members) {
  if (members.none()) throw PreconditionFailed("autonomous set must be nonempty");
  // Outsiders below (above) some member must be below (above) every member.
  Bitset below_some(p.size()), below_all = p.full_set();
  Bitset above_some(p.size()), above_all = p.full_set();
  for (auto a = members.find_first(); a != Bitset::npos; a = members.find_next(a)) {
    below_some |= p.down(static_cast<ElementId>(a));
    below_all &= p.down(static_cast<ElementId>(a));
    above_some |= p.up(static_cast<ElementId>(a));
    above_all &= p.up(static_cast<ElementId>(a));
  }
  const Bitset outside = ~members;
  return (below_some & outside).is_subset_of(below_all) &&
         (above_some & outside).is_subset_of(above_all);
}

bool is_autonomous(const Poset& p, std::span<const ElementId> members) {
  return is_autonomous(p, to_bitset(p.size(), members));
}

Poset restrict(const Poset& p, std::span<const ElementId> subset) {
  const std::size_t m = subset.size();
  for (auto id : subset) p.check_id(id);
  std::vector<Bitset> rows(m, Bitset(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (p.less(subset[i], subset[j])) rows[i].set(j);
  std::vector<std::string> labels;
  if (p.has_labels())
    for (auto id : subset) labels.push_back(p.label(id));
  return Poset::from_closure(std::move(rows), std::move(labels));
}

Restriction restrict_without(const Poset& p, std::span<const ElementId> removed) {
  Bitset drop = to_bitset(p.size(), removed);
  Restriction r;
  for (ElementId x = 0; x < p.size(); ++x)
    if (!drop.test(x)) r.original.push_back(x);
  r.poset = restrict(p, r.original);
  return r;
}

std::vector<std::vector<ElementId>> cover_graph(const Poset& p) {
  std::vector<std::vector<ElementId>> adj(p.size());
  for (ElementId x = 0; x < p.size(); ++x) {
    for (ElementId y : p.upper_covers(x)) {
      adj[x].push_back(y);
      adj[y].push_back(x);
    }
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

bool is_chain_subset(const Poset& p, const Bitset& subset) {
  for (auto x = subset.find_first(); x != Bitset::npos; x = subset.find_next(x)) {
    Bitset comp = p.comparability(static_cast<ElementId>(x));
    if (!subset.is_subset_of(comp)) return false;
  }
  return true;
}

bool is_chain_subset(const Poset& p, std::span<const ElementId> subset) {
  return is_chain_subset(p, to_bitset(p.size(), subset));
}

bool is_chain(const Poset& p) { return is_chain_subset(p, p.full_set()); }

std::vector<ElementId> minimal_elements(const Poset& p) {
  std::vector<ElementId> out;
  for (ElementId x = 0; x < p.size(); ++x)
    if (p.is_minimal(x)) out.push_back(x);
  return out;
}

std::vector<ElementId> maximal_elements(const Poset& p) {
  std::vector<ElementId> out;
  for (ElementId x = 0; x < p.size(); ++x)
    if (p.is_maximal(x)) out.push_back(x);
  return out;
}

std::vector<ElementId> minimal_of(const Poset& p, const Bitset& subset) {
  std::vector<ElementId> out;
  for (auto x = subset.find_first(); x != Bitset::npos; x = subset.find_next(x))
    if (!p.down(static_cast<ElementId>(x)).intersects(subset))
      out.push_back(static_cast<ElementId>(x));
  return out;
}

std::vector<ElementId> maximal_of(const Poset& p, const Bitset& subset) {
  std::vector<ElementId> out;
  for (auto x = subset.find_first(); x != Bitset::npos; x = subset.find_next(x))
    if (!p.up(static_cast<ElementId>(x)).intersects(subset))
      out.push_back(static_cast<ElementId>(x));
  return out;
}

std::vector<std::vector<ElementId>> components(const Poset& p) {
  const auto adj = cover_graph(p);
  std::vector<int> comp(p.size(), -1);
  std::vector<std::vector<ElementId>> out;
  for (ElementId s = 0; s < p.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int c = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<ElementId> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      ElementId v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (ElementId w : adj[v])
        if (comp[w] < 0) {
          comp[w] = c;
          stack.push_back(w);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

std::vector<std::size_t> heights(const Poset& p) {
  // Process by size of down-set: every element below x has a strictly
  // smaller down-set.
  std::vector<ElementId> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
    return p.down(a).count() < p.down(b).count();
  });
  std::vector<std::size_t> h(p.size(), 0);
  for (ElementId x : order)
    for (ElementId l : p.lower_covers(x)) h[x] = std::max(h[x], h[l] + 1);
  return h;
}

}  // namespace balpairs
