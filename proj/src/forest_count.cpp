#include "balpairs/forest_count.hpp"

#include <algorithm>

namespace balpairs {

BigInt RankVector::total() const {
  BigInt s(0);
  for (const auto& c : counts) s += c;
  return s;
}

std::vector<ElementId> cover_cycle(const Poset& p) {
  const auto adj = cover_graph(p);
  const std::size_t n = p.size();
  std::vector<int> parent(n, -2);
  for (ElementId s = 0; s < n; ++s) {
    if (parent[s] != -2) continue;
    parent[s] = -1;
    std::vector<ElementId> stack{s};
    while (!stack.empty()) {
      ElementId v = stack.back();
      stack.pop_back();
      for (ElementId w : adj[v]) {
        if (static_cast<int>(w) == parent[v]) continue;
        if (parent[w] != -2) {
          // Close the cycle through the lowest common ancestor of v and w.
          std::vector<ElementId> pv{v}, pw{w};
          while (parent[pv.back()] >= 0) pv.push_back(static_cast<ElementId>(parent[pv.back()]));
          while (parent[pw.back()] >= 0) pw.push_back(static_cast<ElementId>(parent[pw.back()]));
          while (pv.size() > 1 && pw.size() > 1 &&
                 pv[pv.size() - 2] == pw[pw.size() - 2]) {
            pv.pop_back();
            pw.pop_back();
          }
          std::vector<ElementId> cycle(pv.begin(), pv.end());
          for (std::size_t i = pw.size() - 1; i-- > 0;) cycle.push_back(pw[i]);
          cycle.push_back(v);
          return cycle;
        }
        parent[w] = static_cast<int>(v);
        stack.push_back(w);
      }
    }
  }
  return {};
}

namespace {

class TreeCounter {
 public:
  explicit TreeCounter(const Poset& p) : p_(p), adj_(cover_graph(p)) {
    const std::size_t n = p.size();
    // Pascal triangle up to n.
    binom_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      binom_[i].resize(i + 1);
      binom_[i][0] = binom_[i][i] = 1;
      for (std::size_t j = 1; j < i; ++j) {
        binom_[i][j] = binom_[i - 1][j - 1] + binom_[i - 1][j];
        ++ops_;
      }
    }
  }

  const BigInt& binom(std::size_t n, std::size_t k) const { return binom_[n][k]; }

  RankVector rank_vector(ElementId root) {
    // Iterative post-order over the cover tree.
    std::vector<ElementId> order;
    std::vector<int> parent(p_.size(), -1);
    std::vector<ElementId> stack{root};
    std::vector<bool> seen(p_.size(), false);
    seen[root] = true;
    while (!stack.empty()) {
      ElementId v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (ElementId w : adj_[v])
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = static_cast<int>(v);
          stack.push_back(w);
        }
    }
    std::vector<RankVector> vec(p_.size());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const ElementId v = *it;
      RankVector acc{v, {BigInt(1)}};
      for (ElementId c : adj_[v]) {
        if (parent[c] != static_cast<int>(v)) continue;
        acc = merge(acc, vec[c], p_.less(v, c));
        vec[c].counts.clear();
        vec[c].counts.shrink_to_fit();
      }
      vec[v] = std::move(acc);
    }
    return std::move(vec[root]);
  }

  std::uint64_t ops() const { return ops_; }

 private:
  // `a` holds the rank vector of v over its processed part, `b` that of the
  // child c over c's subtree. child_above: v < c, else c < v.
  RankVector merge(const RankVector& a, const RankVector& b, bool child_above) {
    const std::size_t sa = a.counts.size(), sb = b.counts.size();
    // allowed[l] = extensions of c's subtree compatible with exactly l of
    // its elements preceding v.
    std::vector<BigInt> allowed(sb + 1);
    if (child_above) {
      // c must sit at a position > l.
      BigInt suffix(0);
      for (std::size_t l = sb + 1; l-- > 0;) {
        allowed[l] = suffix;
        if (l > 0) {
          suffix += b.counts[l - 1];
          ++ops_;
        }
      }
    } else {
      BigInt prefix(0);
      for (std::size_t l = 0; l <= sb; ++l) {
        if (l > 0) {
          prefix += b.counts[l - 1];
          ++ops_;
        }
        allowed[l] = prefix;
      }
    }
    RankVector out{a.element, std::vector<BigInt>(sa + sb)};
    BigInt term;
    for (std::size_t i = 1; i <= sa; ++i) {
      if (a.counts[i - 1] == 0) continue;
      for (std::size_t l = 0; l <= sb; ++l) {
        if (allowed[l] == 0) continue;
        const std::size_t k = i + l;  // final 1-based position of v
        // Interleave the i-1 and l elements before v, then the rest after.
        term = a.counts[i - 1] * allowed[l];
        term *= binom(k - 1, l);
        term *= binom(sa + sb - k, sb - l);
        out.counts[k - 1] += term;
        ops_ += 4;
      }
    }
    return out;
  }

  const Poset& p_;
  std::vector<std::vector<ElementId>> adj_;
  std::vector<std::vector<BigInt>> binom_;
  std::uint64_t ops_ = 0;
};

}  // namespace

ForestCount count_extensions_forest_instrumented(const Poset& p) {
  if (auto cycle = cover_cycle(p); !cycle.empty()) {
    std::string msg = "cover graph has a cycle:";
    for (auto v : cycle) msg += " " + p.label(v);
    throw NotForestError(msg, std::move(cycle));
  }
  TreeCounter counter(p);
  ForestCount out;
  out.count = 1;
  std::size_t placed = 0;
  for (const auto& comp : components(p)) {
    RankVector rv = counter.rank_vector(comp.front());
    const BigInt c = rv.total();
    // Interleave this component's extensions with those already placed.
    placed += comp.size();
    out.count *= c;
    out.count *= counter.binom(placed, comp.size());
    out.arithmetic_ops += 2;
  }
  out.arithmetic_ops += counter.ops();
  return out;
}

BigInt count_extensions_forest(const Poset& p) {
  return count_extensions_forest_instrumented(p).count;
}

RankVector rooted_rank_vector(const Poset& p, ElementId root) {
  p.check_id(root);
  if (auto cycle = cover_cycle(p); !cycle.empty())
    throw NotForestError("cover graph has a cycle", std::move(cycle));
  TreeCounter counter(p);
  return counter.rank_vector(root);
}

BigInt count_rooted_forest_hook(const Poset& p) {
  BigInt numerator(1), denominator(1);
  for (ElementId v = 0; v < p.size(); ++v) {
    if (p.lower_covers(v).size() > 1)
      throw NotUpwardForestError(p.label(v) + " has more than one lower cover");
    numerator *= static_cast<unsigned long>(v + 1);
    denominator *= static_cast<unsigned long>(p.up(v).count() + 1);
  }
  return numerator / denominator;
}

}  // namespace balpairs
