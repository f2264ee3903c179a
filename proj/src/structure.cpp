#include "balpairs/structure.hpp"

#include <algorithm>
#include <numeric>

#include "balpairs/forest_count.hpp"

namespace balpairs {

FenceWitness FenceWitness::reversed() const {
  FenceWitness r;
  r.elements.assign(elements.rbegin(), elements.rend());
  r.starts_low = elements.size() % 2 == 1 ? starts_low : !starts_low;
  return r;
}

bool is_fence(const Poset& p, const FenceWitness& f) {
  const auto& e = f.elements;
  if (e.empty()) return false;
  for (auto v : e)
    if (v >= p.size()) return false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (e[i] == e[j]) return false;
      const bool adjacent = j == i + 1;
      if (p.comparable(e[i], e[j]) != adjacent) return false;
    }
  }
  for (std::size_t i = 0; i + 1 < e.size(); ++i)
    if (p.less(e[i], e[i + 1]) != f.is_low(i)) return false;
  return true;
}

namespace {

struct FenceSearch {
  const Poset& p;
  const Bitset& avoid;
  std::vector<ElementId> seq;
  std::vector<ElementId> best;
  // Closed neighbourhoods of every element but the last.
  std::vector<Bitset> blocked_stack;

  void run(ElementId x) {
    seq = {x};
    best = seq;
    blocked_stack = {Bitset(p.size())};
    extend();
  }

  void extend() {
    const ElementId last = seq.back();
    const Bitset& blocked = blocked_stack.back();
    Bitset cand = p.comparability(last) - blocked - avoid;
    cand.reset(last);
    if (seq.size() >= 2) {
      // Direction alternates.
      cand &= p.less(seq[seq.size() - 2], last) ? p.down(last) : p.up(last);
    }
    // Every later element lies outside `blocked` and `avoid`.
    Bitset used = blocked | avoid;
    used.set(last);
    if (seq.size() + (p.size() - used.count()) <= best.size()) return;
    Bitset next_blocked = blocked | p.comparability(last);
    for (auto c = cand.find_first(); c != Bitset::npos; c = cand.find_next(c)) {
      seq.push_back(static_cast<ElementId>(c));
      if (seq.size() > best.size()) best = seq;
      blocked_stack.push_back(next_blocked);
      extend();
      blocked_stack.pop_back();
      seq.pop_back();
    }
  }
};

FenceWitness make_fence(const Poset& p, std::vector<ElementId> seq) {
  FenceWitness f;
  f.starts_low = seq.size() < 2 || p.less(seq[0], seq[1]);
  f.elements = std::move(seq);
  return f;
}

}  // namespace

FenceWitness find_max_fence_from(const Poset& p, ElementId x, const Bitset& avoid) {
  p.check_id(x);
  FenceSearch s{p, avoid, {}, {}, {}};
  s.run(x);
  return make_fence(p, s.best);
}

FenceWitness find_max_fence_from(const Poset& p, ElementId x) {
  return find_max_fence_from(p, x, p.empty_set());
}

FenceWitness find_max_fence(const Poset& p) {
  if (p.size() == 0) throw PreconditionFailed("empty poset has no fence");
  FenceWitness best;
  for (ElementId x = 0; x < p.size(); ++x) {
    FenceWitness f = find_max_fence_from(p, x);
    if (best.elements.empty() || f.length() > best.length()) best = std::move(f);
  }
  return best;
}

std::vector<FenceWitness> enumerate_fences_from(const Poset& p, ElementId x) {
  p.check_id(x);
  std::vector<FenceWitness> out;
  std::vector<ElementId> seq{x};
  auto rec = [&](auto&& self) -> void {
    out.push_back(make_fence(p, seq));
    for (ElementId c = 0; c < p.size(); ++c) {
      if (std::find(seq.begin(), seq.end(), c) != seq.end()) continue;
      seq.push_back(c);
      FenceWitness f = make_fence(p, seq);
      if (is_fence(p, f)) self(self);
      seq.pop_back();
    }
  };
  rec(rec);
  return out;
}

bool is_crown(const Poset& p, const CrownWitness& c) {
  const auto& e = c.elements;
  const std::size_t m = e.size();
  if (m < 4 || m % 2 != 0) return false;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (e[i] == e[j]) return false;
      const bool adjacent = j == i + 1 || (i == 0 && j == m - 1);
      if (p.comparable(e[i], e[j]) != adjacent) return false;
      // Even 0-based positions are the maximal ones.
      if (adjacent && p.less(e[i], e[j]) != (i % 2 == 1)) return false;
    }
  }
  return true;
}

std::optional<CrownWitness> find_crown(const Poset& p, std::size_t min_half_length) {
  min_half_length = std::max<std::size_t>(min_half_length, 2);
  std::vector<ElementId> seq;
  std::optional<CrownWitness> found;
  auto rec = [&](auto&& self, const Bitset& blocked) -> void {
    const ElementId top = seq.front();
    const ElementId last = seq.back();
    // Odd 0-based positions are crown-minimal: they go below `last`.
    const bool going_down = seq.size() % 2 == 1;
    Bitset cand = (going_down ? p.down(last) : p.up(last)) - blocked;
    for (auto c = cand.find_first(); c != Bitset::npos && !found;
         c = cand.find_next(c)) {
      const auto v = static_cast<ElementId>(c);
      if (seq.size() >= 2 && p.comparable(v, top)) {
        if (going_down && p.less(v, top) && seq.size() + 1 >= 2 * min_half_length) {
          seq.push_back(v);
          found = CrownWitness{seq};
          seq.pop_back();
        }
        continue;
      }
      seq.push_back(v);
      Bitset next = blocked;
      if (seq.size() >= 3) next |= p.comparability(seq[seq.size() - 2]);
      next.set(v);
      self(self, next);
      seq.pop_back();
    }
  };
  for (ElementId top = 0; top < p.size() && !found; ++top) {
    seq = {top};
    Bitset blocked(p.size());
    blocked.set(top);
    rec(rec, blocked);
  }
  return found;
}

std::optional<DiamondWitness> find_diamond(const Poset& p) {
  for (ElementId b = 0; b < p.size(); ++b) {
    const auto above = to_ids(p.up(b));
    for (std::size_t i = 0; i < above.size(); ++i) {
      for (std::size_t j = i + 1; j < above.size(); ++j) {
        const ElementId l = above[i], r = above[j];
        if (p.comparable(l, r)) continue;
        Bitset tops = p.up(l) & p.up(r);
        if (tops.any())
          return DiamondWitness{b, l, r, static_cast<ElementId>(tops.find_first())};
      }
    }
  }
  return std::nullopt;
}

bool is_diamond_free(const Poset& p) { return !find_diamond(p).has_value(); }

bool is_crown_free(const Poset& p) {
  if (find_crown(p, 3)) return false;
  const std::size_t n = p.size();
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = a + 1; b < n; ++b) {
      if (p.comparable(a, b)) continue;
      const Bitset common_up = p.up(a) & p.up(b);
      const auto tops = to_ids(common_up);
      for (std::size_t i = 0; i < tops.size(); ++i) {
        for (std::size_t j = i + 1; j < tops.size(); ++j) {
          const ElementId c = tops[i], d = tops[j];
          if (p.comparable(c, d)) continue;
          if (!(common_up & p.down(c) & p.down(d)).any()) return false;
        }
      }
    }
  }
  return true;
}

bool is_cover_forest(const Poset& p) {
  // A graph is a forest iff |E| = |V| - #components.
  std::vector<ElementId> parent(p.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](ElementId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (ElementId x = 0; x < p.size(); ++x) {
    for (ElementId y : p.upper_covers(x)) {
      ElementId rx = find(x), ry = find(y);
      if (rx == ry) return false;
      parent[rx] = ry;
    }
  }
  return true;
}

bool crown_diamond_free(const Poset& p) {
  if (is_cover_forest(p)) return true;
  return is_diamond_free(p) && is_crown_free(p);
}

FenceWitness normalize_fence(const Poset& p, const FenceWitness& f) {
  if (!is_fence(p, f)) throw PreconditionFailed("input is not a fence");
  if (!crown_diamond_free(p))
    throw PreconditionFailed("fence normalization needs a crown-free, diamond-free poset");
  FenceWitness out = f;
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    const ElementId v = out.elements[i];
    const bool low = out.is_low(i);
    if (low ? p.is_minimal(v) : p.is_maximal(v)) continue;
    const auto options = low ? minimal_of(p, p.down(v)) : maximal_of(p, p.up(v));
    bool replaced = false;
    for (ElementId r : options) {
      FenceWitness trial = out;
      trial.elements[i] = r;
      if (is_fence(p, trial)) {
        out = std::move(trial);
        replaced = true;
        break;
      }
    }
    if (!replaced)
      throw HypothesisViolated("no extremal replacement keeps the fence at index " +
                               std::to_string(i));
  }
  return out;
}

ElementId unique_min_join(const Poset& p, const FenceWitness& f, std::size_t n) {
  if (n < 2 || n > f.length())
    throw PreconditionFailed("unique_min_join needs 2 <= n <= fence length");
  if (!f.is_low(n)) throw PreconditionFailed("f_n must be fence-minimal");
  if (!crown_diamond_free(p))
    throw PreconditionFailed("unique_min_join needs a crown-free, diamond-free poset");
  const Bitset common = p.up(f[n - 2]) & p.up(f[n]);
  const auto mins = minimal_of(p, common);
  if (mins.size() != 1)
    throw HypothesisViolated("U(f_{n-2}) and U(f_n) have " + std::to_string(mins.size()) +
                             " minimal common elements");
  if (!p.leq(mins.front(), f[n - 1]))
    throw HypothesisViolated("minimal common upper element " + p.label(mins.front()) +
                             " is not below " + p.label(f[n - 1]));
  return mins.front();
}

std::optional<std::array<ElementId, 4>> find_two_plus_two(const Poset& p) {
  const auto rel = [&] {
    std::vector<Relation> r;
    for (ElementId a = 0; a < p.size(); ++a)
      for (auto b : to_ids(p.up(a))) r.emplace_back(a, b);
    return r;
  }();
  for (std::size_t i = 0; i < rel.size(); ++i) {
    const auto [a, b] = rel[i];
    const Bitset other = ~(p.comparability(a) | p.comparability(b));
    for (std::size_t j = i + 1; j < rel.size(); ++j) {
      const auto [c, d] = rel[j];
      if (other.test(c) && other.test(d)) return std::array<ElementId, 4>{a, b, c, d};
    }
  }
  return std::nullopt;
}

std::optional<std::array<ElementId, 4>> find_three_plus_one(const Poset& p) {
  for (ElementId b = 0; b < p.size(); ++b) {
    for (auto a : to_ids(p.down(b))) {
      for (auto c : to_ids(p.up(b))) {
        const Bitset free =
            ~(p.comparability(a) | p.comparability(b) | p.comparability(c));
        if (free.any())
          return std::array<ElementId, 4>{a, b, c, static_cast<ElementId>(free.find_first())};
      }
    }
  }
  return std::nullopt;
}

bool is_semiorder(const Poset& p) {
  return !find_two_plus_two(p) && !find_three_plus_one(p);
}

}  // namespace balpairs
