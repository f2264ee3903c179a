#include <algorithm>
#include <sstream>

#include "balpairs/forest_count.hpp"
#include "balpairs/pairs.hpp"
#include "balpairs/structure.hpp"

namespace balpairs {

namespace {

struct Stuck {
  std::string what;
};

struct Outcome {
  std::optional<Relation> pair;
  FenceWitness fence;
  std::string step;
};

std::string describe(const FenceWitness& f) {
  std::ostringstream os;
  for (std::size_t i = 0; i < f.elements.size(); ++i)
    os << (i ? (f.is_low(i - 1) ? " < " : " > ") : "") << f.elements[i];
  return os.str();
}

Bitset with(Bitset set, ElementId x) {
  set.set(x);
  return set;
}

// Elements hanging at x: reachable from x in the cover graph without
// passing through the spine. Excludes x.
Bitset branches_at(const Poset& s, const Bitset& spine, ElementId x) {
  Bitset out(s.size());
  std::vector<ElementId> queue{x};
  Bitset seen = with(spine, x);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (auto v : s.upper_covers(queue[i]))
      if (!seen.test(v)) seen.set(v), out.set(v), queue.push_back(v);
    for (auto v : s.lower_covers(queue[i]))
      if (!seen.test(v)) seen.set(v), out.set(v), queue.push_back(v);
  }
  return out;
}

FenceWitness flipped(FenceWitness f) {
  f.starts_low = !f.starts_low;
  return f;
}

// Works on one connected, non-chain component. Ids are those of the
// component; dual() keeps ids, so pairs found on either side are valid here.
class Finder {
 public:
  explicit Finder(const Poset& w) : w_(w), d_(dual(w)) {}

  Relation run(std::string& step, bool& dualized);

 private:
  [[noreturn]] void stuck(const std::string& what) const { throw Stuck{what}; }

  bool very_good(ElementId a, ElementId b) const {
    return a != b && is_very_good_pair(w_, a, b).has_value();
  }

  const Poset& side(bool dual_side) const { return dual_side ? d_ : w_; }

  ElementId first_minimal_below(const Poset& s, ElementId x) const {
    return minimal_of(s, with(s.down(x), x)).front();
  }
  ElementId first_maximal_above(const Poset& s, ElementId x) const {
    return maximal_of(s, with(s.up(x), x)).front();
  }

  FenceWitness normalize_from(const Poset& s, FenceWitness f, std::size_t start) const;
  Outcome chain_end(const Poset& s, const FenceWitness& f, const std::string& tag) const;
  std::optional<Relation> spine_hangings(const Poset& s, const FenceWitness& f, const Bitset& spine,
                                std::string& step) const;

  Poset w_, d_;
};

FenceWitness Finder::normalize_from(const Poset& s, FenceWitness f, std::size_t start) const {
  for (std::size_t i = start; i < f.elements.size(); ++i) {
    const ElementId v = f.elements[i];
    const bool low = f.is_low(i);
    if (low ? s.is_minimal(v) : s.is_maximal(v)) continue;
    const auto options = low ? minimal_of(s, s.down(v)) : maximal_of(s, s.up(v));
    bool replaced = false;
    for (ElementId r : options) {
      FenceWitness trial = f;
      trial.elements[i] = r;
      if (is_fence(s, trial)) {
        f = std::move(trial);
        replaced = true;
        break;
      }
    }
    if (!replaced) stuck("fence normalization failed at index " + std::to_string(i) + " of " +
                         describe(f));
  }
  return f;
}

// Makes the up-set of f_n a chain on side `s`, or names a very good pair on the way; f_n must be fence-minimal.
Outcome Finder::chain_end(const Poset& s, const FenceWitness& f, const std::string& tag) const {
  const std::size_t n = f.length();
  if (n < 2 || !f.is_low(n)) stuck(tag + ": fence " + describe(f) + " does not end low");
  const ElementId fn = f.back();
  if (is_chain_subset(s, s.up(fn))) return {std::nullopt, f, tag + ":chain"};

  ElementId m = 0;
  try {
    m = unique_min_join(s, f, n);
  } catch (const HypothesisViolated& e) {
    stuck(tag + ": " + e.what());
  }
  if (is_chain_subset(s, s.up(m)))
    stuck(tag + ": U(m) is a chain but U(f_n) is not, m = " + std::to_string(m));

  Bitset t_set(s.size());
  for (auto y : to_ids(s.up(m)))
    for (auto z : s.lower_covers(y))
      if (s.incomparable(z, m)) t_set.set(y);

  if (t_set.none()) {
    const auto tops = maximal_of(s, s.up(m));
    if (tops.size() < 2) stuck(tag + ": U(m) has fewer than two maximal elements");
    return {Relation{tops[0], tops[1]}, f, tag + ":maxima_above_m"};
  }
  const ElementId y = maximal_of(s, t_set).front();
  if (!is_chain_subset(s, s.up(y))) {
    const auto tops = maximal_of(s, s.up(y));
    if (tops.size() < 2) stuck(tag + ": U(y) has fewer than two maximal elements");
    return {Relation{tops[0], tops[1]}, f, tag + ":maxima_above_y"};
  }
  ElementId z = 0;
  bool found = false;
  for (auto c : s.lower_covers(y)) {
    if (s.incomparable(c, m)) {
      z = c;
      found = true;
      break;
    }
  }
  if (!found) stuck(tag + ": y has no lower cover incomparable to m");
  const ElementId zp = first_minimal_below(s, z);
  FenceWitness g = f;
  g.elements[n - 1] = y;
  g.elements[n] = zp;
  if (!is_fence(s, g)) stuck(tag + ": replacement " + describe(g) + " is not a fence");
  if (!is_chain_subset(s, s.up(zp))) stuck(tag + ": U(z') is not a chain");
  return {std::nullopt, g, tag + ":replaced"};
}

// Spine-and-hangings analysis for a fence f_0 < f_1 > ... > f_n with f_0
// minimal, U(f_0) a chain, f_n maximal, D(f_n) a chain, and no fence of
// length 2 leaving the spine.
std::optional<Relation> Finder::spine_hangings(const Poset& s, const FenceWitness& f, const Bitset& spine,
                                      std::string& step) const {
  const std::size_t n = f.length();
  auto off_spine_covers = [&](ElementId x) {
    std::vector<ElementId> out;
    for (auto c : s.lower_covers(x))
      if (!spine.test(c)) out.push_back(c);
    for (auto c : s.upper_covers(x))
      if (!spine.test(c)) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
  };
  auto open_interval = [&](ElementId lo, ElementId hi) { return s.up(lo) & s.down(hi); };
  auto with_hangings = [&](const Bitset& set) {
    Bitset out(s.size());
    for (auto x : to_ids(set))
      if (!off_spine_covers(x).empty()) out.set(x);
    return out;
  };
  auto try_pairs = [&](std::initializer_list<Relation> candidates,
                       const std::string& tag) -> std::optional<Relation> {
    for (const auto& c : candidates) {
      if (very_good(c.first, c.second)) {
        step = tag;
        return c;
      }
    }
    std::string msg = tag + ": no candidate is very good:";
    for (const auto& c : candidates)
      msg += " (" + std::to_string(c.first) + "," + std::to_string(c.second) + ")";
    stuck(msg);
  };

  const ElementId f0 = f[0], f1 = f[1], f2 = f[2], f3 = f[3], fn = f.back();

  // Hangings off the spine are chains. Only the branches hanging at
  // x itself; elements above x reached through other spine elements belong
  // to those.
  for (auto x : to_ids(spine)) {
    const Bitset hanging = branches_at(s, spine, x);
    const Bitset up_out = s.up(x) & hanging;
    if (!is_chain_subset(s, up_out)) {
      const auto tops = maximal_of(s, up_out);
      return try_pairs({{tops[0], tops[1]}}, "hanging_up");
    }
    const Bitset down_out = s.down(x) & hanging;
    if (!is_chain_subset(s, down_out)) {
      const auto bottoms = minimal_of(s, down_out);
      return try_pairs({{bottoms[0], bottoms[1]}}, "hanging_down");
    }
  }

  // Two minimal elements with chain up-sets, or two maximal elements with
  // chain down-sets, form a very good pair. From here on f_0 and f_n are the
  // only such elements.
  for (auto z : minimal_elements(s))
    if (z != f0 && is_chain_subset(s, s.up(z))) return try_pairs({{f0, z}}, "good_minima");
  for (auto z : maximal_elements(s))
    if (z != fn && is_chain_subset(s, s.down(z))) return try_pairs({{fn, z}}, "good_maxima");

  // The remaining steps name one pair each. Several of them always name two
  // minimal elements with chain up-sets, so the check
  // above already covers them. A named pair that is not very good falls
  // through to the local walk below.
  std::string missed;
  auto attempt = [&](std::initializer_list<Relation> candidates,
                     const std::string& tag) -> std::optional<Relation> {
    for (const auto& c : candidates) {
      if (very_good(c.first, c.second)) {
        step = tag;
        return c;
      }
    }
    missed += (missed.empty() ? "" : ", ") + tag;
    return std::nullopt;
  };
  auto named_steps = [&]() -> std::optional<Relation> {
    ElementId m = 0;
    try {
      m = unique_min_join(s, f, 2);
    } catch (const HypothesisViolated& e) {
      missed = std::string("join: ") + e.what();
      return std::nullopt;
    }
    // A hanging strictly between f_2 and f_1.
    const Bitset d21 = with_hangings(open_interval(f2, f1));
    if (d21.any()) {
      const ElementId x = maximal_of(s, d21).front();
      const ElementId t = off_spine_covers(x).front();
      if (s.less(t, x)) return std::nullopt;
      if (s.covers(x, m))
        return attempt({{f1, first_maximal_above(s, t)}, {fn, first_maximal_above(s, t)}},
                       "between_21_top");
      for (auto c : s.upper_covers(x))
        if (spine.test(c) && s.less(c, m)) return attempt({{c, t}}, "between_21_cover");
      return std::nullopt;
    }
    // The same argument between f_2 and f_3.
    const Bitset d23 = with_hangings(open_interval(f2, f3));
    if (d23.any()) {
      const ElementId x = maximal_of(s, d23).front();
      const ElementId t = off_spine_covers(x).front();
      if (s.less(t, x)) return std::nullopt;
      ElementId u = x;
      for (auto c : s.upper_covers(x))
        if (s.leq(c, f3)) u = c;
      const ElementId top = first_maximal_above(s, t);
      return attempt({{f3, top}, {fn, top}, {u, t}}, "between_23");
    }
    // Final step: the two lower covers of m towards f_0 and f_2.
    ElementId y1 = 0, y2 = 0;
    for (auto c : s.lower_covers(m)) {
      if (s.leq(f0, c)) y1 = c;
      if (s.leq(f2, c)) y2 = c;
    }
    if (!s.leq(f0, y1) || !s.leq(f2, y2) || y1 == y2) return std::nullopt;
    if (!s.less(y2, f3)) return attempt({{y1, y2}}, "final_y1_y2");
    const Bitset up_hang = s.up(f2) - spine;
    if (up_hang.none()) return attempt({{f0, f2}}, "final_f0_f2");
    return attempt({{fn, maximal_of(s, up_hang).front()}}, "final_fn_hanging");
  };
  if (auto p = named_steps()) return p;

  // Local walk along the spine in fence order. At each spine element x the
  // candidates are sibling covers of x and pairs of same-type extremal
  // elements among the nearby fence elements, f_0, f_n and the ends of the
  // chains hanging at x.
  std::vector<ElementId> order;
  Bitset visited(s.size());
  for (std::size_t i = 0; i < n; ++i) {
    const ElementId lo = s.less(f[i], f[i + 1]) ? f[i] : f[i + 1];
    const ElementId hi = lo == f[i] ? f[i + 1] : f[i];
    std::vector<ElementId> seg = to_ids(with(with(s.up(lo) & s.down(hi), lo), hi) - visited);
    std::sort(seg.begin(), seg.end(), [&](ElementId a, ElementId b) {
      return (lo == f[i]) == s.less(a, b);
    });
    for (auto x : seg) {
      visited.set(x);
      order.push_back(x);
    }
  }
  auto interval_index = [&](ElementId x) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
      const ElementId lo = s.less(f[i], f[i + 1]) ? f[i] : f[i + 1];
      const ElementId hi = lo == f[i] ? f[i + 1] : f[i];
      if (s.leq(lo, x) && s.leq(x, hi)) out.push_back(i);
    }
    return out;
  };
  for (auto x : order) {
    for (const auto* covers : {&s.upper_covers(x), &s.lower_covers(x)})
      for (std::size_t i = 0; i < covers->size(); ++i)
        for (std::size_t j = i + 1; j < covers->size(); ++j)
          if (very_good((*covers)[i], (*covers)[j])) {
            step = "walk_siblings";
            return Relation{(*covers)[i], (*covers)[j]};
          }
    std::vector<ElementId> pool{f0, fn};
    for (auto i : interval_index(x))
      for (std::size_t k = i == 0 ? 0 : i - 1; k <= std::min(i + 2, n); ++k) pool.push_back(f[k]);
    for (auto c : off_spine_covers(x))
      pool.push_back(s.less(c, x) ? first_minimal_below(s, c) : first_maximal_above(s, c));
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        const ElementId a = pool[i], b = pool[j];
        const bool both_min = s.is_minimal(a) && s.is_minimal(b);
        const bool both_max = s.is_maximal(a) && s.is_maximal(b);
        if ((both_min || both_max) && very_good(a, b)) {
          step = "walk_extremal";
          return Relation{a, b};
        }
      }
  }
  stuck("walk found no pair" + (missed.empty() ? std::string() : " after " + missed));
}

Relation Finder::run(std::string& step, bool& dualized) {
  dualized = false;
  FenceWitness f = normalize_fence(w_, find_max_fence(w_));
  if (f.length() < 2) stuck("maximum fence has length " + std::to_string(f.length()));
  if (!f.starts_low) {
    std::swap(w_, d_);
    dualized = true;
    f = flipped(f);
  }

  auto done = [&](const Outcome& o) {
    if (!very_good(o.pair->first, o.pair->second))
      stuck(o.step + ": named pair is not very good");
    step = o.step;
    return *o.pair;
  };

  // Make U(f_0) a chain.
  Outcome r = chain_end(w_, f.reversed(), "end_f0");
  if (r.pair) return done(r);
  f = normalize_from(w_, r.fence.reversed(), 0);
  const std::size_t n = f.length();

  // Same at the f_n end, in the dual when f_n is maximal.
  if (f.is_low(n)) {
    r = chain_end(w_, f, "end_fn");
  } else {
    r = chain_end(d_, flipped(f), "end_fn_dual");
    r.fence = flipped(r.fence);
  }
  if (r.pair) return done(r);
  f = normalize_from(w_, r.fence, 0);

  const ElementId f0 = f.front(), fn = f.back();
  if (!w_.is_minimal(f0) || !is_chain_subset(w_, w_.up(f0)))
    stuck("f_0 is not minimal with a chain up-set after end extension");
  if (f.is_low(n) ? !is_chain_subset(w_, w_.up(fn)) : !is_chain_subset(w_, w_.down(fn)))
    stuck("f_n end is not a chain after end extension");

  if (f.is_low(n)) {
    Outcome o{Relation{f0, fn}, f, "both_ends_minimal"};
    return done(o);
  }

  Bitset spine(w_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const ElementId a = f[i], b = f[i + 1];
    const ElementId lo = w_.less(a, b) ? a : b, hi = lo == a ? b : a;
    spine |= with(w_.up(lo), lo) & with(w_.down(hi), hi);
  }

  // A fence of length >= 2 inside the branches hanging at a spine
  // element x. {x} plus those branches is a subtree, hence a tree poset in
  // which end extension applies.
  for (auto x : to_ids(spine)) {
    std::vector<ElementId> members = to_ids(with(branches_at(w_, spine, x), x));
    if (members.size() < 3) continue;
    const Poset px = restrict(w_, members);
    const auto local_x = static_cast<ElementId>(
        std::lower_bound(members.begin(), members.end(), x) - members.begin());
    FenceWitness fx = find_max_fence_from(px, local_x);
    if (fx.length() < 2) continue;
    fx = normalize_from(px, fx, 1);
    const std::size_t k = fx.length();
    const bool low = fx.is_low(k);
    const Poset pd = low ? Poset() : dual(px);
    Outcome o = low ? chain_end(px, fx, "branch_fence") : chain_end(pd, flipped(fx), "branch_fence_dual");
    if (o.pair) {
      o.pair = Relation{members[o.pair->first], members[o.pair->second]};
      return done(o);
    }
    const ElementId e = members[o.fence.back()];
    if (low ? !w_.is_minimal(e) : !w_.is_maximal(e)) stuck("branch_fence: fence end is not extremal");
    return done(Outcome{Relation{low ? f0 : fn, e}, o.fence, low ? "branch_min" : "branch_max"});
  }

  // No branch fences: hangings off the spine, from the f_0 end and then mirrored from the f_n end.
  std::string first_failure;
  try {
    if (auto p = spine_hangings(w_, f, spine, step)) return *p;
  } catch (const Stuck& e) {
    first_failure = e.what;
  }
  try {
    if (auto p = spine_hangings(d_, flipped(f.reversed()), spine, step)) {
      step = "mirror/" + step;
      return *p;
    }
  } catch (const Stuck& e) {
    stuck(first_failure + "; mirrored: " + e.what + "; fence " + describe(f) +
          (dualized ? " (dual)" : ""));
  }
  stuck("spine hangings produced no pair");
}

std::string dump(const Poset& p) {
  std::ostringstream os;
  os << "n=" << p.size() << " covers:";
  for (const auto& [a, b] : p.cover_relations()) os << ' ' << a << '<' << b;
  return os.str();
}

}  // namespace

PairReport find_very_good_pair_forest(const Poset& p, const FinderOptions& options) {
  if (!is_cover_forest(p)) throw NotForestError("cover graph has a cycle", cover_cycle(p));
  if (is_chain(p)) throw IsChainError("poset is totally ordered");

  PairReport r;
  r.provenance = Provenance::forest_algorithm;
  const auto comps = components(p);
  const auto non_chain = std::find_if(comps.begin(), comps.end(), [&](const auto& c) {
    return !is_chain_subset(p, c);
  });

  if (non_chain == comps.end()) {
    const auto mins = minimal_elements(p);
    r.pair = {mins[0], mins[1]};
    r.step = "all_chains";
  } else {
    const Restriction sub = restrict_without(p, [&] {
      std::vector<ElementId> rest;
      Bitset keep = to_bitset(p.size(), *non_chain);
      for (ElementId v = 0; v < p.size(); ++v)
        if (!keep.test(v)) rest.push_back(v);
      return rest;
    }());
    try {
      Finder finder(sub.poset);
      bool dualized = false;
      std::string step;
      const Relation local = finder.run(step, dualized);
      r.pair = {sub.original[local.first], sub.original[local.second]};
      r.step = step;
      r.dualized = dualized;
    } catch (const Stuck& e) {
      const std::string state = e.what + " | component " + dump(sub.poset);
      if (!options.verify) throw AlgorithmStuck("forest finder stuck: " + e.what, state);
      const auto vg = find_very_good_pair_exhaustive(p);
      if (!vg) throw AlgorithmStuck("forest finder stuck and no very good pair exists", state);
      r.pair = *vg;
      r.step = "stuck_fallback";
      r.notes.push_back("stuck: " + state);
    }
  }

  const auto side = is_very_good_pair(p, r.pair.first, r.pair.second);
  if (!side) throw AlgorithmStuck("returned pair is not very good", dump(p));
  r.flags.incomparable = true;
  r.flags.critical = is_critical_pair(p, r.pair.first, r.pair.second);
  r.flags.very_good = true;
  if (options.verify) {
    r.probability = prob_before(p, r.pair.first, r.pair.second, options.limits);
    r.flags.balanced = in_balanced_range(*r.probability);
  }
  return r;
}

}  // namespace balpairs
