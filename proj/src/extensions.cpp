#include "balpairs/extensions.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace balpairs {

std::vector<std::size_t> LinearExtension::positions() const {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  return pos;
}

bool is_linear_extension(const Poset& p, const LinearExtension& ext) {
  if (ext.order.size() != p.size()) return false;
  std::vector<bool> seen(p.size(), false);
  for (auto v : ext.order) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  const auto pos = ext.positions();
  for (const auto& [x, y] : p.cover_relations())
    if (pos[x] > pos[y]) return false;
  return true;
}

void for_each_extension(const Poset& p,
                        const std::function<bool(const LinearExtension&)>& visit,
                        const EngineLimits& limits) {
  const std::size_t n = p.size();
  if (n > limits.enumeration_cap)
    throw SizeError("enumeration of " + std::to_string(n) +
                    " elements exceeds cap " + std::to_string(limits.enumeration_cap));
  LinearExtension ext;
  ext.order.reserve(n);
  std::vector<std::size_t> pending(n);
  for (ElementId x = 0; x < n; ++x) pending[x] = p.lower_covers(x).size();
  bool stop = false;
  auto rec = [&](auto&& self) -> void {
    if (ext.order.size() == n) {
      if (!visit(ext)) stop = true;
      return;
    }
    for (ElementId x = 0; x < n && !stop; ++x) {
      if (pending[x] != 0) continue;
      pending[x] = SIZE_MAX;  // placed
      for (ElementId u : p.upper_covers(x)) --pending[u];
      ext.order.push_back(x);
      self(self);
      ext.order.pop_back();
      for (ElementId u : p.upper_covers(x)) ++pending[u];
      pending[x] = 0;
    }
  };
  rec(rec);
}

std::vector<LinearExtension> enumerate_extensions(const Poset& p,
                                                  const EngineLimits& limits) {
  std::vector<LinearExtension> out;
  for_each_extension(p, [&](const LinearExtension& e) {
    out.push_back(e);
    return true;
  }, limits);
  return out;
}

namespace {

// Order ideals reachable from the empty set, grouped by size, with forward
// counts (ways to build the ideal) and backward counts (ways to complete it).
template <class Count>
struct IdealLattice {
  std::vector<std::uint64_t> masks;
  std::vector<Count> forward;
  std::vector<Count> backward;
  std::vector<std::uint64_t> down_mask;
  std::uint64_t full = 0;
  std::unordered_map<std::uint64_t, std::uint32_t> index;

  explicit IdealLattice(const Poset& p) {
    const std::size_t n = p.size();
    down_mask.assign(n, 0);
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y : to_ids(p.down(x))) down_mask[x] |= std::uint64_t{1} << y;
    full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

    masks.push_back(0);
    forward.push_back(Count(1));
    index.emplace(0, 0);
    std::size_t level_begin = 0;
    for (std::size_t level = 0; level < n; ++level) {
      const std::size_t level_end = masks.size();
      for (std::size_t i = level_begin; i < level_end; ++i) {
        const std::uint64_t ideal = masks[i];
        for (ElementId x = 0; x < n; ++x) {
          const std::uint64_t bit = std::uint64_t{1} << x;
          if ((ideal & bit) || (down_mask[x] & ~ideal)) continue;
          const std::uint64_t next = ideal | bit;
          auto [it, inserted] =
              index.emplace(next, static_cast<std::uint32_t>(masks.size()));
          if (inserted) {
            masks.push_back(next);
            forward.push_back(Count(0));
          }
          forward[it->second] += forward[i];
        }
      }
      level_begin = level_end;
    }

    backward.assign(masks.size(), Count(0));
    for (std::size_t i = masks.size(); i-- > 0;) {
      const std::uint64_t ideal = masks[i];
      if (ideal == full) {
        backward[i] = Count(1);
        continue;
      }
      Count acc(0);
      for (ElementId x = 0; x < n; ++x) {
        const std::uint64_t bit = std::uint64_t{1} << x;
        if ((ideal & bit) || (down_mask[x] & ~ideal)) continue;
        acc += backward[index.at(ideal | bit)];
      }
      backward[i] = acc;
    }
  }

  const Count& total() const { return backward.front(); }
};

BigInt to_big(std::uint64_t v) {
  BigInt b;
  mpz_import(b.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return b;
}
const BigInt& to_big(const BigInt& v) { return v; }

void check_dp_cap(const Poset& p, const EngineLimits& limits) {
  const std::size_t cap = std::min<std::size_t>(limits.dp_cap, 64);
  if (p.size() > cap)
    throw SizeError("exact counting of " + std::to_string(p.size()) +
                    " elements exceeds DP cap " + std::to_string(cap));
}

// n! < 2^64 for n <= 20, so machine words suffice there.
constexpr std::size_t kWordCountLimit = 20;

template <class Count>
void fill_table(const Poset& p, BigInt& total, std::vector<BigInt>& before) {
  const std::size_t n = p.size();
  IdealLattice<Count> lat(p);
  total = to_big(lat.total());
  std::vector<Count> acc(n * n, Count(0));
  for (std::size_t i = 0; i < lat.masks.size(); ++i) {
    const std::uint64_t ideal = lat.masks[i];
    if (ideal == lat.full) continue;
    for (ElementId x = 0; x < n; ++x) {
      const std::uint64_t bit = std::uint64_t{1} << x;
      if ((ideal & bit) || (lat.down_mask[x] & ~ideal)) continue;
      const Count w = lat.forward[i] * lat.backward[lat.index.at(ideal | bit)];
      // x is placed while every y outside ideal + {x} is still to come.
      for (ElementId y = 0; y < n; ++y)
        if (y != x && !(ideal & (std::uint64_t{1} << y))) acc[x * n + y] += w;
    }
  }
  before.resize(n * n);
  for (std::size_t k = 0; k < n * n; ++k) before[k] = to_big(acc[k]);
}

}  // namespace

BigInt count_extensions(const Poset& p, const EngineLimits& limits) {
  check_dp_cap(p, limits);
  if (p.size() == 0) return BigInt(1);
  if (p.size() <= kWordCountLimit) return to_big(IdealLattice<std::uint64_t>(p).total());
  return IdealLattice<BigInt>(p).total();
}

PrecedenceTable::PrecedenceTable(const Poset& p, const EngineLimits& limits)
    : n_(p.size()) {
  check_dp_cap(p, limits);
  if (n_ == 0) {
    total_ = 1;
    return;
  }
  if (n_ <= kWordCountLimit)
    fill_table<std::uint64_t>(p, total_, before_);
  else
    fill_table<BigInt>(p, total_, before_);
}

Rational PrecedenceTable::probability(ElementId x, ElementId y) const {
  return make_rational(before(x, y), total_);
}

Rational prob_before(const Poset& p, ElementId x, ElementId y,
                     const EngineLimits& limits) {
  p.check_id(x);
  p.check_id(y);
  if (x == y) throw PreconditionFailed("prob_before needs distinct elements");
  if (p.less(x, y)) return Rational(1);
  if (p.less(y, x)) return Rational(0);
  // Extensions with x before y are exactly those of P v (x, y).
  return make_rational(count_extensions(add_relation(p, x, y), limits),
                       count_extensions(p, limits));
}

Rational prob_sandwich(const Poset& p, ElementId x, ElementId z, ElementId y,
                       const EngineLimits& limits) {
  p.check_id(x);
  p.check_id(z);
  p.check_id(y);
  if (x == z || z == y || x == y)
    throw PreconditionFailed("prob_sandwich needs three distinct elements");
  if (p.less(z, x) || p.less(y, z) || p.less(y, x)) return Rational(0);
  const Poset refined = add_relation(add_relation(p, x, z), z, y);
  return make_rational(count_extensions(refined, limits), count_extensions(p, limits));
}

bool is_balanced(const Poset& p, ElementId x, ElementId y, const EngineLimits& limits) {
  if (x == y || p.comparable(x, y)) return false;
  return in_balanced_range(prob_before(p, x, y, limits));
}

Poset add_relation(const Poset& p, ElementId a, ElementId b) {
  p.check_id(a);
  p.check_id(b);
  if (a == b || p.less(b, a))
    throw WouldCycleError("adding " + p.label(a) + " < " + p.label(b) +
                          " would create a cycle");
  std::vector<Bitset> rows(p.size());
  Bitset above_b = p.up(b);
  above_b.set(b);
  for (ElementId x = 0; x < p.size(); ++x) {
    rows[x] = p.up(x);
    if (p.leq(x, a)) rows[x] |= above_b;
  }
  return Poset::from_closure(std::move(rows), p.labels());
}

bool QDistribution::nonincreasing() const {
  for (std::size_t j = 1; j < q.size(); ++j)
    if (q[j] > q[j - 1]) return false;
  return true;
}

Rational QDistribution::sum() const {
  Rational s(0);
  for (const auto& v : q) s += v;
  return s;
}

QDistribution q_distribution(const Poset& p, ElementId a, ElementId b,
                             const EngineLimits& limits) {
  p.check_id(a);
  p.check_id(b);
  if (a == b || p.comparable(a, b))
    throw NotGoodPairError("q_distribution needs an incomparable pair");
  Bitset tail = p.up(b) - p.up(a);
  if (!p.down(a).is_subset_of(p.down(b)) || !is_chain_subset(p, tail))
    throw NotGoodPairError("(" + p.label(a) + ", " + p.label(b) +
                           ") fails D(a) within D(b) or U(b) \\ U(a) is not a chain");
  if (tail.none())
    throw EmptyChainError("U(b) \\ U(a) is empty for (" + p.label(a) + ", " +
                          p.label(b) + ")");
  const BigInt total = count_extensions(p, limits);
  const Rational p_ab = make_rational(count_extensions(add_relation(p, a, b), limits), total);
  if (p_ab > one_half())
    throw NotGoodPairError("P(" + p.label(a) + " < " + p.label(b) + ") > 1/2");

  QDistribution out;
  out.a = a;
  tail.set(b);
  out.chain = to_ids(tail);
  std::sort(out.chain.begin(), out.chain.end(), [&](ElementId u, ElementId v) {
    return p.less(u, v);
  });
  const auto& chain = out.chain;
  out.q.push_back(p_ab);
  for (std::size_t j = 1; j < chain.size(); ++j)
    out.q.push_back(prob_sandwich(p, chain[j - 1], a, chain[j], limits));
  out.q.push_back(make_rational(
      count_extensions(add_relation(p, chain.back(), a), limits), total));
  return out;
}

}  // namespace balpairs
