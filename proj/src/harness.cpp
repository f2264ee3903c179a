#include "balpairs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "balpairs/forest_count.hpp"
#include "balpairs/io.hpp"
#include "balpairs/pairs.hpp"
#include "balpairs/structure.hpp"

namespace balpairs {

std::string to_string(PosetFilter f) {
  switch (f) {
    case PosetFilter::all: return "all";
    case PosetFilter::forest: return "forest";
    case PosetFilter::semiorder: return "semiorder";
    case PosetFilter::connected: return "connected";
    case PosetFilter::non_chain: return "non-chain";
  }
  return "all";
}

std::string to_string(Dedup d) { return d == Dedup::labeled ? "labeled" : "isomorphism"; }

PosetFilter parse_filter(const std::string& s) {
  for (auto f : {PosetFilter::all, PosetFilter::forest, PosetFilter::semiorder,
                 PosetFilter::connected, PosetFilter::non_chain})
    if (to_string(f) == s) return f;
  throw UsageError("unknown filter '" + s + "'");
}

Dedup parse_dedup(const std::string& s) {
  if (s == "labeled") return Dedup::labeled;
  if (s == "isomorphism" || s == "iso") return Dedup::isomorphism;
  throw UsageError("unknown dedup mode '" + s + "'");
}

Poset SmallPoset::to_poset() const {
  std::vector<Bitset> rows(n, Bitset(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (up[x] >> y & 1u) rows[x].set(y);
  return Poset::from_closure(std::move(rows));
}

SmallPoset to_small(const Poset& p) {
  if (p.size() > 16) throw SizeError("compact form holds at most 16 elements");
  SmallPoset s;
  s.n = static_cast<std::uint8_t>(p.size());
  for (ElementId x = 0; x < p.size(); ++x)
    for (auto y : to_ids(p.up(x))) s.up[x] |= static_cast<std::uint16_t>(1u << y);
  return s;
}

namespace {

std::uint16_t down_mask(const SmallPoset& s, std::size_t x) {
  std::uint16_t m = 0;
  for (std::size_t y = 0; y < s.n; ++y)
    if (s.up[y] >> x & 1u) m |= static_cast<std::uint16_t>(1u << y);
  return m;
}

// Code of s relabelled so that position i holds element perm[i].
std::uint64_t encode(const SmallPoset& s, const std::vector<std::uint8_t>& perm) {
  std::uint64_t code = 0;
  const std::size_t n = s.n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (s.up[perm[i]] >> perm[j] & 1u) code |= std::uint64_t{1} << (i * n + j);
  return code;
}

// Orders elements by an isomorphism invariant and returns the class
// boundaries of that order.
std::vector<std::uint8_t> invariant_order(const SmallPoset& s, std::vector<std::size_t>& bounds) {
  const std::size_t n = s.n;
  std::vector<std::uint16_t> down(n);
  for (std::size_t x = 0; x < n; ++x) down[x] = down_mask(s, x);
  std::vector<int> base(n);
  for (std::size_t x = 0; x < n; ++x)
    base[x] = std::popcount(down[x]) * 32 + std::popcount(s.up[x]);
  std::vector<std::vector<int>> key(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<int> above, below;
    for (std::size_t y = 0; y < n; ++y) {
      if (s.up[x] >> y & 1u) above.push_back(base[y]);
      if (down[x] >> y & 1u) below.push_back(base[y]);
    }
    std::sort(above.begin(), above.end());
    std::sort(below.begin(), below.end());
    key[x].push_back(base[x]);
    key[x].push_back(static_cast<int>(above.size()));
    key[x].insert(key[x].end(), above.begin(), above.end());
    key[x].insert(key[x].end(), below.begin(), below.end());
  }
  std::vector<std::uint8_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint8_t a, std::uint8_t b) { return key[a] < key[b]; });
  bounds.clear();
  bounds.push_back(0);
  for (std::size_t i = 1; i < n; ++i)
    if (key[order[i]] != key[order[i - 1]]) bounds.push_back(i);
  bounds.push_back(n);
  return order;
}

struct Canonical {
  std::uint64_t code = ~std::uint64_t{0};
  std::vector<std::uint8_t> perm;
};

Canonical canonicalize(const SmallPoset& s) {
  if (s.n > 8) throw SizeError("canonical form supports at most 8 elements");
  std::vector<std::size_t> bounds;
  std::vector<std::uint8_t> perm = invariant_order(s, bounds);
  Canonical best;
  auto rec = [&](auto&& self, std::size_t block) -> void {
    if (block + 1 >= bounds.size()) {
      const auto code = encode(s, perm);
      if (code < best.code) {
        best.code = code;
        best.perm = perm;
      }
      return;
    }
    auto first = perm.begin() + static_cast<std::ptrdiff_t>(bounds[block]);
    auto last = perm.begin() + static_cast<std::ptrdiff_t>(bounds[block + 1]);
    std::sort(first, last);
    do {
      self(self, block + 1);
    } while (std::next_permutation(first, last));
  };
  rec(rec, 0);
  return best;
}

SmallPoset apply_perm(const SmallPoset& s, const std::vector<std::uint8_t>& perm) {
  std::vector<std::uint8_t> pos(s.n);
  for (std::size_t i = 0; i < s.n; ++i) pos[perm[i]] = static_cast<std::uint8_t>(i);
  SmallPoset out;
  out.n = s.n;
  for (std::size_t x = 0; x < s.n; ++x)
    for (std::size_t y = 0; y < s.n; ++y)
      if (s.up[x] >> y & 1u) out.up[pos[x]] |= static_cast<std::uint16_t>(1u << pos[y]);
  return out;
}

// All one-point extensions of s: the new element k gets an order ideal D
// below it and an order filter U above it, with D entirely below U.
template <class Visit>
void for_each_extension_by_one(const SmallPoset& s, Visit&& visit) {
  const std::size_t k = s.n;
  const std::uint32_t full = (1u << k) - 1;
  std::vector<std::uint16_t> down(k);
  for (std::size_t x = 0; x < k; ++x) down[x] = down_mask(s, x);
  auto is_ideal = [&](std::uint32_t d) {
    for (std::size_t x = 0; x < k; ++x)
      if ((d >> x & 1u) && (down[x] & ~d)) return false;
    return true;
  };
  auto is_filter = [&](std::uint32_t u) {
    for (std::size_t x = 0; x < k; ++x)
      if ((u >> x & 1u) && (s.up[x] & ~u)) return false;
    return true;
  };
  for (std::uint32_t d = 0; d <= full; ++d) {
    if (!is_ideal(d)) continue;
    std::uint32_t allowed = full & ~d;
    for (std::size_t x = 0; x < k; ++x)
      if (d >> x & 1u) allowed &= s.up[x];
    for (std::uint32_t u = allowed;; u = (u - 1) & allowed) {
      if (is_filter(u)) {
        SmallPoset child = s;
        child.n = static_cast<std::uint8_t>(k + 1);
        child.up[k] = static_cast<std::uint16_t>(u);
        for (std::size_t x = 0; x < k; ++x)
          if (d >> x & 1u) child.up[x] |= static_cast<std::uint16_t>(1u << k);
        visit(child);
      }
      if (u == 0) break;
    }
  }
}

template <class Visit>
void labeled_rec(const SmallPoset& s, std::size_t n, Visit& visit) {
  if (s.n == n) {
    visit(s);
    return;
  }
  for_each_extension_by_one(s, [&](const SmallPoset& c) { labeled_rec(c, n, visit); });
}

const std::vector<SmallPoset>& isomorphism_classes(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<SmallPoset>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  std::vector<SmallPoset> level;
  if (n == 0) {
    level.push_back(SmallPoset{});
  } else {
    // Built level by level from the classes one size smaller.
    std::vector<SmallPoset> prev{SmallPoset{}};
    for (std::size_t k = 1; k <= n; ++k) {
      if (auto it = cache.find(k); it != cache.end()) {
        prev = it->second;
        continue;
      }
      std::unordered_set<std::uint64_t> seen;
      std::vector<std::pair<std::uint64_t, SmallPoset>> next;
      for (const auto& s : prev) {
        for_each_extension_by_one(s, [&](const SmallPoset& c) {
          const auto can = canonicalize(c);
          if (seen.insert(can.code).second) next.emplace_back(can.code, apply_perm(c, can.perm));
        });
      }
      std::sort(next.begin(), next.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      prev.clear();
      for (auto& [code, s] : next) prev.push_back(s);
      cache[k] = prev;
    }
    return cache[n];
  }
  cache[n] = level;
  return cache[n];
}

bool passes(const Poset& p, PosetFilter f) {
  switch (f) {
    case PosetFilter::all: return true;
    case PosetFilter::forest: return is_cover_forest(p);
    case PosetFilter::semiorder: return is_semiorder(p);
    case PosetFilter::connected: return components(p).size() <= 1;
    case PosetFilter::non_chain: return !is_chain(p);
  }
  return true;
}

}  // namespace

SmallPoset canonical_form(const SmallPoset& s) { return apply_perm(s, canonicalize(s).perm); }

std::uint64_t canonical_code(const SmallPoset& s) { return canonicalize(s).code; }

void for_each_poset(const PosetStream& stream, const std::function<void(const Poset&)>& visit,
                    const GenerationLimits& limits) {
  if (stream.dedup == Dedup::labeled) {
    if (stream.n > limits.labeled_max)
      throw SizeError("labeled generation is capped at n=" + std::to_string(limits.labeled_max));
    auto emit = [&](const SmallPoset& s) {
      const Poset p = s.to_poset();
      if (passes(p, stream.filter)) visit(p);
    };
    labeled_rec(SmallPoset{}, stream.n, emit);
    return;
  }
  if (stream.n > limits.isomorphism_max)
    throw SizeError("isomorphism-class generation is capped at n=" +
                    std::to_string(limits.isomorphism_max));
  for (const auto& s : isomorphism_classes(stream.n)) {
    const Poset p = s.to_poset();
    if (passes(p, stream.filter)) visit(p);
  }
}

std::vector<SmallPoset> generate_posets(const PosetStream& stream,
                                        const GenerationLimits& limits) {
  std::vector<SmallPoset> out;
  for_each_poset(stream, [&](const Poset& p) { out.push_back(to_small(p)); }, limits);
  return out;
}

std::uint64_t count_posets_bruteforce(std::size_t n) {
  if (n > 5) throw SizeError("relation-matrix enumeration is capped at n=5");
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) cells.emplace_back(i, j);
  std::uint64_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells.size()); ++bits) {
    std::array<std::array<bool, 5>, 5> r{};
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (bits >> c & 1u) r[cells[c].first][cells[c].second] = true;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (r[i][j] && r[j][i]) ok = false;
        for (std::size_t k = 0; k < n && ok; ++k)
          if (r[i][j] && r[j][k] && i != k && !r[i][k]) ok = false;
      }
    if (ok) ++count;
  }
  return count;
}

Poset random_tree_poset(std::size_t n, std::mt19937_64& rng) {
  std::vector<Relation> edges;
  if (n >= 2) {
    std::vector<std::size_t> code(n >= 2 ? n - 2 : 0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (auto& c : code) c = pick(rng);
    std::vector<std::size_t> degree(n, 1);
    for (auto c : code) ++degree[c];
    std::bernoulli_distribution coin(0.5);
    auto add = [&](std::size_t a, std::size_t b) {
      if (coin(rng)) std::swap(a, b);
      edges.emplace_back(static_cast<ElementId>(a), static_cast<ElementId>(b));
    };
    for (auto c : code) {
      for (std::size_t leaf = 0; leaf < n; ++leaf) {
        if (degree[leaf] == 1) {
          add(leaf, c);
          --degree[leaf];
          --degree[c];
          break;
        }
      }
    }
    std::size_t u = n, v = n;
    for (std::size_t x = 0; x < n; ++x) {
      if (degree[x] == 1) (u == n ? u : v) = x;
    }
    add(u, v);
  }
  return Poset::from_relations(n, edges);
}

Rational balance_margin(const Poset& p, const EngineLimits& limits) {
  const auto pairs = incomparable_pairs(p);
  if (pairs.empty()) throw IsChainError("a chain has no incomparable pair");
  const PrecedenceTable table(p, limits);
  Rational best = 0;
  for (const auto& [x, y] : pairs) {
    Rational pr = table.probability(x, y);
    Rational m = pr < 1 - pr ? pr : Rational(1 - pr);
    if (m > best) best = m;
  }
  return best;
}

// ---- campaigns -------------------------------------------------------------

namespace {

constexpr std::size_t kKeptFailures = 20;
constexpr std::size_t kKeptExamples = 5;

struct Accumulator {
  std::uint64_t instances = 0;
  std::uint64_t failure_count = 0;
  std::vector<CampaignFailure> failures;
  std::map<std::string, Rational> minima, maxima;
  std::map<std::string, std::uint64_t> counters;
  std::map<std::string, std::vector<std::string>> examples;

  void fail(const Poset& p, std::string detail) {
    ++failure_count;
    failures.push_back({serialize(p), std::move(detail)});
    trim_failures();
  }
  void min(const std::string& key, const Rational& r) {
    auto [it, fresh] = minima.try_emplace(key, r);
    if (!fresh && r < it->second) it->second = r;
  }
  void max(const std::string& key, const Rational& r) {
    auto [it, fresh] = maxima.try_emplace(key, r);
    if (!fresh && r > it->second) it->second = r;
  }
  void count(const std::string& key, std::uint64_t by = 1) { counters[key] += by; }
  void example(const std::string& key, std::string text) {
    auto& v = examples[key];
    v.push_back(std::move(text));
    trim(v);
  }

  static void trim(std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.size() > kKeptExamples) v.resize(kKeptExamples);
  }
  void trim_failures() {
    if (failures.size() > 4 * kKeptFailures) {
      std::sort(failures.begin(), failures.end());
      failures.resize(kKeptFailures);
    }
  }

  void merge(Accumulator&& o) {
    instances += o.instances;
    failure_count += o.failure_count;
    for (auto& f : o.failures) failures.push_back(std::move(f));
    trim_failures();
    for (auto& [k, v] : o.minima) min(k, v);
    for (auto& [k, v] : o.maxima) max(k, v);
    for (auto& [k, v] : o.counters) counters[k] += v;
    for (auto& [k, v] : o.examples) {
      auto& mine = examples[k];
      mine.insert(mine.end(), v.begin(), v.end());
      trim(mine);
    }
  }
};

using Check = std::function<void(const Poset&, Accumulator&, const CampaignOptions&)>;

Accumulator run_pool(const std::vector<SmallPoset>& items, const Check& check,
                     const CampaignOptions& options) {
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(items.size() / 64 + 1)));
  std::vector<Accumulator> parts(threads);
  std::atomic<std::size_t> next{0};
  auto worker = [&](Accumulator& acc) {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) break;
      const Poset p = items[i].to_poset();
      ++acc.instances;
      try {
        check(p, acc, options);
      } catch (const AlgorithmStuck& e) {
        acc.fail(p, std::string("AlgorithmStuck: ") + e.what() + " [" + e.state() + "]");
      } catch (const std::exception& e) {
        acc.fail(p, std::string("exception: ") + e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, std::ref(parts[t]));
  worker(parts[0]);
  for (auto& th : pool) th.join();
  Accumulator total;
  for (auto& part : parts) total.merge(std::move(part));
  return total;
}

CampaignReport finish(const std::string& name, const std::string& universe, Accumulator acc,
                      double seconds) {
  CampaignReport r;
  r.campaign = name;
  r.universe = universe;
  r.instances = acc.instances;
  r.failure_count = acc.failure_count;
  std::sort(acc.failures.begin(), acc.failures.end());
  if (acc.failures.size() > kKeptFailures) acc.failures.resize(kKeptFailures);
  r.failures = std::move(acc.failures);
  for (auto& [k, v] : acc.minima) r.statistics["min_" + k] = fraction_string(v);
  for (auto& [k, v] : acc.maxima) r.statistics["max_" + k] = fraction_string(v);
  for (auto& [k, v] : acc.counters) r.statistics["count_" + k] = std::to_string(v);
  for (auto& [k, v] : acc.examples) {
    std::string joined;
    for (const auto& e : v) joined += (joined.empty() ? "" : " | ") + e;
    r.statistics["examples_" + k] = joined;
  }
  r.seconds = seconds;
  return r;
}

std::string one_line(const Poset& p) {
  std::string s = serialize(p);
  std::replace(s.begin(), s.end(), '\n', ';');
  return s;
}

std::string pair_text(const Relation& r) {
  return "(" + std::to_string(r.first) + "," + std::to_string(r.second) + ")";
}

void check_swap(const Poset& p, Accumulator& acc, const CampaignOptions& o) {
  const auto pairs = incomparable_pairs(p);
  if (pairs.empty()) return;
  const PrecedenceTable t(p, o.limits);
  for (const auto& [x, y] : pairs) {
    if (!is_critical_pair(p, x, y)) continue;
    acc.count("critical_pairs");
    const Rational pr = t.probability(x, y);
    acc.min("critical_probability", pr);
    if (pr < one_half())
      acc.fail(p, "critical pair " + pair_text({x, y}) + " has probability " + fraction_string(pr));
  }
}

void check_good_balanced(const Poset& p, Accumulator& acc, const CampaignOptions& o) {
  const auto pairs = incomparable_pairs(p);
  if (pairs.empty()) return;
  const PrecedenceTable t(p, o.limits);
  for (const auto& [a, b] : pairs) {
    const auto cert = is_good_pair(p, a, b, t);
    if (!cert) continue;
    acc.count("good_pairs");
    PairReport rep;
    try {
      rep = balanced_from_good(p, *cert, o.limits);
    } catch (const TheoremViolated& e) {
      acc.fail(p, "good pair " + pair_text({a, b}) + ": " + e.what());
      continue;
    }
    const Rational oracle = t.probability(rep.pair.first, rep.pair.second);
    if (!rep.probability || *rep.probability != oracle)
      acc.fail(p, "reported probability disagrees with the table for " + pair_text(rep.pair));
    if (!in_balanced_range(oracle))
      acc.fail(p, "extracted pair " + pair_text(rep.pair) + " has probability " +
                      fraction_string(oracle));
    acc.count("branch_" + rep.step.substr(0, rep.step.find('_', 6)));
    if (cert->chain.size() == 1) {
      acc.count("critical_good_pairs");
      if (cert->probability != one_half())
        acc.fail(p, "critical good pair " + pair_text({a, b}) + " not at 1/2");
      continue;
    }
    const Poset s = cert->side == Side::primal ? p : dual(p);
    const auto q = q_distribution(s, a, b, o.limits);
    acc.count("q_distributions");
    if (!q.nonincreasing()) acc.fail(p, "q not nonincreasing for " + pair_text({a, b}));
    if (q.sum() != 1) acc.fail(p, "q does not sum to 1 for " + pair_text({a, b}));
  }
}

void check_cases(const Poset& p, Accumulator& acc, const CampaignOptions& o) {
  const auto pairs = incomparable_pairs(p);
  if (pairs.empty()) return;
  const PrecedenceTable t(p, o.limits);
  for (const auto& [x, y] : pairs) {
    const auto m = detect_theorem2_case(p, x, y);
    if (!m) continue;
    acc.count("case_" + std::to_string(m->which) + "_" + to_string(m->side));
    const Rational pr = t.probability(x, y);
    acc.min("probability", pr);
    acc.max("probability", pr);
    if (!in_balanced_range(pr))
      acc.fail(p, "case " + std::to_string(m->which) + " pair " + pair_text({x, y}) +
                      " has probability " + fraction_string(pr));
  }
}

void check_refinement(const Poset& p, Accumulator& acc, const CampaignOptions& o) {
  const auto pairs = incomparable_pairs(p);
  if (pairs.empty()) return;
  const PrecedenceTable tp(p, o.limits);
  for (const auto& [y, z] : pairs) {
    if (!is_critical_pair(p, y, z)) continue;
    std::optional<PrecedenceTable> tq;
    for (auto x : to_ids(p.down(z))) {
      if (!p.incomparable(x, y)) continue;
      if (!tq) tq.emplace(add_relation(p, y, z), o.limits);
      acc.count("triples");
      const Rational pq = tq->probability(x, y);
      const Rational pp = tp.probability(x, y);
      const Rational bound = 2 * pq / (1 + pq);
      if (!(pq < pp))
        acc.fail(p, "strict inequality fails for x=" + std::to_string(x) + " y=" +
                        std::to_string(y) + " z=" + std::to_string(z));
      if (!(pp <= bound))
        acc.fail(p, "upper bound fails for x=" + std::to_string(x) + " y=" + std::to_string(y) +
                        " z=" + std::to_string(z));
      if (pp == bound) {
        acc.count("tight_triples");
        acc.example("tight", one_line(p));
      }
      acc.max("ratio_to_bound", pp / bound);
    }
  }
}

void check_forest_equiv(const Poset& p, Accumulator& acc, const CampaignOptions&) {
  const bool forest = is_cover_forest(p);
  const bool crown_free = is_crown_free(p);
  const bool diamond_free = is_diamond_free(p);
  if (forest) acc.count("forests");
  if (!crown_free) acc.count("with_crown");
  if (!diamond_free) acc.count("with_diamond");
  if (forest != (crown_free && diamond_free))
    acc.fail(p, std::string("forest=") + (forest ? "1" : "0") + " crown_free=" +
                    (crown_free ? "1" : "0") + " diamond_free=" + (diamond_free ? "1" : "0"));
}

void check_fence_norm(const Poset& p, Accumulator& acc, const CampaignOptions&) {
  std::size_t global_max = 0;
  std::vector<FenceWitness> all;
  for (ElementId x = 0; x < p.size(); ++x) {
    auto fences = enumerate_fences_from(p, x);
    std::size_t longest = 0;
    for (const auto& f : fences) longest = std::max(longest, f.length());
    const FenceWitness found = find_max_fence_from(p, x);
    const FenceWitness* first_longest = nullptr;
    for (const auto& f : fences)
      if (f.length() == longest && (!first_longest || f.elements < first_longest->elements))
        first_longest = &f;
    if (found.length() != longest || !is_fence(p, found) ||
        found.elements != first_longest->elements)
      acc.fail(p, "find_max_fence_from(" + std::to_string(x) + ") is not the least longest fence");
    global_max = std::max(global_max, longest);
    for (auto& f : fences) all.push_back(std::move(f));
  }
  acc.count("fence_searches", p.size());
  if (!(is_crown_free(p) && is_diamond_free(p))) return;
  for (const auto& f : all) {
    if (f.length() != global_max) continue;
    for (const auto& g : {f, FenceWitness{f.elements, !f.starts_low}}) {
      if (!is_fence(p, g)) continue;
      acc.count("normalized_fences");
      const FenceWitness h = normalize_fence(p, g);
      bool ok = is_fence(p, h) && h.length() == g.length();
      for (std::size_t i = 0; ok && i < h.elements.size(); ++i)
        ok = h.is_low(i) ? p.is_minimal(h[i]) : p.is_maximal(h[i]);
      if (!ok) acc.fail(p, "normalization of fence starting at " + std::to_string(f.front()));
    }
  }
}

void check_unique_min(const Poset& p, Accumulator& acc, const CampaignOptions&) {
  if (!(is_crown_free(p) && is_diamond_free(p))) return;
  const Poset d = dual(p);
  for (ElementId x = 0; x < p.size(); ++x) {
    const auto fences = enumerate_fences_from(p, x);
    std::size_t longest = 0;
    for (const auto& f : fences) longest = std::max(longest, f.length());
    if (longest < 2) continue;
    for (const auto& f : fences) {
      if (f.length() != longest) continue;
      const bool low = f.is_low(longest);
      const Poset& s = low ? p : d;
      FenceWitness g = f;
      if (!low) g.starts_low = !g.starts_low;
      acc.count("fences");
      const ElementId m = unique_min_join(s, g, longest);
      // Each f_n <= e < m has a single upper cover, comparable to m.
      Bitset between = s.up(g.back()) & s.down(m);
      between.set(g.back());
      for (auto e : to_ids(between)) {
        const auto& ups = s.upper_covers(e);
        if (ups.size() != 1 || !s.comparable(ups.front(), m))
          acc.fail(p, "element " + std::to_string(e) + " below the join has bad upper covers");
      }
    }
  }
}

void check_forest_finder(const Poset& p, Accumulator& acc, const CampaignOptions& o) {
  const PairReport r = find_very_good_pair_forest(p);
  acc.count("step_" + r.step);
  if (!is_very_good_pair(p, r.pair.first, r.pair.second))
    acc.fail(p, "returned pair " + pair_text(r.pair) + " is not very good");
  const PairReport rd = find_very_good_pair_forest(dual(p));
  if (!is_very_good_pair(dual(p), rd.pair.first, rd.pair.second))
    acc.fail(p, "dual run returned a pair that is not very good");

  const Rational direct = prob_before(p, r.pair.first, r.pair.second, o.limits);
  if (in_balanced_range(direct)) acc.count("returned_pair_balanced");
  const auto cert = very_good_implies_good(p, r.pair.first, r.pair.second, o.limits);
  const PairReport bal = balanced_from_good(p, cert, o.limits);
  const Rational oracle = prob_before(p, bal.pair.first, bal.pair.second, o.limits);
  acc.min("derived_balance", oracle < 1 - oracle ? oracle : Rational(1 - oracle));
  if (!in_balanced_range(oracle))
    acc.fail(p, "derived pair " + pair_text(bal.pair) + " has probability " +
                    fraction_string(oracle));
}

void check_semiorder(const Poset& p, Accumulator& acc, const CampaignOptions& o) {
  FinderOptions fo;
  fo.verify = true;
  fo.limits = o.limits;
  const PairReport r = find_balanced_pair_semiorder(p, fo);
  const std::string branch = r.step.substr(0, r.step.find('/'));
  acc.count("branch_" + branch);
  if (branch != "case_i_triple" && p.size() >= 3) {
    acc.count("fallback_with_3_or_more");
    acc.example("fallback", one_line(p));
  }
  const Rational oracle = prob_before(p, r.pair.first, r.pair.second, o.limits);
  acc.min("probability", oracle);
  acc.max("probability", oracle);
  if (!in_balanced_range(oracle))
    acc.fail(p, "pair " + pair_text(r.pair) + " has probability " + fraction_string(oracle));
}

void check_q_monotone(const Poset& p, Accumulator& acc, const CampaignOptions& o) {
  const auto pairs = incomparable_pairs(p);
  if (pairs.empty()) return;
  const PrecedenceTable t(p, o.limits);
  for (const auto& [a, b] : pairs) {
    const auto cert = is_good_pair(p, a, b, t);
    if (!cert || cert->chain.size() < 2) continue;
    const Poset s = cert->side == Side::primal ? p : dual(p);
    const auto q = q_distribution(s, a, b, o.limits);
    acc.count("distributions");
    acc.max("q1", q.q.front());
    if (!q.nonincreasing()) acc.fail(p, "q not nonincreasing for " + pair_text({a, b}));
    if (q.sum() != 1) acc.fail(p, "q does not sum to 1 for " + pair_text({a, b}));
  }
}

void check_forest_count(const Poset& p, Accumulator& acc, const CampaignOptions& o) {
  const BigInt fast = count_extensions_forest(p);
  const BigInt dp = count_extensions(p, o.limits);
  if (fast != dp) acc.fail(p, "forest count " + to_string(fast) + " != dp " + to_string(dp));
  if (p.size() <= o.limits.enumeration_cap) {
    std::uint64_t listed = 0;
    for_each_extension(p, [&](const LinearExtension&) { ++listed; return true; }, o.limits);
    if (BigInt(static_cast<unsigned long>(listed)) != dp)
      acc.fail(p, "enumeration found " + std::to_string(listed) + " extensions");
    acc.count("enumerated");
  }
  bool upward = true;
  for (ElementId x = 0; x < p.size(); ++x) upward = upward && p.lower_covers(x).size() <= 1;
  if (upward) {
    acc.count("upward_forests");
    const BigInt hook = count_rooted_forest_hook(p);
    if (hook != dp) acc.fail(p, "hook formula gives " + to_string(hook));
  }
}

void check_margin(const Poset& p, Accumulator& acc, const CampaignOptions& o) {
  const Rational m = balance_margin(p, o.limits);
  acc.min("margin", m);
  if (m < one_third()) acc.fail(p, "balance margin " + fraction_string(m) + " < 1/3");
  if (m == one_third()) {
    acc.count("margin_equal_one_third");
    if (p.size() <= 8) acc.example("extremal", one_line(canonical_form(to_small(p)).to_poset()));
  }
}

struct CampaignDef {
  std::string name;
  PosetFilter filter;
  std::size_t min_n;
  Check check;
};

const std::vector<CampaignDef>& campaign_defs() {
  static const std::vector<CampaignDef> all = {
      {"lemma1_swap", PosetFilter::all, 2, check_swap},
      {"theorem1_good_balanced", PosetFilter::all, 2, check_good_balanced},
      {"theorem2_cases", PosetFilter::all, 2, check_cases},
      {"theorem3_inequality", PosetFilter::all, 3, check_refinement},
      {"corollary2_forest_equiv", PosetFilter::all, 1, check_forest_equiv},
      {"lemma2_fence_norm", PosetFilter::all, 1, check_fence_norm},
      {"lemma3_unique_min", PosetFilter::forest, 3, check_unique_min},
      {"theorem5_forest_finder", PosetFilter::forest, 2, check_forest_finder},
      {"corollary1_semiorder", PosetFilter::semiorder, 2, check_semiorder},
      {"q_lemma_monotone", PosetFilter::all, 2, check_q_monotone},
      {"forest_count_equiv", PosetFilter::forest, 1, check_forest_count},
      {"conjecture_margin", PosetFilter::non_chain, 2, check_margin},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& campaign_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : campaign_defs()) v.push_back(s.name);
    return v;
  }();
  return names;
}

CampaignReport run_campaign(const std::string& name, std::size_t n_max,
                            const CampaignOptions& options) {
  const auto it = std::find_if(campaign_defs().begin(), campaign_defs().end(),
                               [&](const CampaignDef& s) { return s.name == name; });
  if (it == campaign_defs().end()) throw UsageError("unknown campaign '" + name + "'");
  const auto start = std::chrono::steady_clock::now();

  std::vector<SmallPoset> universe;
  const bool needs_non_chain = it->filter == PosetFilter::forest || it->filter == PosetFilter::semiorder;
  for (std::size_t n = it->min_n; n <= n_max; ++n) {
    for_each_poset(
        {n, it->filter, options.dedup},
        [&](const Poset& p) {
          if (needs_non_chain && name != "forest_count_equiv" && name != "lemma3_unique_min" &&
              is_chain(p))
            return;
          universe.push_back(to_small(p));
        },
        options.generation);
  }
  Accumulator acc = run_pool(universe, it->check, options);
  std::ostringstream desc;
  desc << to_string(options.dedup) << " posets n=" << it->min_n << ".." << n_max
       << " filter=" << to_string(it->filter);
  if (needs_non_chain && name != "forest_count_equiv" && name != "lemma3_unique_min")
    desc << " non-chain";
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return finish(name, desc.str(), std::move(acc), secs);
}

CampaignReport run_random_forest_campaign(std::size_t n, std::size_t samples, std::uint64_t seed,
                                          const CampaignOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  Accumulator acc;
  for (std::size_t i = 0; i < samples; ++i) {
    const Poset p = random_tree_poset(n, rng);
    ++acc.instances;
    try {
      if (is_chain(p)) {
        acc.count("chains_skipped");
        continue;
      }
      const PairReport r = find_very_good_pair_forest(p);
      acc.count("step_" + r.step);
      if (!is_very_good_pair(p, r.pair.first, r.pair.second))
        acc.fail(p, "returned pair is not very good");
      const Poset d = dual(p);
      const PairReport rd = find_very_good_pair_forest(d);
      if (!is_very_good_pair(d, rd.pair.first, rd.pair.second))
        acc.fail(p, "dual run returned a pair that is not very good");
      if (n <= options.limits.dp_cap && count_extensions_forest(p) != count_extensions(p, options.limits))
        acc.fail(p, "forest count disagrees with dp");
    } catch (const AlgorithmStuck& e) {
      acc.fail(p, std::string("AlgorithmStuck: ") + e.what() + " [" + e.state() + "]");
    } catch (const std::exception& e) {
      acc.fail(p, std::string("exception: ") + e.what());
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return finish("random_forest_finder",
                "random tree posets n=" + std::to_string(n) + " samples=" +
                    std::to_string(samples) + " seed=" + std::to_string(seed),
                std::move(acc), secs);
}

std::string CampaignReport::to_json_line() const {
  nlohmann::ordered_json j;
  j["campaign"] = campaign;
  j["universe"] = universe;
  j["instances"] = instances;
  j["passed"] = passed();
  j["failure_count"] = failure_count;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& f : failures) arr.push_back({{"poset", f.poset}, {"detail", f.detail}});
  j["failures"] = arr;
  nlohmann::ordered_json stats = nlohmann::ordered_json::object();
  for (const auto& [k, v] : statistics) stats[k] = v;
  j["statistics"] = stats;
  return j.dump();
}

std::string CampaignReport::summary() const {
  std::ostringstream os;
  os << (passed() ? "PASS " : "FAIL ") << campaign << ": " << instances << " instances, "
     << failure_count << " failures (" << universe << ")";
  for (const auto& [k, v] : statistics)
    if (!k.starts_with("examples_")) os << "\n  " << k << " = " << v;
  for (const auto& f : failures) os << "\n  failure: " << f.detail;
  return os.str();
}

}  // namespace balpairs
