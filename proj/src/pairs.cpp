#include "balpairs/pairs.hpp"

#include <algorithm>

#include "balpairs/structure.hpp"

namespace balpairs {

std::string to_string(Side side) { return side == Side::primal ? "primal" : "dual"; }

std::string to_string(Provenance prov) {
  switch (prov) {
    case Provenance::exhaustive: return "exhaustive";
    case Provenance::theorem1_chain: return "theorem1_chain";
    case Provenance::theorem2_case_i: return "theorem2_case_i";
    case Provenance::theorem2_case_ii: return "theorem2_case_ii";
    case Provenance::theorem2_case_iii: return "theorem2_case_iii";
    case Provenance::forest_algorithm: return "forest_algorithm";
    case Provenance::semiorder_scan: return "semiorder_scan";
    case Provenance::dualized: return "dualized";
  }
  return "unknown";
}

namespace {

void check_pair(const Poset& p, ElementId a, ElementId b) {
  p.check_id(a);
  p.check_id(b);
  if (a == b) throw PreconditionFailed("pair needs two distinct elements");
}

std::vector<ElementId> sorted_chain(const Poset& s, const Bitset& members) {
  auto ids = to_ids(members);
  std::sort(ids.begin(), ids.end(), [&](ElementId x, ElementId y) { return s.less(x, y); });
  return ids;
}

// Certificate on side poset `s` (P itself or its dual).
GoodPairCertificate make_certificate(const Poset& s, ElementId a, ElementId b, Side side,
                                     Rational probability) {
  Bitset members = s.up(b) - s.up(a);
  members.set(b);
  return GoodPairCertificate{a, b, side, sorted_chain(s, members), std::move(probability)};
}

void fill_structural(const Poset& p, PairReport& r) {
  const auto [x, y] = r.pair;
  r.flags.incomparable = p.incomparable(x, y);
  r.flags.critical = is_critical_pair(p, x, y);
  r.flags.very_good = is_very_good_pair(p, x, y).has_value();
}

bool dual_good_conditions(const Poset& p, ElementId a, ElementId b) {
  return p.up(a).is_subset_of(p.up(b)) && is_chain_subset(p, p.down(b) - p.down(a));
}

bool autonomous_outside(const Poset& p, ElementId x, ElementId y, const Bitset& removed) {
  Bitset outside = ~removed;
  outside.reset(x);
  outside.reset(y);
  return ((p.down(x) ^ p.down(y)) & outside).none() &&
         ((p.up(x) ^ p.up(y)) & outside).none();
}

std::optional<Theorem2Match> detect_on(const Poset& p, ElementId x, ElementId y, Side side) {
  const std::size_t n = p.size();
  Bitset removed(n);
  // (i) x < z, y incomparable to z.
  for (auto z : to_ids(p.up(x))) {
    if (!p.incomparable(y, z)) continue;
    removed.reset();
    removed.set(z);
    if (autonomous_outside(p, x, y, removed)) return Theorem2Match{1, side, z, std::nullopt};
  }
  // (ii) x < z, y < t, y incomparable to z, x incomparable to t.
  for (auto z : to_ids(p.up(x))) {
    if (!p.incomparable(y, z)) continue;
    for (auto t : to_ids(p.up(y))) {
      if (!p.incomparable(x, t)) continue;
      removed.reset();
      removed.set(z);
      removed.set(t);
      if (autonomous_outside(p, x, y, removed)) return Theorem2Match{2, side, z, t};
    }
  }
  // (iii) t < x < z, y incomparable to both.
  for (auto z : to_ids(p.up(x))) {
    if (!p.incomparable(y, z)) continue;
    for (auto t : to_ids(p.down(x))) {
      if (!p.incomparable(y, t)) continue;
      removed.reset();
      removed.set(z);
      removed.set(t);
      if (autonomous_outside(p, x, y, removed)) return Theorem2Match{3, side, z, t};
    }
  }
  return std::nullopt;
}

}  // namespace

bool good_pair_conditions(const Poset& p, ElementId a, ElementId b) {
  return p.down(a).is_subset_of(p.down(b)) && is_chain_subset(p, p.up(b) - p.up(a));
}

std::optional<GoodPairCertificate> is_good_pair(const Poset& p, ElementId a, ElementId b,
                                                const PrecedenceTable& table) {
  check_pair(p, a, b);
  if (good_pair_conditions(p, a, b)) {
    Rational pr = table.probability(a, b);
    if (pr <= one_half()) return make_certificate(p, a, b, Side::primal, pr);
  }
  if (dual_good_conditions(p, a, b)) {
    Rational pr = table.probability(b, a);
    if (pr <= one_half()) return make_certificate(dual(p), a, b, Side::dual, pr);
  }
  return std::nullopt;
}

std::optional<GoodPairCertificate> is_good_pair(const Poset& p, ElementId a, ElementId b,
                                                const EngineLimits& limits) {
  check_pair(p, a, b);
  if (p.comparable(a, b)) return std::nullopt;
  if (good_pair_conditions(p, a, b)) {
    Rational pr = prob_before(p, a, b, limits);
    if (pr <= one_half()) return make_certificate(p, a, b, Side::primal, pr);
  }
  if (dual_good_conditions(p, a, b)) {
    Rational pr = prob_before(p, b, a, limits);
    if (pr <= one_half()) return make_certificate(dual(p), a, b, Side::dual, pr);
  }
  return std::nullopt;
}

std::optional<Side> is_very_good_pair(const Poset& p, ElementId a, ElementId b) {
  check_pair(p, a, b);
  if (p.down(a) == p.down(b) && is_chain_subset(p, p.up(a) - p.up(b)) &&
      is_chain_subset(p, p.up(b) - p.up(a)))
    return Side::primal;
  if (p.up(a) == p.up(b) && is_chain_subset(p, p.down(a) - p.down(b)) &&
      is_chain_subset(p, p.down(b) - p.down(a)))
    return Side::dual;
  return std::nullopt;
}

GoodPairCertificate very_good_implies_good(const Poset& p, ElementId a, ElementId b,
                                           const EngineLimits& limits) {
  const auto side = is_very_good_pair(p, a, b);
  if (!side) throw PreconditionFailed("pair is not very good");
  const Poset s = *side == Side::primal ? p : dual(p);
  Rational pr = prob_before(s, a, b, limits);
  if (pr > one_half()) {
    std::swap(a, b);
    pr = 1 - pr;
  }
  if (!good_pair_conditions(s, a, b))
    throw TheoremViolated("very good pair fails the good-pair conditions");
  return make_certificate(s, a, b, *side, pr);
}

PairReport balanced_from_good(const Poset& p, const GoodPairCertificate& cert,
                              const EngineLimits& limits) {
  check_pair(p, cert.a, cert.b);
  const Poset s = cert.side == Side::primal ? p : dual(p);
  const ElementId a = cert.a;
  if (!good_pair_conditions(s, a, cert.b))
    throw PreconditionFailed("certificate conditions do not hold");
  const Rational first = prob_before(s, a, cert.b, limits);
  if (first != cert.probability || first > one_half())
    throw PreconditionFailed("certificate probability is wrong");
  Bitset members = s.up(cert.b) - s.up(a);
  members.set(cert.b);
  const auto chain = sorted_chain(s, members);
  if (chain != cert.chain) throw PreconditionFailed("certificate chain is wrong");

  PairReport r;
  r.provenance = Provenance::theorem1_chain;
  r.dualized = cert.side == Side::dual;
  r.witness = chain;
  if (chain.size() == 1) {
    // Critical pair with probability at most 1/2, hence exactly 1/2.
    if (first != one_half())
      throw TheoremViolated("critical good pair with probability " + to_string(first));
    r.pair = {a, cert.b};
    r.probability = first;
    r.step = "critical";
  } else {
    bool found = false;
    for (std::size_t j = 0; j < chain.size(); ++j) {
      Rational pj = j == 0 ? first : prob_before(s, a, chain[j], limits);
      if (in_balanced_range(pj)) {
        r.pair = {a, chain[j]};
        r.probability = cert.side == Side::primal ? pj : 1 - pj;
        r.step = "chain_index_" + std::to_string(j + 1);
        found = true;
        break;
      }
    }
    if (!found) throw TheoremViolated("no chain element gives a balanced pair");
  }
  fill_structural(p, r);
  r.flags.balanced = true;
  return r;
}

std::optional<Theorem2Match> detect_theorem2_case(const Poset& p, ElementId x, ElementId y) {
  check_pair(p, x, y);
  if (p.comparable(x, y)) throw PreconditionFailed("pair is comparable");
  if (auto m = detect_on(p, x, y, Side::primal)) return m;
  return detect_on(dual(p), x, y, Side::dual);
}

std::optional<PairReport> find_balanced_pair_exhaustive(const Poset& p,
                                                        const EngineLimits& limits) {
  const PrecedenceTable table(p, limits);
  for (const auto& [x, y] : incomparable_pairs(p)) {
    Rational pr = table.probability(x, y);
    if (!in_balanced_range(pr)) continue;
    PairReport r;
    r.pair = {x, y};
    r.probability = pr;
    r.provenance = Provenance::exhaustive;
    r.step = "scan";
    fill_structural(p, r);
    r.flags.balanced = true;
    r.flags.good = is_good_pair(p, x, y, table).has_value();
    return r;
  }
  return std::nullopt;
}

PairReport find_balanced_pair_semiorder(const Poset& p, const FinderOptions& options) {
  if (is_chain(p)) throw NotApplicableError("poset is a chain");
  if (!is_semiorder(p)) throw NotSemiorderError("poset contains 2+2 or 3+1");

  const Poset d = dual(p);
  for (int pass = 0; pass < 2; ++pass) {
    const Poset& s = pass == 0 ? p : d;
    for (const auto& [x, y] : incomparable_pairs(s)) {
      for (auto z : to_ids(s.up(x))) {
        if (!s.incomparable(y, z)) continue;
        Bitset removed(s.size());
        removed.set(z);
        if (!autonomous_outside(s, x, y, removed)) continue;
        PairReport r;
        r.pair = {x, y};
        r.provenance = Provenance::semiorder_scan;
        r.dualized = pass == 1;
        r.witness = {z};
        r.step = "case_i_triple";
        fill_structural(p, r);
        r.flags.balanced = true;
        if (options.verify) {
          r.probability = prob_before(p, x, y, options.limits);
          if (!in_balanced_range(*r.probability))
            throw TheoremViolated("case (i) pair has probability " +
                                  fraction_string(*r.probability));
        }
        return r;
      }
    }
  }

  if (auto vg = find_very_good_pair_exhaustive(p)) {
    auto cert = very_good_implies_good(p, vg->first, vg->second, options.limits);
    PairReport r = balanced_from_good(p, cert, options.limits);
    r.step = "fallback_very_good/" + r.step;
    return r;
  }
  auto r = find_balanced_pair_exhaustive(p, options.limits);
  if (!r) throw TheoremViolated("semiorder without a balanced pair");
  r->step = "fallback_exhaustive";
  return *r;
}

std::optional<Relation> find_very_good_pair_exhaustive(const Poset& p) {
  for (ElementId a = 0; a < p.size(); ++a)
    for (ElementId b = a + 1; b < p.size(); ++b)
      if (is_very_good_pair(p, a, b)) return Relation{a, b};
  return std::nullopt;
}

std::vector<PairReport> classify_all_pairs(const Poset& p, const EngineLimits& limits) {
  std::vector<PairReport> out;
  const auto pairs = incomparable_pairs(p);
  if (pairs.empty()) return out;
  const PrecedenceTable table(p, limits);
  for (const auto& [x, y] : pairs) {
    PairReport r;
    r.pair = {x, y};
    r.probability = table.probability(x, y);
    r.provenance = Provenance::exhaustive;
    fill_structural(p, r);
    auto cert = is_good_pair(p, x, y, table);
    r.flags.good = cert.has_value();
    r.flags.balanced = in_balanced_range(*r.probability);
    if (cert) {
      r.witness = cert->chain;
      r.dualized = cert->side == Side::dual;
    }
    if (auto m = detect_theorem2_case(p, x, y)) {
      r.provenance = m->which == 1   ? Provenance::theorem2_case_i
                     : m->which == 2 ? Provenance::theorem2_case_ii
                                     : Provenance::theorem2_case_iii;
      r.step = "theorem2_" + to_string(m->side);
    } else {
      r.step = "table";
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace balpairs
