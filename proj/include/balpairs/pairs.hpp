#pragma once

#include <optional>
#include <string>
#include <vector>

#include "balpairs/extensions.hpp"
#include "balpairs/poset.hpp"
#include "balpairs/rational.hpp"

namespace balpairs {

enum class Side { primal, dual };

enum class Provenance {
  exhaustive,
  theorem1_chain,
  theorem2_case_i,
  theorem2_case_ii,
  theorem2_case_iii,
  forest_algorithm,
  semiorder_scan,
  dualized,
};

std::string to_string(Side side);
std::string to_string(Provenance prov);

// Flags that were not established are left empty.
struct PairFlags {
  bool incomparable = false;
  bool critical = false;
  std::optional<bool> good;
  std::optional<bool> very_good;
  std::optional<bool> balanced;
};

struct PairReport {
  Relation pair{0, 0};
  PairFlags flags;
  std::optional<Rational> probability;  // P(first before second)
  Provenance provenance = Provenance::exhaustive;
  bool dualized = false;
  std::vector<ElementId> witness;
  // Which branch of the producing routine fired.
  std::string step;
  std::vector<std::string> notes;
};

struct GoodPairCertificate {
  ElementId a = 0, b = 0;
  Side side = Side::primal;
  // [U(b) \ U(a)] + {b}, ascending on `side`.
  std::vector<ElementId> chain;
  // P(a before b) on `side`.
  Rational probability;
};

struct FinderOptions {
  EngineLimits limits;
  // Compute exact probabilities for results that are certified by a theorem
  // and assert them; on AlgorithmStuck fall back to exhaustive search.
  bool verify = false;
};

// Good-pair test with a caller-supplied precedence table for P.
std::optional<GoodPairCertificate> is_good_pair(const Poset& p, ElementId a, ElementId b,
                                                const PrecedenceTable& table);
std::optional<GoodPairCertificate> is_good_pair(const Poset& p, ElementId a, ElementId b,
                                                const EngineLimits& limits = {});

// Structural half of the good-pair test on one side, no probability.
bool good_pair_conditions(const Poset& p, ElementId a, ElementId b);

std::optional<Side> is_very_good_pair(const Poset& p, ElementId a, ElementId b);

GoodPairCertificate very_good_implies_good(const Poset& p, ElementId a, ElementId b,
                                           const EngineLimits& limits = {});

PairReport balanced_from_good(const Poset& p, const GoodPairCertificate& cert,
                              const EngineLimits& limits = {});

struct Theorem2Match {
  int which = 1;  // 1, 2 or 3
  Side side = Side::primal;
  ElementId z = 0;
  std::optional<ElementId> t;
};

std::optional<Theorem2Match> detect_theorem2_case(const Poset& p, ElementId x, ElementId y);

std::optional<PairReport> find_balanced_pair_exhaustive(const Poset& p,
                                                        const EngineLimits& limits = {});

PairReport find_balanced_pair_semiorder(const Poset& p, const FinderOptions& options = {});

PairReport find_very_good_pair_forest(const Poset& p, const FinderOptions& options = {});

// First very good pair {a < b} in id order, or none.
std::optional<Relation> find_very_good_pair_exhaustive(const Poset& p);

std::vector<PairReport> classify_all_pairs(const Poset& p, const EngineLimits& limits = {});

}  // namespace balpairs
