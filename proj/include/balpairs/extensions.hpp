#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "balpairs/poset.hpp"
#include "balpairs/rational.hpp"

namespace balpairs {

struct EngineLimits {
  std::size_t enumeration_cap = 12;
  // Ideal masks are 64-bit, so this cannot exceed 64.
  std::size_t dp_cap = 24;
};

// A linear extension; order[0] is the least element.
struct LinearExtension {
  std::vector<ElementId> order;

  std::vector<std::size_t> positions() const;
  bool operator==(const LinearExtension&) const = default;
};

bool is_linear_extension(const Poset& p, const LinearExtension& ext);

// Visits every linear extension exactly once, in lexicographic order of the
// id sequence. Returning false from `visit` stops the walk.
void for_each_extension(const Poset& p,
                        const std::function<bool(const LinearExtension&)>& visit,
                        const EngineLimits& limits = {});
std::vector<LinearExtension> enumerate_extensions(const Poset& p,
                                                  const EngineLimits& limits = {});

// Exact count by dynamic programming over order ideals.
BigInt count_extensions(const Poset& p, const EngineLimits& limits = {});

// All pairwise precedence counts from one pass over the ideal lattice:
// before(x, y) = #{extensions with x placed before y}.
class PrecedenceTable {
 public:
  explicit PrecedenceTable(const Poset& p, const EngineLimits& limits = {});

  std::size_t size() const noexcept { return n_; }
  const BigInt& total() const noexcept { return total_; }
  const BigInt& before(ElementId x, ElementId y) const { return before_[x * n_ + y]; }
  // P(x before y); x != y.
  Rational probability(ElementId x, ElementId y) const;

 private:
  std::size_t n_ = 0;
  BigInt total_;
  std::vector<BigInt> before_;
};

Rational prob_before(const Poset& p, ElementId x, ElementId y,
                     const EngineLimits& limits = {});
// P(x before z before y); x, z, y distinct.
Rational prob_sandwich(const Poset& p, ElementId x, ElementId z, ElementId y,
                       const EngineLimits& limits = {});

bool is_balanced(const Poset& p, ElementId x, ElementId y,
                 const EngineLimits& limits = {});

// P v (a, b): adds every x < y with x <= a and b <= y.
Poset add_relation(const Poset& p, ElementId a, ElementId b);

struct QDistribution {
  ElementId a = 0;
  std::vector<ElementId> chain;  // b_1 < ... < b_n, b_1 = b
  std::vector<Rational> q;       // length n + 1

  bool nonincreasing() const;
  Rational sum() const;
};

// Position distribution of `a` relative to the chain [U(b) \ U(a)] + {b}:
// q_1 = P(a < b_1), q_j = P(b_{j-1} < a < b_j), q_{n+1} = P(b_n < a), each
// computed as an independent event count. The good-pair conditions are checked
// on `p` as given (pass the dual for dual-side pairs).
QDistribution q_distribution(const Poset& p, ElementId a, ElementId b,
                             const EngineLimits& limits = {});

}  // namespace balpairs
