#pragma once

#include <gmpxx.h>

#include <string>

namespace balpairs {

using BigInt = mpz_class;
// Always canonical (lowest terms, positive denominator) when built through
// make_rational.
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const BigInt& v) { return v.get_str(); }

// Always "p/q", including integers ("1/1"). Used in machine output.
inline std::string fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline const Rational& one_third() {
  static const Rational v(1, 3);
  return v;
}
inline const Rational& two_thirds() {
  static const Rational v(2, 3);
  return v;
}
inline const Rational& one_half() {
  static const Rational v(1, 2);
  return v;
}

inline bool in_balanced_range(const Rational& p) {
  return p >= one_third() && p <= two_thirds();
}

}  // namespace balpairs
