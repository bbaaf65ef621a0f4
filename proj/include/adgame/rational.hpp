#pragma once

#include <gmpxx.h>

namespace adgame {

using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline Rational rational(long num, long den) {
  Rational q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

// Lifts spec parameters (stored as double) into the numeric type of a table or
// profile. The rational conversion is the exact binary value of the double, so
// both paths see the same game.
template <typename T> T from_double(double x);
template <> inline double from_double<double>(double x) { return x; }
template <> inline Rational from_double<Rational>(double x) { return Rational(x); }

template <typename T> T numeric_zero();
template <> inline double numeric_zero<double>() { return 0.0; }
template <> inline Rational numeric_zero<Rational>() { return Rational(0); }

}  // namespace adgame
