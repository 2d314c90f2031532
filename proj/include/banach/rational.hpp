#pragma once

#include <gmpxx.h>

#include <string>

namespace banach {

using Rational = mpq_class;

/// n/d in canonical form.
Rational rat(long n, long d = 1);

/// Exact conversion from a finite double.
Rational rat_from_double(double value);

/// Accepts "n", "n/d", and finite decimal literals such as "-0.25" or "1e-3".
/// Decimals are converted exactly (0.1 becomes 1/10, not the nearest double).
Rational parse_rational(const std::string& text);

inline int sign(const Rational& q) { return sgn(q); }
inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

Rational pow(const Rational& base, unsigned exponent);

/// "n" when the denominator is 1, else "n/d".
std::string to_string(const Rational& q);

/// floor(log2 |q|) style magnitude estimate; used to size tolerances.
long approx_log2(const Rational& q);

}  // namespace banach
