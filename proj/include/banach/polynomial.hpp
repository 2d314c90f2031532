#pragma once

#include <string>
#include <utility>
#include <vector>

#include "banach/rational.hpp"

namespace banach {

/// Univariate polynomial with rational coefficients, stored low to high and
/// kept trimmed (no trailing zeros; the zero polynomial has no coefficients).
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);

  static QPoly constant(const Rational& c);
  /// c * k^n.
  static QPoly monomial(const Rational& c, unsigned n);
  /// k - r.
  static QPoly linear_root(const Rational& r);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  Rational eval(const Rational& k) const;
  int sign_at(const Rational& k) const { return sgn(eval(k)); }
  QPoly derivative() const;
  QPoly monic() const;
  QPoly pow(unsigned n) const;

  friend QPoly operator+(const QPoly& l, const QPoly& r);
  friend QPoly operator-(const QPoly& l, const QPoly& r);
  friend QPoly operator*(const QPoly& l, const QPoly& r);
  friend QPoly operator*(const Rational& s, const QPoly& p);
  friend QPoly operator-(const QPoly& p);
  friend bool operator==(const QPoly& l, const QPoly& r) { return l.coeffs_ == r.coeffs_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of num / den; den must be nonzero.
std::pair<QPoly, QPoly> divmod(const QPoly& num, const QPoly& den);

/// Monic greatest common divisor (zero if both inputs are zero).
QPoly gcd(const QPoly& l, const QPoly& r);

/// p / gcd(p, p'): same roots, all simple.
QPoly squarefree_part(const QPoly& p);

/// Sturm chain p, p', -rem(p, p'), ... for a nonzero p.
std::vector<QPoly> sturm_sequence(const QPoly& p);

/// Sign changes of the chain at k, zeros skipped.
int sign_variations(const std::vector<QPoly>& chain, const Rational& k);

/// Number of distinct real roots in (lo, hi] (Sturm's theorem).
int sturm_count(const std::vector<QPoly>& chain, const Rational& lo, const Rational& hi);

/// 1 + max |c_i / c_n|: every real root lies in (-B, B). Needs degree >= 1.
Rational cauchy_bound(const QPoly& p);

}  // namespace banach
