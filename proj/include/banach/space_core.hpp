#pragma once

#include "banach/exponent.hpp"
#include "banach/interval.hpp"
#include "banach/rational.hpp"
#include "banach/vector.hpp"

namespace banach {

/// Relative tolerance for float-path norm comparisons and derivative signs.
inline constexpr double kDefaultTol = 1e-9;

/// One-sided derivatives of t -> ||x + t y|| at t = 0. Convexity of the norm
/// gives d_minus <= d_plus.
struct DerivPair {
  double d_minus = 0.0;
  double d_plus = 0.0;
};

/// Exact one-sided derivatives up to a positive factor: the true pair is
/// scale * (d_minus, d_plus), with scale = ||x||^(1-p) for integer p >= 2 and
/// scale = 1 for p in {1, inf}. Signs (and hence every orthogonality and cone
/// verdict) are exact.
struct ExactDerivPair {
  Rational d_minus;
  Rational d_plus;
  double scale = 1.0;

  DerivPair to_double() const { return {scale * d_minus.get_d(), scale * d_plus.get_d()}; }
};

/// (sum |v_i|^p)^(1/p), or max |v_i| for p = inf. Throws DomainError on
/// non-finite coordinates.
double p_norm(const VecN& v, const Exponent& p);

/// ||v||^q for Integer(q), ||v||_inf for Infinity. Exact.
Rational norm_power(const QVecN& v, const Exponent& p);

/// Rational enclosure of ||v||_p of width <= 2^-bits * max(1, ||v||).
QInterval p_norm_enclosure(const QVecN& v, const Exponent& p, int bits = 60);

/// |1 - ||v||| <= tol.
bool is_unit(const VecN& v, const Exponent& p, double tol = kDefaultTol);
/// Exact unit test (norm_power == 1).
bool is_unit(const QVecN& v, const Exponent& p);

DerivPair one_sided_derivative(const VecN& x, const VecN& y, const Exponent& p);
ExactDerivPair one_sided_derivative(const QVecN& x, const QVecN& y, const Exponent& p);

/// j(x)_i = sign(x_i) |x_i|^(p-1), the direction of the unique norming
/// functional at x for 1 < p < inf. Throws UnsupportedExponent for p in {1, inf}.
VecN support_coords(const VecN& x, const Exponent& p);
/// Exact j(x) for integer p >= 2.
QVecN support_coords(const QVecN& x, const Exponent& p);

/// Finite-difference bracket ((||x|| - ||x - h y||)/h, (||x + h y|| - ||x||)/h).
/// By convexity the result brackets the true one-sided derivatives.
DerivPair deriv_oracle(const VecN& x, const VecN& y, const Exponent& p, double h);

/// sign(t) |t|^e for a double e, with an integer fast path.
double signed_power(double t, double e);
/// |t|^p for finite p with an integer fast path.
double abs_power(double t, const Exponent& p);

}  // namespace banach
