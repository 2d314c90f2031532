#include "banach/space_core.hpp"

#include <quadmath.h>

#include <cmath>
#include <limits>

#include "banach/errors.hpp"

namespace banach {

namespace {

void require_finite(const VecN& v) {
  for (double c : v) {
    if (!std::isfinite(c)) throw DomainError("non-finite coordinate");
  }
}

void require_same_size(const VecN& x, const VecN& y) {
  if (x.size() != y.size()) throw DomainError("dimension mismatch");
}

void require_same_size(const QVecN& x, const QVecN& y) {
  if (x.size() != y.size()) throw DomainError("dimension mismatch");
}

double int_power(double t, int n) {
  double result = 1.0;
  double base = t;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

}  // namespace

double abs_power(double t, const Exponent& p) {
  double a = std::fabs(t);
  if (p.is_integer()) return int_power(a, p.integer_value());
  return std::pow(a, p.value());
}

double signed_power(double t, double e) {
  if (t == 0.0) return 0.0;
  double a = std::fabs(t);
  double mag = (e == std::floor(e) && e >= 0 && e < 64) ? int_power(a, static_cast<int>(e)) : std::pow(a, e);
  return t < 0 ? -mag : mag;
}

double p_norm(const VecN& v, const Exponent& p) {
  if (v.size() == 0) throw DomainError("vector must have at least one coordinate");
  require_finite(v);
  double m = 0.0;
  for (double c : v) m = std::max(m, std::fabs(c));
  if (p.is_infinity() || m == 0.0) return m;
  if (p.is_one()) {
    double s = 0.0;
    for (double c : v) s += std::fabs(c);
    return s;
  }
  // Scale by the max coordinate so large entries do not overflow the p-th power.
  double s = 0.0;
  for (double c : v) s += abs_power(c / m, p);
  if (p.is_integer() && p.integer_value() == 2) return m * std::sqrt(s);
  return m * std::pow(s, 1.0 / p.value());
}

Rational norm_power(const QVecN& v, const Exponent& p) {
  if (v.size() == 0) throw DomainError("vector must have at least one coordinate");
  if (p.is_infinity()) {
    Rational m(0);
    for (const auto& c : v) m = std::max(m, Rational(abs(c)));
    return m;
  }
  const int q = p.integer_value();
  Rational s(0);
  for (const auto& c : v) s += pow(Rational(abs(c)), static_cast<unsigned>(q));
  return s;
}

QInterval p_norm_enclosure(const QVecN& v, const Exponent& p, int bits) {
  Rational n = norm_power(v, p);
  if (p.is_infinity() || p.is_one() || n == 0) return QInterval(n);
  const unsigned q = static_cast<unsigned>(p.integer_value());
  double approx = std::pow(n.get_d(), 1.0 / q);
  Rational lo = rat_from_double(approx * (1 - 1e-12));
  Rational hi = rat_from_double(approx * (1 + 1e-12));
  while (pow(lo, q) > n) lo /= 2;
  while (pow(hi, q) < n) hi *= 2;
  Rational target(1);
  mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), static_cast<unsigned long>(bits));
  if (hi > 1) target *= hi;
  while (hi - lo > target) {
    Rational mid = (lo + hi) / 2;
    if (pow(mid, q) <= n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return QInterval(lo, hi);
}

bool is_unit(const VecN& v, const Exponent& p, double tol) { return std::fabs(p_norm(v, p) - 1.0) <= tol; }

bool is_unit(const QVecN& v, const Exponent& p) { return norm_power(v, p) == 1; }

DerivPair one_sided_derivative(const VecN& x, const VecN& y, const Exponent& p) {
  require_same_size(x, y);
  require_finite(x);
  require_finite(y);
  if (x.is_zero()) throw DomainError("one-sided derivative needs x != 0");
  if (y.is_zero()) return {0.0, 0.0};

  if (p.is_one()) {
    double smooth_part = 0.0;
    double kink_part = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0.0) {
        smooth_part += (x[i] > 0 ? y[i] : -y[i]);
      } else {
        kink_part += std::fabs(y[i]);
      }
    }
    return {smooth_part - kink_part, smooth_part + kink_part};
  }

  if (p.is_infinity()) {
    const double m = p_norm(x, p);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::fabs(x[i]) != m) continue;
      double v = x[i] > 0 ? y[i] : -y[i];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return {lo, hi};
  }

  // Smooth case: ||x||^(1-p) sum_i j(x)_i y_i, evaluated on x / ||x|| to keep
  // the powers in range.
  const double norm = p_norm(x, p);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += signed_power(x[i] / norm, p.value() - 1.0) * y[i];
  return {acc, acc};
}

ExactDerivPair one_sided_derivative(const QVecN& x, const QVecN& y, const Exponent& p) {
  require_same_size(x, y);
  if (x.is_zero()) throw DomainError("one-sided derivative needs x != 0");
  ExactDerivPair out;
  if (y.is_zero()) return out;

  if (p.is_one()) {
    Rational smooth_part(0);
    Rational kink_part(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0) {
        smooth_part += (x[i] > 0 ? Rational(y[i]) : Rational(-y[i]));
      } else {
        kink_part += abs(y[i]);
      }
    }
    out.d_minus = smooth_part - kink_part;
    out.d_plus = smooth_part + kink_part;
    return out;
  }

  if (p.is_infinity()) {
    const Rational m = norm_power(x, p);
    bool first = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (abs(x[i]) != m) continue;
      Rational v = x[i] > 0 ? Rational(y[i]) : Rational(-y[i]);
      if (first || v < out.d_minus) out.d_minus = v;
      if (first || v > out.d_plus) out.d_plus = v;
      first = false;
    }
    return out;
  }

  const int q = p.integer_value();
  QVecN j = support_coords(x, p);
  Rational acc = pairing(j, y);
  out.d_minus = acc;
  out.d_plus = acc;
  out.scale = std::pow(norm_power(x, p).get_d(), (1.0 - q) / q);
  return out;
}

VecN support_coords(const VecN& x, const Exponent& p) {
  if (!p.smooth()) throw UnsupportedExponent("support_coords needs 1 < p < inf, got p = " + p.to_string());
  require_finite(x);
  if (x.is_zero()) throw DomainError("support_coords needs x != 0");
  VecN j(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) j[i] = signed_power(x[i], p.value() - 1.0);
  return j;
}

QVecN support_coords(const QVecN& x, const Exponent& p) {
  if (!p.smooth() || !p.is_integer()) {
    throw UnsupportedExponent("exact support_coords needs integer p >= 2, got p = " + p.to_string());
  }
  if (x.is_zero()) throw DomainError("support_coords needs x != 0");
  const unsigned e = static_cast<unsigned>(p.integer_value() - 1);
  QVecN j(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational mag = pow(Rational(abs(x[i])), e);
    j[i] = x[i] < 0 ? Rational(-mag) : mag;
  }
  return j;
}

namespace {

using quad = __float128;

// ||v||_p in quad precision; the difference quotient at h = 1e-8 loses about
// eps / h relative accuracy, which double cannot afford.
quad quad_norm(const std::vector<quad>& v, const Exponent& p) {
  quad acc = 0;
  for (quad c : v) {
    const quad a = fabsq(c);
    if (p.is_infinity()) {
      acc = a > acc ? a : acc;
    } else if (p.is_integer()) {
      quad t = 1;
      for (int k = 0; k < p.integer_value(); ++k) t *= a;
      acc += t;
    } else {
      acc += a == 0 ? quad(0) : powq(a, p.value());
    }
  }
  if (p.is_infinity() || p.is_one()) return acc;
  if (p.is_integer() && p.integer_value() == 2) return sqrtq(acc);
  return acc == 0 ? quad(0) : powq(acc, 1 / quad(p.value()));
}

}  // namespace

DerivPair deriv_oracle(const VecN& x, const VecN& y, const Exponent& p, double h) {
  require_same_size(x, y);
  require_finite(x);
  require_finite(y);
  if (x.is_zero()) throw DomainError("deriv_oracle needs x != 0");
  if (!(h > 0)) throw DomainError("deriv_oracle needs h > 0");
  std::vector<quad> mid(x.size());
  std::vector<quad> fwd(x.size());
  std::vector<quad> bwd(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mid[i] = x[i];
    fwd[i] = quad(x[i]) + quad(h) * quad(y[i]);
    bwd[i] = quad(x[i]) - quad(h) * quad(y[i]);
  }
  const quad base = quad_norm(mid, p);
  return {static_cast<double>((base - quad_norm(bwd, p)) / h), static_cast<double>((quad_norm(fwd, p) - base) / h)};
}

}  // namespace banach
