#include "banach/orthogonality.hpp"

#include <cmath>
#include <limits>

#include "banach/errors.hpp"

namespace banach {

namespace {

/// Monotone surrogate of the norm: sum |v_i|^p for finite p, max |v_i| for inf.
double norm_surrogate(const VecN& v, const Exponent& p) {
  if (p.is_infinity()) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::fabs(c));
    return m;
  }
  double s = 0.0;
  for (double c : v) s += abs_power(c, p);
  return s;
}

double surrogate_of_norm(double norm, const Exponent& p) {
  if (p.is_infinity()) return norm;
  return abs_power(norm, p);
}

template <class T>
Vector<T> project_out(const Vector<T>& r, const Vector<T>& f) {
  T ff = pairing(f, f);
  if (ff == 0) return r;
  T coef = pairing(f, r) / ff;
  Vector<T> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] - coef * f[i];
  return out;
}

VecN random_direction(std::size_t n, Rng& rng) {
  VecN g = rng.gaussian_vector(n);
  while (g.is_zero()) g = rng.gaussian_vector(n);
  return g;
}

}  // namespace

OrthVerdict bj_orthogonal(const VecN& x, const VecN& y, const Exponent& p, double tol) {
  if (x.is_zero()) throw DomainError("bj_orthogonal needs x != 0");
  OrthVerdict v;
  v.deriv = one_sided_derivative(x, y, p);
  v.method = OrthMethod::Derivative;
  if (y.is_zero()) {
    v.orthogonal = true;
    return v;
  }
  const double slack = tol * p_norm(y, p);
  v.orthogonal = v.deriv.d_minus <= slack && v.deriv.d_plus >= -slack;
  return v;
}

OrthVerdict bj_orthogonal(const QVecN& x, const QVecN& y, const Exponent& p) {
  if (!p.exact_capable()) return bj_orthogonal(to_double(x), to_double(y), p);
  if (x.is_zero()) throw DomainError("bj_orthogonal needs x != 0");
  ExactDerivPair d = one_sided_derivative(x, y, p);
  OrthVerdict v;
  v.deriv = d.to_double();
  v.method = OrthMethod::Exact;
  v.orthogonal = d.d_minus <= 0 && d.d_plus >= 0;
  return v;
}

bool bj_bruteforce(const VecN& x, const VecN& y, const Exponent& p, double lo, double hi, int steps, double tol) {
  if (!(lo < 0 && 0 < hi) || steps < 2) throw DomainError("bj_bruteforce needs lo < 0 < hi and steps >= 2");
  if (x.is_zero()) throw DomainError("bj_bruteforce needs x != 0");
  const double threshold = surrogate_of_norm(p_norm(x, p) * (1.0 - tol), p);
  VecN probe(x.size());
  auto eval = [&](double t) {
    for (std::size_t i = 0; i < x.size(); ++i) probe[i] = x[i] + t * y[i];
    return norm_surrogate(probe, p);
  };

  double best = std::numeric_limits<double>::infinity();
  double a = lo;
  double b = hi;
  for (int round = 0; round < 3; ++round) {
    const double step = (b - a) / (steps - 1);
    int arg = 0;
    for (int i = 0; i < steps; ++i) {
      double val = eval(a + step * i);
      if (val < best) {
        best = val;
        arg = i;
      }
    }
    const double centre = a + step * arg;
    a = std::max(lo, centre - step);
    b = std::min(hi, centre + step);
  }
  return best >= threshold;
}

bool in_plus(const VecN& x, const VecN& y, const Exponent& p, double tol) {
  if (x.is_zero()) throw DomainError("in_plus needs x != 0");
  if (y.is_zero()) return true;
  return one_sided_derivative(x, y, p).d_plus >= -tol * p_norm(y, p);
}

bool in_minus(const VecN& x, const VecN& y, const Exponent& p, double tol) {
  if (x.is_zero()) throw DomainError("in_minus needs x != 0");
  if (y.is_zero()) return true;
  return one_sided_derivative(x, y, p).d_minus <= tol * p_norm(y, p);
}

bool in_plus(const QVecN& x, const QVecN& y, const Exponent& p) {
  if (!p.exact_capable()) return in_plus(to_double(x), to_double(y), p);
  if (x.is_zero()) throw DomainError("in_plus needs x != 0");
  return one_sided_derivative(x, y, p).d_plus >= 0;
}

bool in_minus(const QVecN& x, const QVecN& y, const Exponent& p) {
  if (!p.exact_capable()) return in_minus(to_double(x), to_double(y), p);
  if (x.is_zero()) throw DomainError("in_minus needs x != 0");
  return one_sided_derivative(x, y, p).d_minus <= 0;
}

VecN sample_norming_functional(const VecN& x, const Exponent& p, Rng& rng) {
  if (x.is_zero()) throw DomainError("norming functional needs x != 0");
  if (p.smooth()) return support_coords(x, p);
  VecN f(x.size());
  if (p.is_one()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0.0) {
        f[i] = x[i] > 0 ? 1.0 : -1.0;
      } else {
        const long pick = rng.uniform_int(0, 2);
        f[i] = pick == 0 ? -1.0 : pick == 1 ? 1.0 : rng.uniform(-1.0, 1.0);
      }
    }
    return f;
  }
  const double m = p_norm(x, p);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::fabs(x[i]) == m) active.push_back(i);
  }
  if (rng.uniform_int(0, 2) == 0) {
    std::size_t i = active[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(active.size()) - 1))];
    f[i] = x[i] > 0 ? 1.0 : -1.0;
    return f;
  }
  double total = 0.0;
  for (std::size_t i : active) {
    const double w = -std::log(1.0 - rng.uniform01());
    f[i] = x[i] > 0 ? w : -w;
    total += w;
  }
  for (std::size_t i : active) f[i] /= total;
  return f;
}

QVecN sample_norming_functional(const QVecN& x, const Exponent& p, Rng& rng) {
  if (x.is_zero()) throw DomainError("norming functional needs x != 0");
  if (p.smooth()) return support_coords(x, p);
  QVecN f(x.size());
  if (p.is_one()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0) {
        f[i] = x[i] > 0 ? 1 : -1;
      } else {
        const long pick = rng.uniform_int(0, 2);
        f[i] = pick == 0 ? rat(-1) : pick == 1 ? rat(1) : rat(rng.uniform_int(-7, 7), 8);
      }
    }
    return f;
  }
  const Rational m = norm_power(x, p);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (abs(x[i]) == m) active.push_back(i);
  }
  if (rng.uniform_int(0, 2) == 0) {
    std::size_t i = active[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(active.size()) - 1))];
    f[i] = x[i] > 0 ? 1 : -1;
    return f;
  }
  long total = 0;
  std::vector<long> weights(active.size());
  while (total == 0) {
    total = 0;
    for (auto& w : weights) {
      w = rng.uniform_int(0, 8);
      total += w;
    }
  }
  for (std::size_t k = 0; k < active.size(); ++k) {
    Rational w = rat(weights[k], total);
    f[active[k]] = x[active[k]] > 0 ? w : Rational(-w);
  }
  return f;
}

VecN sample_orthogonal(const VecN& x, const Exponent& p, Rng& rng) {
  VecN f = sample_norming_functional(x, p, rng);
  return project_out(random_direction(x.size(), rng), f);
}

QVecN sample_orthogonal(const QVecN& x, const Exponent& p, Rng& rng) {
  QVecN f = sample_norming_functional(x, p, rng);
  QVecN r = rng.rational_vector(x.size(), 16, 8);
  while (r.is_zero()) r = rng.rational_vector(x.size(), 16, 8);
  return project_out(r, f);
}

namespace {

// For p in {1, inf}, m -> ||v - m x|| is piecewise linear and convex, so its
// minimum sits at a breakpoint. Solving in rationals puts y exactly on the kink;
// a float bisection only gets next to it, where both one-sided slopes agree.
VecN polyhedral_reverse(const VecN& v, const VecN& x, const Exponent& p) {
  const QVecN qv = to_rational(v);
  const QVecN qx = to_rational(x);
  std::vector<Rational> cand;
  for (std::size_t i = 0; i < qx.size(); ++i) {
    if (qx[i] != 0) cand.push_back(qv[i] / qx[i]);
    if (!p.is_infinity()) continue;
    for (std::size_t j = i + 1; j < qx.size(); ++j) {
      for (int s : {1, -1}) {
        const Rational den = qx[i] - s * qx[j];
        if (den != 0) cand.push_back((qv[i] - s * qv[j]) / den);
      }
    }
  }
  QVecN best = qv;
  Rational best_norm = norm_power(qv, p);
  for (const auto& m : cand) {
    QVecN y = qv - m * qx;
    Rational n = norm_power(y, p);
    if (n < best_norm) {
      best_norm = n;
      best = std::move(y);
    }
  }
  return to_double(best);
}

}  // namespace

VecN sample_reverse_orthogonal(const VecN& x, const Exponent& p, Rng& rng) {
  if (x.is_zero()) throw DomainError("sample_reverse_orthogonal needs x != 0");
  const VecN v = random_direction(x.size(), rng);
  if (p.is_one() || p.is_infinity()) return polyhedral_reverse(v, x, p);
  const VecN minus_x = -x;
  // ||v - m x|| >= ||x|| (|m| - ||v||/||x||), so the minimiser lies in this bracket.
  const double reach = 2.0 * p_norm(v, p) / p_norm(x, p) + 1.0;
  double lo = -reach;
  double hi = reach;
  VecN y = v;
  for (int iter = 0; iter < 200 && lo < hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    y = v - mid * x;
    if (y.is_zero()) return y;
    DerivPair d = one_sided_derivative(y, minus_x, p);
    if (d.d_plus < 0) {
      lo = mid;
    } else if (d.d_minus > 0) {
      hi = mid;
    } else {
      break;
    }
    if (mid == lo && mid == hi) break;
  }
  return y;
}

SymmetryVerdict check_left_symmetric(const VecN& x, const Exponent& p, int n, int samples, std::uint64_t seed) {
  if (x.is_zero()) throw DomainError("check_left_symmetric needs x != 0");
  if (static_cast<int>(x.size()) != n) throw DomainError("dimension of x does not match n");
  Rng rng(seed);
  SymmetryVerdict verdict;
  for (int s = 0; s < samples; ++s) {
    VecN y = sample_orthogonal(x, p, rng);
    if (y.is_zero() || !bj_orthogonal(x, y, p).orthogonal) continue;
    ++verdict.tested;
    if (!bj_orthogonal(y, x, p).orthogonal) {
      verdict.status = SymmetryStatus::Refuted;
      verdict.witness = y;
      return verdict;
    }
  }
  return verdict;
}

SymmetryVerdict check_right_symmetric(const VecN& x, const Exponent& p, int n, int samples, std::uint64_t seed) {
  if (x.is_zero()) throw DomainError("check_right_symmetric needs x != 0");
  if (static_cast<int>(x.size()) != n) throw DomainError("dimension of x does not match n");
  Rng rng(seed);
  SymmetryVerdict verdict;
  for (int s = 0; s < samples; ++s) {
    VecN y = sample_reverse_orthogonal(x, p, rng);
    if (y.is_zero() || !bj_orthogonal(y, x, p).orthogonal) continue;
    ++verdict.tested;
    if (!bj_orthogonal(x, y, p).orthogonal) {
      verdict.status = SymmetryStatus::Refuted;
      verdict.witness = y;
      return verdict;
    }
  }
  return verdict;
}

}  // namespace banach
