#include "banach/operators.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "banach/errors.hpp"
#include "banach/random.hpp"

namespace banach {

namespace {

using quad = __float128;

long double pow_f(long double x, long double e) { return std::pow(x, e); }
quad pow_f(quad x, quad e) { return powq(x, e); }
long double sqrt_f(long double x) { return std::sqrt(x); }
quad sqrt_f(quad x) { return sqrtq(x); }

template <class F>
F abs_f(F x) {
  return x < 0 ? -x : x;
}

template <class F>
F abs_pow(F t, const Exponent& p) {
  F a = abs_f(t);
  if (p.is_integer()) {
    int n = p.integer_value();
    F result = 1;
    F base = a;
    while (n > 0) {
      if (n & 1) result *= base;
      base *= base;
      n >>= 1;
    }
    return result;
  }
  if (a == 0) return 0;
  return pow_f(a, static_cast<F>(p.value()));
}

/// Second coordinate of the chart point: (1 - |t|^p)^(1/p).
template <class F>
F chart_phi(F t, const Exponent& p) {
  if (p.is_infinity()) return 1;
  if (p.is_one()) return 1 - abs_f(t);
  F rest = 1 - abs_pow(t, p);
  if (rest <= 0) return 0;
  if (p.is_integer() && p.integer_value() == 2) return sqrt_f(rest);
  return pow_f(rest, 1 / static_cast<F>(p.value()));
}

/// Monotone surrogate of ||(u, v)||: sum of p-th powers, or max for inf.
template <class F>
F surrogate(F u, F v, const Exponent& p) {
  if (p.is_infinity()) return std::max(abs_f(u), abs_f(v));
  return abs_pow(u, p) + abs_pow(v, p);
}

template <class F>
F surrogate_to_norm(F s, const Exponent& p) {
  if (p.is_infinity() || p.is_one() || s <= 0) return s;
  if (p.is_integer() && p.integer_value() == 2) return sqrt_f(s);
  return pow_f(s, 1 / static_cast<F>(p.value()));
}

/// Half-width of each chart. Beyond |t| = 2^(-1/p) a chart leaves its own
/// cone; the 2% overlap keeps diagonal points interior to both charts.
double chart_extent(const Exponent& p) {
  if (p.is_infinity()) return 1.0;
  return std::min(0.999, 1.02 * std::pow(2.0, -1.0 / p.value()));
}

template <class F>
struct ChartEval {
  F a, b, c, d;
  Exponent p;
  int chart;

  std::pair<F, F> point(F t) const {
    F phi = chart_phi(t, p);
    return chart == 0 ? std::pair<F, F>{phi, t} : std::pair<F, F>{t, phi};
  }
  F operator()(F t) const {
    auto [x, y] = point(t);
    return surrogate(a * x + b * y, c * x + d * y, p);
  }
};

struct Refined {
  double norm;
  VecN point;
};

VecN canonical(VecN v) {
  if (v[0] < 0 || (v[0] == 0 && v[1] < 0)) v = -v;
  return v;
}

double antipodal_distance(const VecN& u, const VecN& v) {
  double plus = std::hypot(u[0] - v[0], u[1] - v[1]);
  double minus = std::hypot(u[0] + v[0], u[1] + v[1]);
  return std::min(plus, minus);
}

/// Greedy clustering in value order; keeps the best representative per cluster.
std::vector<Refined> cluster(std::vector<Refined> items, double radius) {
  std::stable_sort(items.begin(), items.end(), [](const Refined& l, const Refined& r) { return l.norm > r.norm; });
  std::vector<Refined> out;
  for (auto& item : items) {
    bool merged = false;
    for (const auto& kept : out) {
      if (antipodal_distance(kept.point, item.point) <= radius) {
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(std::move(item));
  }
  return out;
}

std::vector<Refined> refine_chart(const Operator2<double>& t, const Exponent& p, int chart, int grid, int iters,
                                  std::vector<long double>& all_values) {
  const double tau = chart_extent(p);
  ChartEval<long double> coarse{t.a, t.b, t.c, t.d, p, chart};
  ChartEval<quad> fine{t.a, t.b, t.c, t.d, p, chart};

  std::vector<long double> ts(static_cast<std::size_t>(grid));
  std::vector<long double> vals(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    ts[i] = -tau + 2.0L * tau * i / (grid - 1);
    vals[i] = coarse(ts[i]);
    all_values.push_back(vals[i]);
  }

  std::vector<Refined> out;
  int i = 0;
  while (i < grid) {
    int j = i;
    while (j + 1 < grid && vals[j + 1] == vals[i]) ++j;
    const bool left_ok = i == 0 || vals[i - 1] < vals[i];
    const bool right_ok = j == grid - 1 || vals[j + 1] < vals[j];
    if (left_ok && right_ok) {
      const int li = std::max(0, i - 1);
      const int hi_i = std::min(grid - 1, j + 1);
      quad lo = static_cast<quad>(ts[li]);
      quad hi = static_cast<quad>(ts[hi_i]);
      const quad lo0 = lo;
      const quad hi0 = hi;
      for (int it = 0; it < iters; ++it) {
        quad m1 = lo + (hi - lo) / 3;
        quad m2 = hi - (hi - lo) / 3;
        if (fine(m1) < fine(m2)) {
          lo = m1;
        } else {
          hi = m2;
        }
      }
      quad best_t = (lo + hi) / 2;
      quad best_v = fine(best_t);
      const quad grid_t = static_cast<quad>(ts[(i + j) / 2]);
      if (fine(grid_t) > best_v) {
        best_t = grid_t;
        best_v = fine(grid_t);
      }
      // A maximum that ran into its bracket edge lies in a neighbouring
      // bracket (or, for finite p, in the overlapping chart).
      // A maximum that ran into an interior bracket edge belongs to the
      // neighbouring cell. At a chart end it is kept only for p = inf, where
      // the ends are corners; for finite p the other chart covers it.
      const quad edge_eps = (hi0 - lo0) * 1e-6;
      const bool keep_ends = p.is_infinity();
      const bool at_lo = best_t - lo0 <= edge_eps && (li != i || !keep_ends);
      const bool at_hi = hi0 - best_t <= edge_eps && (hi_i != j || !keep_ends);
      if (!at_lo && !at_hi) {
        auto [x, y] = fine.point(best_t);
        out.push_back({static_cast<double>(surrogate_to_norm(best_v, p)),
                       canonical(VecN{static_cast<double>(x), static_cast<double>(y)})});
      }
    }
    i = j + 1;
  }
  return out;
}

}  // namespace

QOperator2 inverse(const QOperator2& t) {
  Rational det = t.det();
  if (det == 0) throw DomainError("operator is singular");
  return {t.d / det, -t.b / det, -t.c / det, t.a / det};
}

NormEstimate operator_norm_numeric(const Operator2<double>& t, const Exponent& p, int grid, int refine_iters,
                                   double tol) {
  if (grid < 64) throw DomainError("operator_norm_numeric needs grid >= 64");
  for (double e : {t.a, t.b, t.c, t.d}) {
    if (!std::isfinite(e)) throw DomainError("non-finite operator entry");
  }
  NormEstimate est;
  std::vector<long double> all_values;
  std::vector<Refined> found;
  for (int chart = 0; chart < 2; ++chart) {
    auto part = refine_chart(t, p, chart, grid, refine_iters, all_values);
    found.insert(found.end(), part.begin(), part.end());
  }

  const auto [min_it, max_it] = std::minmax_element(all_values.begin(), all_values.end());
  const long double grid_max = surrogate_to_norm(*max_it, p);
  const long double grid_min = surrogate_to_norm(*min_it, p);
  if (grid_max - grid_min <= tol * grid_max) {
    est.value = static_cast<double>(grid_max);
    est.whole_sphere = true;
    const double tau = chart_extent(p);
    for (int chart = 0; chart < 2; ++chart) {
      ChartEval<long double> eval{t.a, t.b, t.c, t.d, p, chart};
      for (int i = 0; i < grid; ++i) {
        auto [x, y] = eval.point(-tau + 2.0L * tau * i / (grid - 1));
        est.argmax.push_back(canonical(VecN{static_cast<double>(x), static_cast<double>(y)}));
      }
    }
    return est;
  }

  double best = 0.0;
  for (const auto& r : found) best = std::max(best, r.norm);
  best = std::max(best, static_cast<double>(grid_max));
  est.value = best;
  std::vector<Refined> near;
  for (const auto& r : found) {
    if (r.norm >= best * (1.0 - tol)) near.push_back(r);
  }
  for (auto& r : cluster(std::move(near), 1e-6)) est.argmax.push_back(std::move(r.point));
  return est;
}

double spectral_norm(const Operator2<double>& t) {
  const double s = t.a * t.a + t.b * t.b + t.c * t.c + t.d * t.d;
  const double det = t.det();
  const double disc = std::max(0.0, s * s - 4.0 * det * det);
  return std::sqrt(0.5 * (s + std::sqrt(disc)));
}

double operator_norm(const Operator2<double>& t, const Exponent& p) {
  if (p.is_one()) return std::max(std::fabs(t.a) + std::fabs(t.c), std::fabs(t.b) + std::fabs(t.d));
  if (p.is_infinity()) return std::max(std::fabs(t.a) + std::fabs(t.b), std::fabs(t.c) + std::fabs(t.d));
  if (p.is_integer() && p.integer_value() == 2) return spectral_norm(t);
  return operator_norm_numeric(t, p).value;
}

AttainmentSet mt_numeric(const Operator2<double>& t, const Exponent& p, double tol) {
  if (t.is_zero()) throw DegenerateOperator("M_T is only defined here for T != 0");
  AttainmentSet set;
  set.certificate = {CertificateKind::Numeric, tol};
  if (auto s = is_isometry_multiple(t, p)) {
    set.norm_value = *s;
    set.whole_sphere = true;
    return set;
  }
  NormEstimate est = operator_norm_numeric(t, p, kDefaultGrid, kDefaultRefineIters, tol);
  set.norm_value = est.value;
  if (est.whole_sphere) {
    set.whole_sphere = true;
    return set;
  }
  for (const auto& v : est.argmax) {
    set.points.push_back(v);
    set.points.push_back(-v);
  }
  return set;
}

PolyhedralAttainment polyhedral_attainment(const QOperator2& t, const Exponent& p) {
  if (!(p.is_one() || p.is_infinity())) {
    throw UnsupportedExponent("polyhedral attainment needs p in {1, inf}, got " + p.to_string());
  }
  if (t.is_zero()) throw DegenerateOperator("M_T is only defined here for T != 0");
  // Vertices of the half sphere in cyclic order; the last edge closes onto
  // the antipode of the first vertex.
  std::vector<QVecN> verts = p.is_infinity() ? std::vector<QVecN>{{rat(1), rat(1)}, {rat(-1), rat(1)}}
                                             : std::vector<QVecN>{{rat(1), rat(0)}, {rat(0), rat(1)}};
  auto value = [&](const QVecN& v) { return norm_power(t.apply(v), p); };
  std::vector<Rational> vals;
  for (const auto& v : verts) vals.push_back(value(v));
  PolyhedralAttainment out;
  out.norm = *std::max_element(vals.begin(), vals.end());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (vals[i] == out.norm) {
      out.vertices.push_back(verts[i]);
      out.vertices.push_back(-verts[i]);
    }
  }
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const QVecN& from = verts[i];
    const QVecN to = i + 1 < verts.size() ? verts[i + 1] : QVecN(-verts[0]);
    const Rational to_val = i + 1 < verts.size() ? vals[i + 1] : vals[0];
    if (vals[i] != out.norm || to_val != out.norm) continue;
    QVecN mid{(from[0] + to[0]) / 2, (from[1] + to[1]) / 2};
    if (value(mid) == out.norm) out.edges.emplace_back(from, to);
  }
  return out;
}

KernelInfo<double> kernel(const Operator2<double>& t, double tol) {
  KernelInfo<double> info;
  const double scale = std::max({std::fabs(t.a), std::fabs(t.b), std::fabs(t.c), std::fabs(t.d)});
  if (scale == 0.0) {
    info.kind = KernelKind::Whole;
    return info;
  }
  if (std::fabs(t.det()) > tol * scale * scale) return info;
  info.kind = KernelKind::Line;
  VecN dir = std::hypot(t.a, t.b) >= std::hypot(t.c, t.d) ? VecN{t.b, -t.a} : VecN{t.d, -t.c};
  const double len = std::hypot(dir[0], dir[1]);
  info.direction = VecN{dir[0] / len, dir[1] / len};
  return info;
}

KernelInfo<Rational> kernel(const QOperator2& t) {
  KernelInfo<Rational> info;
  if (t.is_zero()) {
    info.kind = KernelKind::Whole;
    return info;
  }
  if (t.det() != 0) return info;
  info.kind = KernelKind::Line;
  info.direction = (t.a != 0 || t.b != 0) ? QVecN{t.b, Rational(-t.a)} : QVecN{t.d, Rational(-t.c)};
  return info;
}

std::optional<double> is_isometry_multiple(const Operator2<double>& t, const Exponent& p, double tol) {
  const double scale = std::max({std::fabs(t.a), std::fabs(t.b), std::fabs(t.c), std::fabs(t.d)});
  if (scale == 0.0) return std::nullopt;
  auto close = [&](double u, double v) { return std::fabs(u - v) <= tol * scale; };
  if (p.is_integer() && p.integer_value() == 2) {
    const double c1 = t.a * t.a + t.c * t.c;
    const double c2 = t.b * t.b + t.d * t.d;
    if (std::fabs(c1 - c2) <= tol * scale * scale && std::fabs(t.a * t.b + t.c * t.d) <= tol * scale * scale) {
      return std::sqrt(0.5 * (c1 + c2));
    }
    return std::nullopt;
  }
  if (close(t.b, 0) && close(t.c, 0) && close(std::fabs(t.a), std::fabs(t.d))) return std::fabs(t.a);
  if (close(t.a, 0) && close(t.d, 0) && close(std::fabs(t.b), std::fabs(t.c))) return std::fabs(t.b);
  return std::nullopt;
}

std::optional<double> is_isometry_multiple(const QOperator2& t, const Exponent& p) {
  if (t.is_zero()) return std::nullopt;
  if (p.is_integer() && p.integer_value() == 2) {
    Rational c1 = t.a * t.a + t.c * t.c;
    Rational c2 = t.b * t.b + t.d * t.d;
    if (c1 == c2 && t.a * t.b + t.c * t.d == 0) return std::sqrt(c1.get_d());
    return std::nullopt;
  }
  if (t.b == 0 && t.c == 0 && abs(t.a) == abs(t.d)) return std::fabs(t.a.get_d());
  if (t.a == 0 && t.d == 0 && abs(t.b) == abs(t.c)) return std::fabs(t.b.get_d());
  return std::nullopt;
}

double daugavet_residual(const Operator2<double>& t, const Exponent& p) {
  return 1.0 + operator_norm(t, p) - operator_norm(Operator2<double>::identity() + t, p);
}

bool invariant_line_check(const Operator2<double>& t, const VecN& x0, const Exponent& p, double tol) {
  if (!p.smooth()) throw UnsupportedExponent("x0^⊥ is a line only for 1 < p < inf");
  VecN j = support_coords(x0, p);
  VecN w{-j[1], j[0]};
  VecN tw = t.apply(w);
  // Relative to ||T|| |w|^2, so that T w ~ 0 (a null line) counts as invariant.
  const double scale = std::hypot(std::hypot(t.a, t.b), std::hypot(t.c, t.d)) * (w[0] * w[0] + w[1] * w[1]);
  const double cross = tw[0] * w[1] - tw[1] * w[0];
  return std::fabs(cross) <= tol * std::max(1e-300, scale);
}

bool invariant_line_check(const QOperator2& t, const QVecN& x0, const Exponent& p) {
  if (!p.smooth()) throw UnsupportedExponent("x0^⊥ is a line only for 1 < p < inf");
  QVecN j = support_coords(x0, p);
  QVecN w{Rational(-j[1]), j[0]};
  QVecN tw = t.apply(w);
  return tw[0] * w[1] - tw[1] * w[0] == 0;
}

VecN DenseOperator::apply(const VecN& v) const {
  if (v.size() != cols_) throw DomainError("dimension mismatch");
  VecN out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) acc += at(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

DenseOperator DenseOperator::drop_column(std::size_t col) const {
  DenseOperator out(rows_, cols_ - 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::size_t k = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c == col) continue;
      out.at(r, k++) = at(r, c);
    }
  }
  return out;
}

NormEstimate operator_norm_sampled(const DenseOperator& t, const Exponent& p, int samples, std::uint64_t seed,
                                   double tol) {
  Rng rng(seed);
  const std::size_t n = t.cols();
  auto normalise = [&](VecN v) {
    const double len = p_norm(v, p);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] /= len;
    return v;
  };
  auto value = [&](const VecN& v) { return p_norm(t.apply(v), p); };

  std::vector<std::pair<double, VecN>> seeds;
  for (int s = 0; s < samples; ++s) {
    VecN g = rng.gaussian_vector(n);
    if (g.is_zero()) continue;
    VecN z = normalise(g);
    seeds.emplace_back(value(z), z);
  }
  std::stable_sort(seeds.begin(), seeds.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
  if (seeds.size() > 8) seeds.resize(8);

  NormEstimate est;
  std::vector<std::pair<double, VecN>> polished;
  for (auto& [val, z] : seeds) {
    double step = 0.25;
    while (step > 1e-13) {
      bool improved = false;
      for (std::size_t k = 0; k < n; ++k) {
        for (double dir : {1.0, -1.0}) {
          VecN cand = z;
          cand[k] += dir * step;
          if (cand.is_zero()) continue;
          cand = normalise(cand);
          const double cv = value(cand);
          if (cv > val) {
            val = cv;
            z = cand;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    polished.emplace_back(val, z);
    est.value = std::max(est.value, val);
  }
  for (auto& [val, z] : polished) {
    if (val >= est.value * (1.0 - tol)) est.argmax.push_back(z);
  }
  return est;
}

}  // namespace banach
