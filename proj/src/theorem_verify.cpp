#include "banach/theorem_verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "banach/errors.hpp"
#include "banach/exact_enum.hpp"
#include "banach/orthogonality.hpp"
#include "banach/random.hpp"
#include "banach/space_core.hpp"

namespace banach {

namespace {

// ---------------------------------------------------------------- formatting

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const VecN& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + ")";
}

std::string fmt(const QVecN& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::string fmt(const Operator2<double>& t) {
  return "[[" + fmt(t.a) + ", " + fmt(t.b) + "], [" + fmt(t.c) + ", " + fmt(t.d) + "]]";
}

std::string fmt(const QOperator2& t) {
  return "[[" + to_string(t.a) + ", " + to_string(t.b) + "], [" + to_string(t.c) + ", " + to_string(t.d) + "]]";
}

// ------------------------------------------------------- points, exact or not

/// A vector with its exact coordinates when they are known.
struct Pt {
  VecN f;
  std::optional<QVecN> q;
};

Pt pt(VecN v) { return {std::move(v), std::nullopt}; }
Pt pt(const QVecN& v) { return {to_double(v), v}; }

std::string fmt(const Pt& x) { return x.q ? fmt(*x.q) : fmt(x.f); }

std::string fmt(const RandomOperator& op) { return op.exact ? fmt(*op.exact) : fmt(op.numeric); }

Pt apply(const RandomOperator& op, const Pt& x) {
  if (x.q && op.exact) return pt(op.exact->apply(*x.q));
  return pt(op.numeric.apply(x.f));
}

bool orth(const Pt& x, const Pt& y, const Exponent& p) {
  if (x.q && y.q) return bj_orthogonal(*x.q, *y.q, p).orthogonal;
  return bj_orthogonal(x.f, y.f, p).orthogonal;
}

bool plus(const Pt& x, const Pt& y, const Exponent& p) {
  if (x.q && y.q) return in_plus(*x.q, *y.q, p);
  return in_plus(x.f, y.f, p);
}

bool minus(const Pt& x, const Pt& y, const Exponent& p) {
  if (x.q && y.q) return in_minus(*x.q, *y.q, p);
  return in_minus(x.f, y.f, p);
}

/// Float-path verdicts about y at x are unreliable when a one-sided
/// derivative sits within 1e-7 ||y|| of zero; such samples are not judged.
bool ambiguous(const Pt& x, const Pt& y, const Exponent& p) {
  if (x.q && y.q) return false;
  if (y.f.is_zero()) return false;
  const DerivPair d = one_sided_derivative(x.f, y.f, p);
  const double slack = 1e-7 * p_norm(y.f, p);
  return std::fabs(d.d_minus) < slack || std::fabs(d.d_plus) < slack;
}

Pt random_vector(Rng& rng, bool exact, std::size_t n = 2) {
  if (exact) {
    QVecN v = rng.rational_vector(n, 8, 4);
    while (v.is_zero()) v = rng.rational_vector(n, 8, 4);
    return pt(v);
  }
  VecN v = rng.gaussian_vector(n);
  while (v.is_zero()) v = rng.gaussian_vector(n);
  return pt(v);
}

VecN normalised(const VecN& v, const Exponent& p) {
  const double len = p_norm(v, p);
  VecN out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / len;
  return out;
}

Pt scaled(const Pt& v, Rng& rng) {
  if (v.q) {
    Rational s = rng.rational(6, 4);
    while (s == 0) s = rng.rational(6, 4);
    return pt(QVecN(s * *v.q));
  }
  return pt(VecN(rng.uniform(0.25, 4.0) * (rng.uniform01() < 0.5 ? -1.0 : 1.0) * v.f));
}

/// A sampled part of M_T.
struct Attained {
  bool whole_sphere = false;
  double norm = 0.0;
  std::vector<Pt> points;
};

Attained attained_points(const RandomOperator& op, const Exponent& p, Rng& rng) {
  Attained out;
  if (op.exact && (p.is_one() || p.is_infinity())) {
    const PolyhedralAttainment pa = polyhedral_attainment(*op.exact, p);
    out.norm = pa.norm.get_d();
    for (const auto& v : pa.vertices) out.points.push_back(pt(v));
    for (const auto& [from, to] : pa.edges) {
      const Rational s = rat(rng.uniform_int(1, 15), 16);
      QVecN mid{(1 - s) * from[0] + s * to[0], (1 - s) * from[1] + s * to[1]};
      out.points.push_back(pt(mid));
      out.points.push_back(pt(QVecN(-mid)));
    }
    out.whole_sphere = is_isometry_multiple(*op.exact, p).has_value();
    return out;
  }
  const bool iso = op.exact ? is_isometry_multiple(*op.exact, p).has_value()
                            : is_isometry_multiple(op.numeric, p).has_value();
  if (iso) {
    out.whole_sphere = true;
    out.norm = operator_norm(op.numeric, p);
    for (int k = 0; k < 4; ++k) out.points.push_back(pt(normalised(rng.gaussian_vector(2), p)));
    return out;
  }
  const AttainmentSet set = (op.exact && p.is_integer()) ? mt_exact(*op.exact, p) : mt_numeric(op.numeric, p);
  out.norm = set.norm_value;
  for (const auto& v : set.points) out.points.push_back(pt(v));
  return out;
}

// -------------------------------------------------------------- trial driver

using Clock = std::chrono::steady_clock;

struct TrialContext {
  CheckReport& report;
  int index;
  std::uint64_t seed;
  bool replay;

  Witness witness(std::vector<std::pair<std::string, std::string>> fields) const {
    return {index, seed, std::move(fields)};
  }
  void fail(std::vector<std::pair<std::string, std::string>> fields) const {
    report.failures.push_back(witness(std::move(fields)));
  }
  void expect_violation(std::vector<std::pair<std::string, std::string>> fields) const {
    report.expected_violations.push_back(witness(std::move(fields)));
  }
};

template <class Body>
CheckReport run_trials(const std::string& id, const SuiteOptions& opt, Body body) {
  CheckReport report;
  report.suite = id;
  report.exponent = opt.p;
  const auto start = Clock::now();
  if (opt.trial_seed) {
    TrialContext ctx{report, 0, *opt.trial_seed, true};
    body(ctx);
    report.trials = 1;
  } else {
    for (int i = 0; i < opt.trials; ++i) {
      TrialContext ctx{report, i, derive_seed(opt.seed, static_cast<std::uint64_t>(i)), false};
      body(ctx);
      ++report.trials;
    }
  }
  report.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

/// Non-smooth exponents are only checked on the exact path.
EntrySpec effective_entries(const SuiteOptions& opt) {
  EntrySpec dist = opt.entries;
  if (!opt.p.smooth()) dist.kind = EntryDist::UniformRational;
  return dist;
}

RandomOperator exact_operator(const QOperator2& t) { return {to_double(t), t}; }

Rng trial_rng(const TrialContext& ctx) { return Rng(derive_seed(ctx.seed, 0x5eedULL)); }

void require(bool ok, const std::string& what) {
  if (!ok) throw UnsupportedExponent(what);
}

/// Top right singular vector of a 2x2 matrix from the symmetric eigenproblem
/// of T^t T (closed form).
VecN top_singular_vector(const Operator2<double>& t) {
  const double p = t.a * t.a + t.c * t.c;
  const double q = t.a * t.b + t.c * t.d;
  const double r = t.b * t.b + t.d * t.d;
  const double theta = 0.5 * std::atan2(2.0 * q, p - r);
  return VecN{std::cos(theta), std::sin(theta)};
}

}  // namespace

RandomOperator random_operator(std::uint64_t seed, const EntrySpec& dist,
                               const std::optional<Exponent>& avoid_isometry_for) {
  if (dist.max_den < 1 || dist.max_num < 1) throw DomainError("entry bounds must be >= 1");
  Rng rng(seed);
  for (;;) {
    if (dist.kind == EntryDist::UniformRational) {
      QOperator2 t{rng.rational(dist.max_num, dist.max_den), rng.rational(dist.max_num, dist.max_den),
                   rng.rational(dist.max_num, dist.max_den), rng.rational(dist.max_num, dist.max_den)};
      if (t.is_zero()) continue;
      if (avoid_isometry_for && is_isometry_multiple(t, *avoid_isometry_for)) continue;
      return {to_double(t), t};
    }
    Operator2<double> t{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
    if (t.is_zero()) continue;
    if (avoid_isometry_for && is_isometry_multiple(t, *avoid_isometry_for)) continue;
    return {t, std::nullopt};
  }
}

QOperator2 sup_norm_example_operator() {
  // Columns from T e1 = (T(1,1) + T(1,-1))/2 and T e2 = (T(1,1) - T(1,-1))/2.
  const QVecN t11{rat(1), rat(0)};
  const QVecN t1m1{rat(1, 2), rat(1, 2)};
  return {(t11[0] + t1m1[0]) / 2, (t11[0] - t1m1[0]) / 2, (t11[1] + t1m1[1]) / 2, (t11[1] - t1m1[1]) / 2};
}

// ------------------------------------------------------------------ pullback

CheckReport verify_pullback(const SuiteOptions& opt) {
  const Exponent p = opt.p;
  const EntrySpec dist = effective_entries(opt);
  return run_trials("pullback", opt, [&](TrialContext& ctx) {
    Rng rng = trial_rng(ctx);
    const bool example = p.is_infinity() && ctx.index == 0 && !ctx.replay;
    const RandomOperator op = example ? exact_operator(sup_norm_example_operator()) : random_operator(ctx.seed, dist);
    Attained mt = attained_points(op, p, rng);
    if (example) mt.points = {pt(QVecN{rat(1), rat(1)})};
    ctx.report.histogram[mt.whole_sphere ? -1 : static_cast<int>(mt.points.size())]++;
    for (const Pt& x : mt.points) {
      const Pt tx = apply(op, x);
      for (int s = 0; s < 3; ++s) {
        // Tx ⊥_B Ty iff f(Ty) = 0 for a norming functional f of Tx, i.e.
        // y lies in the kernel of the pulled-back functional T^t f.
        Pt y;
        if (tx.q && op.exact) {
          const QVecN g = op.exact->pullback(sample_norming_functional(*tx.q, p, rng));
          y = g.is_zero() ? random_vector(rng, true) : scaled(pt(QVecN{Rational(-g[1]), g[0]}), rng);
        } else {
          const VecN g = op.numeric.pullback(sample_norming_functional(tx.f, p, rng));
          y = g.is_zero() ? random_vector(rng, false) : scaled(pt(VecN{-g[1], g[0]}), rng);
        }
        const Pt ty = apply(op, y);
        if (!orth(tx, ty, p)) {
          ++ctx.report.skipped;
          continue;
        }
        if (!orth(x, y, p)) {
          ctx.fail({{"operator", fmt(op)}, {"x", fmt(x)}, {"y", fmt(y)}, {"Ty", fmt(ty)},
                    {"observed", "Tx ⊥ Ty but x not ⊥ y"}});
        }
      }
    }
  });
}

// --------------------------------------------------------- cone preservation

CheckReport verify_cone_preservation(const SuiteOptions& opt) {
  const Exponent p = opt.p;
  const EntrySpec dist = effective_entries(opt);
  return run_trials("cone-preservation", opt, [&](TrialContext& ctx) {
    Rng rng = trial_rng(ctx);
    const bool example = p.is_infinity() && ctx.index == 0 && !ctx.replay;
    const RandomOperator op = example ? exact_operator(sup_norm_example_operator()) : random_operator(ctx.seed, dist);
    Attained mt = attained_points(op, p, rng);
    if (example) mt.points = {pt(QVecN{rat(1), rat(1)})};
    const bool exact = op.exact && !p.smooth();
    for (const Pt& x : mt.points) {
      const Pt tx = apply(op, x);
      for (int s = 0; s < 4; ++s) {
        const Pt u = random_vector(rng, exact);
        if (ambiguous(x, u, p)) {
          ++ctx.report.skipped;
          continue;
        }
        const Pt tu = apply(op, u);
        const bool u_orth = orth(x, u, p);
        if (plus(x, u, p) && !u_orth && !(plus(tx, tu, p) && !orth(tx, tu, p))) {
          ctx.fail({{"operator", fmt(op)}, {"x", fmt(x)}, {"u", fmt(u)}, {"observed", "u in x+ \\ x⊥, Tu not in (Tx)+ \\ (Tx)⊥"}});
        }
        if (minus(x, u, p) && !u_orth && !(minus(tx, tu, p) && !orth(tx, tu, p))) {
          ctx.fail({{"operator", fmt(op)}, {"x", fmt(x)}, {"u", fmt(u)}, {"observed", "u in x- \\ x⊥, Tu not in (Tx)- \\ (Tx)⊥"}});
        }
      }
      std::vector<Pt> perps;
      if (example) {
        perps.push_back(pt(QVecN{rat(-1, 2), rat(1)}));
      } else {
        for (int s = 0; s < 2; ++s) {
          perps.push_back(x.q ? pt(sample_orthogonal(*x.q, p, rng)) : pt(sample_orthogonal(x.f, p, rng)));
        }
      }
      for (const Pt& w : perps) {
        if (w.f.is_zero()) continue;
        const Pt tw = apply(op, w);
        if (orth(tx, tw, p)) continue;
        std::vector<std::pair<std::string, std::string>> fields{
            {"operator", fmt(op)}, {"x", fmt(x)}, {"w", fmt(w)}, {"Tx", fmt(tx)}, {"Tw", fmt(tw)},
            {"observed", "x ⊥ w but Tx not ⊥ Tw"}};
        if (p.smooth()) {
          ctx.fail(std::move(fields));
        } else {
          ctx.expect_violation(std::move(fields));
        }
      }
    }
  });
}

// ----------------------------------------------- orthogonality preservation

CheckReport verify_orthogonality_preservation(const SuiteOptions& opt) {
  const Exponent p = opt.p;
  require(p.smooth(), "orthogonality-preservation needs 1 < p < inf");
  return run_trials("orthogonality-preservation", opt, [&](TrialContext& ctx) {
    Rng rng = trial_rng(ctx);
    const RandomOperator op = random_operator(ctx.seed, opt.entries);
    const Attained mt = attained_points(op, p, rng);
    for (const Pt& x : mt.points) {
      const Pt tx = apply(op, x);
      std::vector<std::pair<std::string, Pt>> ys;
      ys.emplace_back("zero", pt(VecN{0.0, 0.0}));
      ys.emplace_back("x itself", x);
      ys.emplace_back("orth_direction", scaled(pt(orth_direction(x.f, p)), rng));
      const VecN g = op.numeric.pullback(support_coords(tx.f, p));
      if (!g.is_zero()) ys.emplace_back("pullback", scaled(pt(VecN{-g[1], g[0]}), rng));
      for (int s = 0; s < 4; ++s) ys.emplace_back("random", random_vector(rng, false));
      for (const auto& [kind, y] : ys) {
        const Pt ty = apply(op, y);
        if (ambiguous(x, y, p) && kind == "random") {
          ++ctx.report.skipped;
          continue;
        }
        const bool lhs = orth(x, y, p);
        const bool rhs = orth(tx, ty, p);
        if (lhs != rhs) {
          ctx.fail({{"operator", fmt(op)}, {"x", fmt(x)}, {"y", fmt(y)}, {"sample", kind},
                    {"x ⊥ y", lhs ? "true" : "false"}, {"Tx ⊥ Ty", rhs ? "true" : "false"}});
        }
      }
    }
  });
}

// -------------------------------------------------------- kernel containment

CheckReport verify_kernel_containment(const SuiteOptions& opt) {
  const Exponent p = opt.p;
  const EntrySpec dist = effective_entries(opt);
  return run_trials("kernel-containment", opt, [&](TrialContext& ctx) {
    Rng rng = trial_rng(ctx);
    // Rank one: T = u v^t, ker T = span (v_2, -v_1).
    QVecN u = rng.rational_vector(2, dist.max_num, dist.max_den);
    QVecN v = rng.rational_vector(2, dist.max_num, dist.max_den);
    while (u.is_zero()) u = rng.rational_vector(2, dist.max_num, dist.max_den);
    while (v.is_zero()) v = rng.rational_vector(2, dist.max_num, dist.max_den);
    const RandomOperator op = exact_operator({u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]});
    const KernelInfo<Rational> ker = kernel(*op.exact);
    if (ker.kind != KernelKind::Line) {
      ctx.fail({{"operator", fmt(op)}, {"observed", "rank-one operator without a null line"}});
      return;
    }
    const Pt z = pt(ker.direction);
    const Attained mt = attained_points(op, p, rng);
    ctx.report.histogram[static_cast<int>(mt.points.size())]++;
    for (const Pt& x : mt.points) {
      const bool ok = x.q ? orth(x, z, p) : bj_orthogonal(x.f, normalised(z.f, p), p).orthogonal;
      if (!ok) ctx.fail({{"operator", fmt(op)}, {"x", fmt(x)}, {"kernel", fmt(z)}, {"observed", "x not ⊥ kernel"}});
    }
    if (!p.smooth()) return;
    // Two antipodal pairs force invertibility; a singular T has one pair.
    if (mt.points.size() > 2) {
      ctx.fail({{"operator", fmt(op)}, {"points", std::to_string(mt.points.size())},
                {"observed", "singular operator attains its norm at two pairs"}});
    }
    const RandomOperator general = random_operator(derive_seed(ctx.seed, 2), dist, p);
    const Attained mg = attained_points(general, p, rng);
    const bool singular = general.exact ? general.exact->det() == 0 : general.numeric.det() == 0.0;
    if (mg.points.size() > 2 && singular) {
      ctx.fail({{"operator", fmt(general)}, {"points", std::to_string(mg.points.size())},
                {"observed", "singular operator attains its norm at two pairs"}});
    }
  });
}

// --------------------------------------------------- Daugavet invariant line

CheckReport verify_daugavet_invariant_line(const SuiteOptions& opt) {
  const Exponent p = opt.p;
  require(p.is_integer() && p.integer_value() >= 2, "daugavet-invariant-line needs integer p >= 2");
  return run_trials("daugavet-invariant-line", opt, [&](TrialContext& ctx) {
    Rng rng = trial_rng(ctx);
    double& max_residual = ctx.report.metrics["max_residual_constructed"];

    // Constructed: T x0 = x0 and T = alpha I on x0^⊥, which attains its norm at x0.
    QVecN x0{rat(rng.uniform_int(-4, 4)), rat(rng.uniform_int(-4, 4))};
    while (x0.is_zero()) x0 = QVecN{rat(rng.uniform_int(-4, 4)), rat(rng.uniform_int(-4, 4))};
    const QVecN w = orth_direction(x0, p);
    const Rational alpha = rat(rng.uniform_int(1, 15), 16);
    const QOperator2 basis{x0[0], w[0], x0[1], w[1]};
    const QOperator2 t = basis * QOperator2{rat(1), rat(0), rat(0), alpha} * inverse(basis);
    const Operator2<double> td = to_double(t);
    const double residual = daugavet_residual(td, p);
    max_residual = std::max(max_residual, std::fabs(residual));
    std::vector<std::pair<std::string, std::string>> base{{"operator", fmt(t)}, {"x0", fmt(x0)}, {"alpha", to_string(alpha)}};
    auto fail_with = [&](const std::string& what, const std::string& value) {
      auto fields = base;
      fields.emplace_back("observed", what);
      if (!value.empty()) fields.emplace_back("value", value);
      ctx.fail(std::move(fields));
    };
    if (!(t.apply(x0) == x0)) fail_with("T x0 != x0", fmt(t.apply(x0)));
    if (!(std::fabs(residual) <= 1e-10)) fail_with("Daugavet residual above 1e-10", fmt(residual));
    if (!invariant_line_check(t, x0, p)) fail_with("x0^⊥ not invariant", "");
    const AttainmentSet mt = mt_exact(t, p);
    const VecN unit = normalised(to_double(x0), p);
    double nearest = 1e300;
    for (const auto& z : mt.points) nearest = std::min(nearest, std::hypot(z[0] - unit[0], z[1] - unit[1]));
    if (!(nearest <= 1e-9)) fail_with("x0 not in M_T", fmt(nearest));
    for (double s : {0.5, 2.0, 5.0}) {
      const double rs = daugavet_residual(s * td, p);
      if (!(std::fabs(rs) <= 1e-9 * std::max(1.0, s))) fail_with("residual not scale invariant at s = " + fmt(s), fmt(rs));
    }

    // Filtered: operators found to satisfy the equation numerically.
    Operator2<double> b;
    if (rng.uniform_int(0, 1) == 0) {
      const Rational s = rat(rng.uniform_int(1, 32), 8);
      const Rational r = s * rat(rng.uniform_int(-15, 15), 16);
      const bool swap = rng.uniform_int(0, 1) == 1;
      b = swap ? to_double(QOperator2{r, rat(0), rat(0), s}) : to_double(QOperator2{s, rat(0), rat(0), r});
    } else {
      b = random_operator(derive_seed(ctx.seed, 3), opt.entries).numeric;
    }
    if (!(daugavet_residual(b, p) < 1e-9)) {
      ++ctx.report.skipped;
      return;
    }
    const Operator2<double> unit_b = (1.0 / operator_norm(b, p)) * b;
    const AttainmentSet fixed = mt_numeric(Operator2<double>::identity() + unit_b, p);
    ctx.report.metrics["filtered_operators"] += 1.0;
    if (fixed.whole_sphere || fixed.points.empty()) {
      ctx.fail({{"operator", fmt(b)}, {"observed", "no isolated maximiser of ||(I + T) z||"}});
      return;
    }
    const VecN z = fixed.points.front();
    const VecN tz = unit_b.apply(z);
    const double drift = std::hypot(tz[0] - z[0], tz[1] - z[1]);
    if (!(drift <= 1e-6)) ctx.fail({{"operator", fmt(b)}, {"x0", fmt(z)}, {"observed", "T x0 != ||T|| x0"}, {"value", fmt(drift)}});
    if (!invariant_line_check(unit_b, z, p, 1e-6)) {
      ctx.fail({{"operator", fmt(b)}, {"x0", fmt(z)}, {"observed", "x0^⊥ not invariant"}});
    }
  });
}

// ---------------------------------------------------------------- kernel span

CheckReport verify_kernel_span(const SuiteOptions& opt) {
  const Exponent p = opt.p;
  require(p.smooth(), "kernel-span needs 1 < p < inf");
  if (opt.n != 0 && opt.n != 2 && opt.n != 3) throw DomainError("kernel-span supports n in {2, 3}");
  return run_trials("kernel-span", opt, [&](TrialContext& ctx) {
    Rng rng = trial_rng(ctx);
    const int n = opt.n != 0 ? opt.n : (ctx.index % 2 == 0 ? 2 : 3);
    const std::size_t dead = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
    VecN e(static_cast<std::size_t>(n));
    e[dead] = 1.0;
    const SymmetryVerdict right = check_right_symmetric(e, p, n, 40, derive_seed(ctx.seed, 4));
    if (right.status == SymmetryStatus::Refuted) {
      ctx.fail({{"e_i", fmt(e)}, {"witness", fmt(*right.witness)}, {"observed", "e_i not right symmetric"}});
    }

    // Bases whose vectors all nearly lie in {x_i = 0} are not judged: the
    // gap ||T|| - ||T x_j|| is then below the resolution of the norm.
    auto judge_basis = [&](const std::vector<VecN>& basis, double norm, auto&& norm_of) {
      double reach = 0.0;
      for (const auto& v : basis) reach = std::max(reach, std::fabs(v[dead]));
      if (reach < 0.25) return;
      double least = 1e300;
      for (const auto& v : basis) least = std::min(least, norm_of(v));
      if (!(least < norm * (1.0 - 1e-9))) {
        std::string s;
        for (const auto& v : basis) s += fmt(v);
        ctx.fail({{"basis", s}, {"norm", fmt(norm)}, {"min", fmt(least)}, {"observed", "min ||T x_j|| = ||T||"}});
      }
    };

    if (n == 2) {
      RandomOperator op = random_operator(ctx.seed, opt.entries);
      auto kill = [&](auto& t) {
        if (dead == 0) t.a = 0, t.c = 0;
        else t.b = 0, t.d = 0;
      };
      kill(op.numeric);
      if (op.exact) kill(*op.exact);
      if (op.numeric.is_zero()) {
        ++ctx.report.skipped;
        return;
      }
      const Attained mt = attained_points(op, p, rng);
      ctx.report.histogram[static_cast<int>(mt.points.size())]++;
      for (const Pt& x : mt.points) {
        if (!(std::fabs(x.f[dead]) <= 1e-9)) {
          ctx.fail({{"operator", fmt(op)}, {"x", fmt(x)}, {"observed", "M_T leaves the hyperplane x_i = 0"}});
        }
      }
      const VecN keep = dead == 0 ? VecN{0.0, 1.0} : VecN{1.0, 0.0};
      auto norm_of = [&](const VecN& v) { return p_norm(op.numeric.apply(v), p); };
      judge_basis({keep, normalised(rng.gaussian_vector(2), p)}, mt.norm, norm_of);
      for (int s = 0; s < 3; ++s) {
        judge_basis({normalised(rng.gaussian_vector(2), p), normalised(rng.gaussian_vector(2), p)}, mt.norm, norm_of);
      }
      return;
    }

    DenseOperator t(3, 3);
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) t.at(r, c) = c == dead ? 0.0 : rng.gaussian();
    }
    const NormEstimate full = operator_norm_sampled(t, p, 1500, derive_seed(ctx.seed, 5));
    const NormEstimate sub = operator_norm_sampled(t.drop_column(dead), p, 1500, derive_seed(ctx.seed, 6));
    ctx.report.metrics["max_sampling_gap"] = std::max(ctx.report.metrics["max_sampling_gap"], full.value - sub.value);
    if (!(sub.value >= full.value * (1.0 - 1e-9))) {
      ctx.fail({{"dead column", std::to_string(dead)}, {"norm", fmt(full.value)}, {"hyperplane norm", fmt(sub.value)},
                {"observed", "norm not attained on the hyperplane x_i = 0"}});
    }
    const double norm = std::max(full.value, sub.value);
    auto norm_of = [&](const VecN& v) { return p_norm(t.apply(v), p); };
    for (int s = 0; s < 4; ++s) {
      VecN v = rng.gaussian_vector(3);
      v[dead] = (v[dead] < 0 ? -1.0 : 1.0) * std::max(std::fabs(v[dead]), 1.0);
      v = normalised(v, p);
      if (std::fabs(v[dead]) < 0.5) continue;
      if (!(norm_of(v) < norm)) {
        ctx.fail({{"v", fmt(v)}, {"norm", fmt(norm)}, {"||Tv||", fmt(norm_of(v))}, {"observed", "off-hyperplane point attains"}});
      }
    }
    for (int s = 0; s < 3; ++s) {
      judge_basis({normalised(rng.gaussian_vector(3), p), normalised(rng.gaussian_vector(3), p),
                   normalised(rng.gaussian_vector(3), p)},
                  norm, norm_of);
    }
  });
}

// ---------------------------------------------------- isometry left symmetry

CheckReport verify_isometry_left_symmetry(const SuiteOptions& opt) {
  const Exponent p = opt.p;
  require(p.smooth(), "isometry-left-symmetry needs 1 < p < inf");
  const bool euclid = p.is_integer() && p.integer_value() == 2;
  return run_trials("isometry-left-symmetry", opt, [&](TrialContext& ctx) {
    Rng rng = trial_rng(ctx);
    Operator2<double> u;
    if (euclid && rng.uniform_int(0, 1) == 0) {
      const double th = rng.uniform(0.0, 6.283185307179586);
      u = {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
    } else {
      const double s1 = rng.uniform_int(0, 1) ? 1.0 : -1.0;
      const double s2 = rng.uniform_int(0, 1) ? 1.0 : -1.0;
      u = rng.uniform_int(0, 1) ? Operator2<double>{s1, 0.0, 0.0, s2} : Operator2<double>{0.0, s1, s2, 0.0};
    }
    const auto iso = is_isometry_multiple(u, p, 1e-12);
    if (!iso || std::fabs(*iso - 1.0) > 1e-12) {
      ctx.fail({{"U", fmt(u)}, {"observed", "sampled U is not an isometry"}});
      return;
    }
    VecN x;
    switch (rng.uniform_int(0, 4)) {
      case 0: x = VecN{1.0, 0.0}; break;
      case 1: x = VecN{0.0, 1.0}; break;
      case 2: x = normalised(VecN{1.0, 1.0}, p); break;
      case 3: x = normalised(VecN{1.0, -1.0}, p); break;
      default: x = normalised(rng.gaussian_vector(2), p); break;
    }
    const SymmetryVerdict at_x = check_left_symmetric(x, p, 2, 48, derive_seed(ctx.seed, 7));
    if (at_x.status == SymmetryStatus::Refuted) {
      ++ctx.report.skipped;
      return;
    }
    ctx.report.metrics["left_symmetric_inputs"] += 1.0;
    const VecN ux = u.apply(x);
    const SymmetryVerdict at_ux = check_left_symmetric(ux, p, 2, 48, derive_seed(ctx.seed, 8));
    if (at_ux.status == SymmetryStatus::Refuted) {
      ctx.fail({{"U", fmt(u)}, {"x", fmt(x)}, {"Ux", fmt(ux)}, {"witness", fmt(*at_ux.witness)},
                {"observed", "Ux is not left symmetric"}});
    }
  });
}

// --------------------------------------------------- non-smooth counterexample

CheckReport verify_nonsmooth_counterexample(const SuiteOptions& opt) {
  const Exponent p = opt.p;
  if (!(p.is_one() || p.is_infinity())) throw DomainError("nonsmooth-counterexample needs p in {1, inf}");
  return run_trials("nonsmooth-counterexample", opt, [&](TrialContext& ctx) {
    Rng rng = trial_rng(ctx);
    const std::string label = ctx.index == 0 && !ctx.replay ? "construction" : "random corner";

    if (p.is_infinity() && ctx.index == 0 && !ctx.replay) {
      // The worked sup-norm example, replayed exactly.
      const QOperator2 t = sup_norm_example_operator();
      const QVecN x{rat(1), rat(1)};
      const QVecN y{rat(-1, 2), rat(1)};
      const QVecN ty = t.apply(y);
      const PolyhedralAttainment pa = polyhedral_attainment(t, p);
      const bool in_mt = norm_power(t.apply(x), p) == pa.norm && pa.norm == 1;
      const bool facts = ty == QVecN{rat(-1, 8), rat(-3, 8)} && bj_orthogonal(x, y, p).orthogonal && in_mt &&
                         t.apply(x) == QVecN{rat(1), rat(0)};
      const bool violated = !bj_orthogonal(t.apply(x), ty, p).orthogonal;
      std::vector<std::pair<std::string, std::string>> fields{
          {"case", "worked example"}, {"operator", fmt(t)}, {"x", fmt(x)}, {"y", fmt(y)}, {"Ty", fmt(ty)}};
      if (!facts || !violated) {
        fields.emplace_back("observed", "worked example not reproduced");
        ctx.fail(std::move(fields));
      } else {
        fields.emplace_back("observed", "x ⊥ y, x in M_T, Tx not ⊥ Ty");
        ctx.expect_violation(std::move(fields));
      }
    }

    // T = x0 f1^t for a non-smooth unit x0 with distinct norming functionals
    // f1, f2; y spans ker f2, so x0 ⊥_B y while T y = f1(y) x0 != 0.
    QVecN x0;
    QVecN f1;
    QVecN f2;
    if (ctx.index == 0 && !ctx.replay) {
      if (p.is_infinity()) {
        x0 = {rat(1), rat(1)};
        f1 = {rat(1), rat(0)};
        f2 = {rat(0), rat(1)};
      } else {
        x0 = {rat(1), rat(0)};
        f1 = {rat(1), rat(1)};
        f2 = {rat(1), rat(-1)};
      }
    } else {
      const Rational s1 = rng.uniform_int(0, 1) ? 1 : -1;
      const Rational s2 = rng.uniform_int(0, 1) ? 1 : -1;
      long k1 = rng.uniform_int(0, 8);
      long k2 = rng.uniform_int(0, 8);
      while (k2 == k1) k2 = rng.uniform_int(0, 8);
      if (p.is_infinity()) {
        x0 = {s1, s2};
        f1 = {s1 * rat(k1, 8), s2 * rat(8 - k1, 8)};
        f2 = {s1 * rat(k2, 8), s2 * rat(8 - k2, 8)};
      } else {
        const bool first = rng.uniform_int(0, 1) == 0;
        const Rational t1 = rat(2 * k1 - 8, 8);
        const Rational t2 = rat(2 * k2 - 8, 8);
        x0 = first ? QVecN{s1, rat(0)} : QVecN{rat(0), s1};
        f1 = first ? QVecN{s1, t1} : QVecN{t1, s1};
        f2 = first ? QVecN{s1, t2} : QVecN{t2, s1};
      }
    }
    const QVecN y{Rational(-f2[1]), f2[0]};
    const QOperator2 t{x0[0] * f1[0], x0[0] * f1[1], x0[1] * f1[0], x0[1] * f1[1]};
    const PolyhedralAttainment pa = polyhedral_attainment(t, p);
    const QVecN tx = t.apply(x0);
    const QVecN ty = t.apply(y);
    std::vector<std::pair<std::string, std::string>> fields{{"case", label}, {"operator", fmt(t)}, {"x0", fmt(x0)},
                                                            {"f1", fmt(f1)}, {"f2", fmt(f2)}, {"y", fmt(y)},
                                                            {"Ty", fmt(ty)}};
    const bool construction_ok = is_unit(x0, p) && pa.norm == 1 && norm_power(tx, p) == 1 && tx == x0 &&
                                 bj_orthogonal(x0, y, p).orthogonal && pairing(f1, y) != 0;
    if (!construction_ok) {
      fields.emplace_back("observed", "construction invalid");
      ctx.fail(std::move(fields));
      return;
    }
    if (bj_orthogonal(tx, ty, p).orthogonal) {
      fields.emplace_back("observed", "Ty ∈ (Tx0)^⊥: no violation at a non-smooth point");
      ctx.fail(std::move(fields));
      return;
    }
    fields.emplace_back("observed", "x0 ⊥ y, x0 in M_T, Tx0 not ⊥ Ty");
    ctx.expect_violation(std::move(fields));
  });
}

// ------------------------------------------------------- Euclidean doubleton

CheckReport verify_euclidean_doubleton(const SuiteOptions& opt) {
  const Exponent p = opt.p;
  require(p.is_integer() && p.integer_value() == 2, "euclidean-doubleton needs p = 2");
  return run_trials("euclidean-doubleton", opt, [&](TrialContext& ctx) {
    RandomOperator op;
    if (ctx.index == 0 && !ctx.replay) {
      op = exact_operator({rat(6, 5), rat(-8, 5), rat(8, 5), rat(6, 5)});  // 2 * rotation
    } else if (ctx.index == 1 && !ctx.replay) {
      op = exact_operator({rat(2), rat(0), rat(0), rat(1)});
    } else {
      op = random_operator(ctx.seed, opt.entries);
    }
    const bool iso = op.exact ? is_isometry_multiple(*op.exact, p).has_value() : is_isometry_multiple(op.numeric, p).has_value();
    if (iso) {
      ctx.report.histogram[-1]++;
      const AttainmentSet num = mt_numeric(op.numeric, p);
      bool threw = !op.exact;
      if (op.exact) {
        try {
          mt_exact(*op.exact, p);
        } catch (const IsometryMultiple&) {
          threw = true;
        }
      }
      if (!num.whole_sphere || !threw) {
        ctx.fail({{"operator", fmt(op)}, {"observed", "isometry multiple without the whole-sphere sentinel"}});
      }
      return;
    }
    const AttainmentSet set = op.exact ? mt_exact(*op.exact, p) : mt_numeric(op.numeric, p);
    ctx.report.histogram[static_cast<int>(set.points.size())]++;
    if (set.points.size() != 2) {
      ctx.fail({{"operator", fmt(op)}, {"points", std::to_string(set.points.size())}, {"observed", "M_T is not a doubleton"}});
      return;
    }
    const VecN v = top_singular_vector(op.numeric);
    const VecN& z = set.points.front();
    const double gap = std::min(std::hypot(z[0] - v[0], z[1] - v[1]), std::hypot(z[0] + v[0], z[1] + v[1]));
    ctx.report.metrics["max_singular_vector_gap"] = std::max(ctx.report.metrics["max_singular_vector_gap"], gap);
    if (!(gap <= 1e-9)) {
      ctx.fail({{"operator", fmt(op)}, {"z", fmt(z)}, {"singular vector", fmt(v)}, {"observed", "not the top singular direction"}});
    }
  });
}

// --------------------------------------------------------- attainment bound

CheckReport verify_attainment_bound(const SuiteOptions& opt) {
  const Exponent p = opt.p;
  require(p.is_integer() && p.integer_value() >= 2, "attainment-bound needs integer p >= 2");
  EntrySpec dist = opt.entries;
  dist.kind = EntryDist::UniformRational;
  const long bound = mt_bound(p.integer_value());
  return run_trials("attainment-bound", opt, [&](TrialContext& ctx) {
    const RandomOperator op = random_operator(ctx.seed, dist, p);
    const ExactAttainment res = mt_exact_detailed(*op.exact, p);
    const auto& pts = res.set.points;
    const int count = static_cast<int>(pts.size());
    ctx.report.histogram[count]++;
    ctx.report.metrics["max_points"] = std::max(ctx.report.metrics["max_points"], static_cast<double>(count));
    ctx.report.metrics["bound"] = static_cast<double>(bound);
    if (res.tie) ctx.report.metrics["ties"] += 1.0;
    if (count > bound) {
      ctx.fail({{"operator", fmt(op)}, {"points", std::to_string(count)}, {"bound", std::to_string(bound)}});
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const VecN& z = pts[i];
      const bool closed = std::any_of(pts.begin(), pts.end(), [&](const VecN& w) { return w == VecN{-z[0] + 0.0, -z[1] + 0.0}; });
      const double tz = p_norm(op.numeric.apply(z), p);
      const VecN w = orth_direction(z, p);
      const bool lhs = bj_orthogonal(z, w, p).orthogonal;
      const bool rhs = bj_orthogonal(op.numeric.apply(z), op.numeric.apply(w), p).orthogonal;
      if (!closed || !is_unit(z, p, 1e-12) || !(tz >= res.set.norm_value * (1.0 - 1e-9)) || lhs != rhs) {
        ctx.fail({{"operator", fmt(op)}, {"z", fmt(z)}, {"||Tz||", fmt(tz)}, {"norm", fmt(res.set.norm_value)},
                  {"observed", "returned point fails a membership check"}});
      }
    }
  });
}

// ------------------------------------------------------------------ registry

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> all = [] {
    auto any = [](const Exponent&) { return true; };
    auto smooth = [](const Exponent& p) { return p.smooth(); };
    auto integer2 = [](const Exponent& p) { return p.is_integer() && p.integer_value() >= 2; };
    return std::vector<SuiteInfo>{
        {"pullback", "Tx ⊥ Ty implies x ⊥ y at norm-attaining x", any, verify_pullback},
        {"cone-preservation", "T maps x+ \\ x⊥ and x- \\ x⊥ into the cones at Tx; x⊥ into (Tx)⊥ when smooth", any,
         verify_cone_preservation},
        {"orthogonality-preservation", "x ⊥ y iff Tx ⊥ Ty at norm-attaining x", smooth,
         verify_orthogonality_preservation},
        {"kernel-containment", "ker T inside x⊥ for x in M_T; two pairs force invertibility", any,
         verify_kernel_containment},
        {"daugavet-invariant-line", "Daugavet operators fix a unit x0 and leave x0⊥ invariant", integer2,
         verify_daugavet_invariant_line},
        {"kernel-span", "T e_i = 0 keeps M_T inside x_i = 0", smooth, verify_kernel_span},
        {"isometry-left-symmetry", "isometries preserve left symmetric points", smooth, verify_isometry_left_symmetry},
        {"nonsmooth-counterexample", "non-smooth points break T(x⊥) ⊆ (Tx)⊥",
         [](const Exponent& p) { return p.is_one() || p.is_infinity(); }, verify_nonsmooth_counterexample},
        {"euclidean-doubleton", "p = 2: M_T is the sphere or a doubleton",
         [](const Exponent& p) { return p.is_integer() && p.integer_value() == 2; }, verify_euclidean_doubleton},
        {"attainment-bound", "|M_T| <= 2(8p - 5) for integer p >= 2", integer2, verify_attainment_bound},
    };
  }();
  return all;
}

const SuiteInfo& find_suite(const std::string& id) {
  for (const auto& s : suites()) {
    if (s.id == id) return s;
  }
  throw std::out_of_range("unknown suite: " + id);
}

std::vector<Exponent> default_exponents(const SuiteInfo& suite) {
  std::vector<Exponent> out;
  for (const Exponent& p : {Exponent::integer(1), Exponent::integer(2), Exponent::integer(3), Exponent::integer(5),
                            Exponent::infinity()}) {
    if (suite.supports(p)) out.push_back(p);
  }
  return out;
}

}  // namespace banach
