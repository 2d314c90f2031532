#include "banach/exact_enum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "banach/errors.hpp"
#include "banach/space_core.hpp"

namespace banach {

namespace {

unsigned require_integer_exponent(const Exponent& p) {
  if (!p.is_integer() || p.integer_value() < 2) {
    throw UnsupportedExponent("exact enumeration needs integer p >= 2, got p = " + p.to_string());
  }
  return static_cast<unsigned>(p.integer_value());
}

Rational two_pow_neg(unsigned bits) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
  return Rational(mpz_class(1), den);
}

int sign_of_linear(const Rational& c0, const Rational& c1, const Rational& k) { return sgn(Rational(c0 + c1 * k)); }

QPoly deflate(const QPoly& poly, const Rational& root) { return divmod(poly, QPoly::linear_root(root)).first; }

bool has_root_inside(const QPoly& poly, const QPoly& repeated, const Rational& lo, const Rational& hi) {
  if (repeated.degree() < 1) return false;
  QPoly shared = gcd(poly, repeated);
  if (shared.degree() < 1) return false;
  return sturm_count(sturm_sequence(shared), lo, hi) > 0;
}

void isolate(const QPoly& poly, const QPoly& repeated, const Rational& lo, const Rational& hi,
             std::vector<RootBox>& out) {
  if (poly.degree() < 1) return;
  const int count = sturm_count(sturm_sequence(poly), lo, hi);
  if (count == 0) return;
  if (count == 1) {
    if (poly.degree() == 1) {
      const Rational r = -poly.coeff(0) / poly.coeff(1);
      out.emplace_back(r, repeated.degree() >= 1 && repeated.eval(r) == 0);
      return;
    }
    out.emplace_back(lo, hi, std::make_shared<const QPoly>(poly), has_root_inside(poly, repeated, lo, hi));
    return;
  }
  const Rational m = (lo + hi) / 2;
  if (poly.eval(m) == 0) {
    out.emplace_back(m, repeated.degree() >= 1 && repeated.eval(m) == 0);
    QPoly rest = deflate(poly, m);
    isolate(rest, repeated, lo, m, out);
    isolate(rest, repeated, m, hi, out);
  } else {
    isolate(poly, repeated, lo, m, out);
    isolate(poly, repeated, m, hi, out);
  }
}

QInterval slope_value(const QOperator2& t, unsigned p, const RootBox& box) {
  const QInterval k(box.lo(), box.hi());
  const QInterval u = t.a + t.b * k;
  const QInterval v = t.c + t.d * k;
  const QInterval num = u.abs().pow_nonneg(p) + v.abs().pow_nonneg(p);
  const QInterval den = Rational(1) + k.abs().pow_nonneg(p);
  return QInterval::divide_nonneg(num, den);
}

struct Candidate {
  std::optional<RootBox> box;  // nullopt: vertical direction e_2
  QInterval value;
};

VecN unit_point(const std::optional<RootBox>& box, const Exponent& p) {
  if (!box) return VecN{0.0, 1.0};
  VecN z{1.0, box->mid().get_d()};
  const double len = p_norm(z, p);
  return VecN{z[0] / len, z[1] / len + 0.0};
}

}  // namespace

VecN orth_direction(const VecN& x, const Exponent& p) {
  if (x.size() != 2) throw DomainError("orth_direction works on l_p^2");
  VecN j = support_coords(x, p);
  return VecN{-j[1] + 0.0, j[0]};
}

QVecN orth_direction(const QVecN& x, const Exponent& p) {
  if (x.size() != 2) throw DomainError("orth_direction works on l_p^2");
  QVecN j = support_coords(x, p);
  return QVecN{Rational(-j[1]), j[0]};
}

RootBox::RootBox(Rational point, bool multiple) : lo_(point), hi_(std::move(point)), multiple_(multiple) {}

RootBox::RootBox(Rational lo, Rational hi, std::shared_ptr<const QPoly> poly, bool multiple)
    : lo_(std::move(lo)), hi_(std::move(hi)), poly_(std::move(poly)), multiple_(multiple) {
  sign_lo_ = poly_->sign_at(lo_);
  if (sign_lo_ == 0 || poly_->sign_at(hi_) != -sign_lo_) {
    throw std::logic_error("RootBox needs a sign change with nonzero ends");
  }
}

void RootBox::bisect() {
  if (exact()) return;
  Rational m = mid();
  const int s = poly_->sign_at(m);
  if (s == 0) {
    lo_ = m;
    hi_ = m;
  } else if (s == sign_lo_) {
    lo_ = std::move(m);
  } else {
    hi_ = std::move(m);
  }
}

void RootBox::refine(const Rational& max_width) {
  while (!exact() && width() > max_width) bisect();
}

std::vector<SignedPoly> candidate_polynomials(const QOperator2& t, const Exponent& p) {
  const unsigned q = require_integer_exponent(p);
  if (t.is_zero()) throw DegenerateOperator("M_T is only defined here for T != 0");
  if (is_isometry_multiple(t, p)) throw IsometryMultiple("T is a scalar multiple of an isometry: M_T is the unit sphere");

  const QPoly u(std::vector<Rational>{t.a, t.b});
  const QPoly v(std::vector<Rational>{t.c, t.d});
  const QPoly kq = QPoly::monomial(1, q - 1);
  const QPoly up = u.pow(q - 1);
  const QPoly vp = v.pow(q - 1);
  const QPoly tail_u = t.a * kq - QPoly::constant(t.b);
  const QPoly tail_v = t.c * kq - QPoly::constant(t.d);

  std::vector<SignedPoly> out;
  if (q % 2 == 0) {
    // p - 1 odd: j(s) = s^(p-1) on the whole line.
    out.push_back({up * tail_u + vp * tail_v, std::nullopt, std::nullopt, {0, 0, 0}});
    return out;
  }

  std::set<Rational> cuts{Rational(0)};
  if (t.b != 0) cuts.insert(Rational(-t.a / t.b));
  if (t.d != 0) cuts.insert(Rational(-t.c / t.d));
  std::vector<Rational> bp(cuts.begin(), cuts.end());

  for (std::size_t r = 0; r <= bp.size(); ++r) {
    SignedPoly region;
    if (r > 0) region.lo = bp[r - 1];
    if (r < bp.size()) region.hi = bp[r];
    Rational rep = !region.lo ? Rational(*region.hi - 1) : !region.hi ? Rational(*region.lo + 1) : Rational((*region.lo + *region.hi) / 2);
    const int s1 = sign_of_linear(t.a, t.b, rep);
    const int s2 = sign_of_linear(t.c, t.d, rep);
    const int s3 = sgn(rep);
    region.signs = {s1, s2, s3};
    const QPoly pu = t.a * Rational(s3) * kq - QPoly::constant(t.b);
    const QPoly pv = t.c * Rational(s3) * kq - QPoly::constant(t.d);
    region.poly = Rational(s1) * (up * pu) + Rational(s2) * (vp * pv);
    out.push_back(std::move(region));
  }
  return out;
}

std::vector<RootBox> isolate_real_roots(const SignedPoly& sp) {
  if (sp.poly.is_zero()) throw IsometryLike("candidate polynomial vanishes identically on a region");
  std::vector<RootBox> out;
  if (sp.poly.degree() < 1) return out;
  QPoly g = squarefree_part(sp.poly);
  const QPoly repeated = gcd(sp.poly, sp.poly.derivative());
  const Rational bound = cauchy_bound(g) + 1;
  Rational lo = sp.lo ? *sp.lo : Rational(-bound);
  Rational hi = sp.hi ? *sp.hi : bound;
  if (sp.lo && g.eval(lo) == 0) {
    out.emplace_back(lo, repeated.degree() >= 1 && repeated.eval(lo) == 0);
    g = deflate(g, lo);
  }
  if (sp.hi && g.degree() >= 1 && g.eval(hi) == 0) g = deflate(g, hi);
  isolate(g, repeated, lo, hi, out);
  std::sort(out.begin(), out.end(), [](const RootBox& l, const RootBox& r) { return l.lo() < r.lo(); });
  return out;
}

ExactAttainment mt_exact_detailed(const QOperator2& t, const Exponent& p) {
  const unsigned q = require_integer_exponent(p);
  const auto regions = candidate_polynomials(t, p);

  ExactAttainment result;
  result.regions = regions.size();
  std::vector<Candidate> cands;
  bool zero_slope = false;
  for (const auto& region : regions) {
    for (auto& box : isolate_real_roots(region)) {
      if (box.contains(0)) zero_slope = true;
      QInterval value = slope_value(t, q, box);
      cands.push_back({std::move(box), value});
    }
  }
  auto jq = [&](const Rational& s) {
    Rational mag = pow(Rational(abs(s)), q - 1);
    return s < 0 ? Rational(-mag) : mag;
  };
  if (jq(t.b) * t.a + jq(t.d) * t.c == 0) {
    cands.push_back({std::nullopt, QInterval(norm_power(QVecN{t.b, t.d}, p))});
  }
  // e_1 is the slope k = 0; F(0) = -(j(a) b + j(c) d).
  if (!zero_slope && jq(t.a) * t.b + jq(t.c) * t.d == 0) {
    cands.push_back({RootBox(Rational(0), false), QInterval(norm_power(QVecN{t.a, t.c}, p))});
  }
  result.candidates = cands.size();
  if (cands.empty()) throw std::logic_error("no norm-attainment candidates; the enumeration is incomplete");

  const Rational eps = two_pow_neg(53);
  std::vector<std::size_t> live;
  for (int round = 0;; ++round) {
    if (round > 5000) throw std::runtime_error("candidate comparison did not converge");
    Rational best = cands[0].value.lo();
    for (const auto& c : cands) best = std::max(best, c.value.lo());
    live.clear();
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (cands[i].value.hi() >= best) live.push_back(i);
    }
    if (live.size() == 1) break;
    const Rational threshold = eps * std::max(Rational(1), Rational(abs(best)));
    bool all_tight = true;
    for (std::size_t i : live) {
      Candidate& c = cands[i];
      if (c.value.width() < threshold) continue;
      all_tight = false;
      for (int s = 0; s < 4; ++s) c.box->bisect();
      c.value = slope_value(t, q, *c.box);
    }
    if (all_tight) {
      result.tie = true;
      break;
    }
  }

  const Rational fine = two_pow_neg(60);
  for (std::size_t i : live) {
    Candidate& c = cands[i];
    if (c.box) {
      c.box->refine(fine);
      c.value = slope_value(t, q, *c.box);
    }
  }
  Rational lo = cands[live[0]].value.lo();
  Rational hi = cands[live[0]].value.hi();
  for (std::size_t i : live) {
    lo = std::max(lo, cands[i].value.lo());
    hi = std::max(hi, cands[i].value.hi());
  }
  result.norm_power = QInterval(lo, hi);
  result.set.certificate = {CertificateKind::Exact, 0.0};
  result.set.norm_value = std::pow(result.norm_power.mid().get_d(), 1.0 / q);
  for (std::size_t i : live) {
    const VecN z = unit_point(cands[i].box, p);
    result.set.points.push_back(z);
    result.set.points.push_back(VecN{-z[0] + 0.0, -z[1] + 0.0});
    result.slopes.push_back(cands[i].box);
  }
  return result;
}

AttainmentSet mt_exact(const QOperator2& t, const Exponent& p) { return mt_exact_detailed(t, p).set; }

long mt_bound(long p) {
  if (p < 2) throw DomainError("mt_bound needs p >= 2");
  return 2 * (8 * p - 5);
}

}  // namespace banach
