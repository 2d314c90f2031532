#pragma once

#include <algorithm>

#include "banach/rational.hpp"

namespace banach {

/// Closed interval [lo, hi] with rational endpoints. Arithmetic is outward
/// exact: every result contains the image of every point of the operands.
class QInterval {
 public:
  QInterval() = default;
  explicit QInterval(const Rational& point) : lo_(point), hi_(point) {}
  QInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) std::swap(lo_, hi_);
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / 2; }
  bool contains(const Rational& v) const { return lo_ <= v && v <= hi_; }
  bool overlaps(const QInterval& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }

  friend QInterval operator+(const QInterval& a, const QInterval& b) {
    return QInterval(a.lo_ + b.lo_, a.hi_ + b.hi_);
  }
  friend QInterval operator-(const QInterval& a, const QInterval& b) {
    return QInterval(a.lo_ - b.hi_, a.hi_ - b.lo_);
  }
  friend QInterval operator*(const QInterval& a, const QInterval& b) {
    Rational p1 = a.lo_ * b.lo_;
    Rational p2 = a.lo_ * b.hi_;
    Rational p3 = a.hi_ * b.lo_;
    Rational p4 = a.hi_ * b.hi_;
    return QInterval(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
  }
  friend QInterval operator*(const Rational& s, const QInterval& a) {
    return QInterval(s * a.lo_, s * a.hi_);
  }
  friend QInterval operator+(const Rational& s, const QInterval& a) {
    return QInterval(s + a.lo_, s + a.hi_);
  }

  /// |x| over the interval.
  QInterval abs() const {
    if (lo_ >= 0) return *this;
    if (hi_ <= 0) return QInterval(-hi_, -lo_);
    return QInterval(Rational(0), std::max(Rational(-lo_), hi_));
  }

  /// x^n for a nonnegative interval (monotone).
  QInterval pow_nonneg(unsigned n) const { return QInterval(pow(lo_, n), pow(hi_, n)); }

  /// a / b for a >= 0 and b > 0.
  static QInterval divide_nonneg(const QInterval& a, const QInterval& b) {
    return QInterval(a.lo_ / b.hi_, a.hi_ / b.lo_);
  }

 private:
  Rational lo_;
  Rational hi_;
};

}  // namespace banach
