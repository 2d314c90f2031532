#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "banach/exponent.hpp"
#include "banach/interval.hpp"
#include "banach/operators.hpp"
#include "banach/polynomial.hpp"
#include "banach/rational.hpp"
#include "banach/vector.hpp"

namespace banach {

/// The direction w with x ⊥_B w in smooth l_p^2: (-j(x_2), j(x_1)).
/// Throws DomainError for x = 0, UnsupportedExponent for p in {1, inf}.
VecN orth_direction(const VecN& x, const Exponent& p);
/// Exact version for integer p >= 2.
QVecN orth_direction(const QVecN& x, const Exponent& p);

/// One sign region of the slope equation F(k) = 0, where
///   F(k) = j(a + b k) (a j(k) - b) + j(c + d k) (c j(k) - d)
/// and z = (1, k) is a candidate norm-attaining direction.
struct SignedPoly {
  QPoly poly;
  /// Region [lo, hi); a missing bound is infinite. The left end is closed
  /// when finite, so a boundary root belongs to exactly one region.
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  /// sign(a + b k), sign(c + d k), sign(k) inside the region (0 means the
  /// factor vanishes identically or the sign is irrelevant for even p).
  std::array<int, 3> signs{0, 0, 0};

  bool contains(const Rational& k) const { return (!lo || *lo <= k) && (!hi || k < *hi); }
};

/// An isolating interval for one real root. lo == hi means the root is the
/// rational lo. Otherwise the root is in the open interval (lo, hi) and is the
/// only root there of the box's polynomial, which is squarefree and nonzero
/// at both ends.
class RootBox {
 public:
  RootBox(Rational point, bool multiple);
  RootBox(Rational lo, Rational hi, std::shared_ptr<const QPoly> poly, bool multiple);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / 2; }
  bool exact() const { return lo_ == hi_; }
  bool contains(const Rational& k) const { return exact() ? k == lo_ : lo_ < k && k < hi_; }
  /// The root has multiplicity >= 2 in the region polynomial.
  bool multiple() const { return multiple_; }

  /// One bisection step (no-op for exact boxes).
  void bisect();
  /// Bisect until width <= max_width.
  void refine(const Rational& max_width);

 private:
  Rational lo_;
  Rational hi_;
  std::shared_ptr<const QPoly> poly_;
  int sign_lo_ = 0;
  bool multiple_ = false;
};

/// Region decomposition of F for integer p >= 2. Even p gives a single
/// polynomial on the whole line; odd p splits at {0, -a/b, -c/d}. Every
/// polynomial has degree <= 2p - 2. Throws IsometryMultiple for scalar
/// multiples of isometries and DegenerateOperator for T = 0.
std::vector<SignedPoly> candidate_polynomials(const QOperator2& t, const Exponent& p);

/// All real roots of poly inside its region, sorted. Throws IsometryLike when
/// poly is identically zero.
std::vector<RootBox> isolate_real_roots(const SignedPoly& poly);

struct ExactAttainment {
  AttainmentSet set;
  /// Enclosure of ||T||^p.
  QInterval norm_power;
  /// Attaining slopes k (points ±(1, k)/||(1, k)||); nullopt is the vertical
  /// direction ±e_2. Refined to width 2^-60.
  std::vector<std::optional<RootBox>> slopes;
  std::size_t regions = 0;
  std::size_t candidates = 0;
  /// Two or more candidates stayed indistinguishable at resolution 2^-53.
  bool tie = false;
};

/// Exact M_T on l_p^2 for integer p >= 2 and rational T.
ExactAttainment mt_exact_detailed(const QOperator2& t, const Exponent& p);
AttainmentSet mt_exact(const QOperator2& t, const Exponent& p);

/// Upper bound 2(8p - 5) on |M_T|. Throws DomainError for p < 2.
long mt_bound(long p);

}  // namespace banach
