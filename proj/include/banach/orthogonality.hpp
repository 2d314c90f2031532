#pragma once

#include <cstdint>
#include <optional>

#include "banach/exponent.hpp"
#include "banach/random.hpp"
#include "banach/space_core.hpp"
#include "banach/vector.hpp"

namespace banach {

enum class OrthMethod { Exact, Derivative, Bruteforce };

/// x ⊥_B y iff ||x + t y|| >= ||x|| for every real t, which for the convex map
/// t -> ||x + t y|| is d_minus <= 0 <= d_plus.
struct OrthVerdict {
  bool orthogonal = false;
  DerivPair deriv;
  OrthMethod method = OrthMethod::Derivative;
};

/// Float path: |D| <= tol * ||y|| counts as zero. Throws DomainError for x = 0.
OrthVerdict bj_orthogonal(const VecN& x, const VecN& y, const Exponent& p, double tol = kDefaultTol);
/// Exact for Integer and Infinity exponents; a Real exponent falls back to the
/// float path on the converted coordinates.
OrthVerdict bj_orthogonal(const QVecN& x, const QVecN& y, const Exponent& p);

/// Grid search for min_t ||x + t y|| over [lo, hi] (refined twice around the
/// minimiser). True iff the minimum stays >= ||x|| (1 - tol). Test oracle only.
bool bj_bruteforce(const VecN& x, const VecN& y, const Exponent& p, double lo, double hi, int steps,
                   double tol = 1e-7);

/// y in x^+ : ||x + t y|| >= ||x|| for all t >= 0, i.e. D+(x; y) >= 0.
bool in_plus(const VecN& x, const VecN& y, const Exponent& p, double tol = kDefaultTol);
/// y in x^- : ||x + t y|| >= ||x|| for all t <= 0, i.e. D-(x; y) <= 0.
bool in_minus(const VecN& x, const VecN& y, const Exponent& p, double tol = kDefaultTol);
bool in_plus(const QVecN& x, const QVecN& y, const Exponent& p);
bool in_minus(const QVecN& x, const QVecN& y, const Exponent& p);

/// A random norming functional f at x (f(x) = ||x||, ||f||_* = 1 up to
/// scaling). Unique (= j(x)) for smooth p; a random point of the face of
/// norming functionals for p in {1, inf}, with extreme points drawn often.
VecN sample_norming_functional(const VecN& x, const Exponent& p, Rng& rng);
QVecN sample_norming_functional(const QVecN& x, const Exponent& p, Rng& rng);

/// A random y with x ⊥_B y: y lies in the kernel of a sampled norming
/// functional of x (James' characterisation). May return the zero vector.
VecN sample_orthogonal(const VecN& x, const Exponent& p, Rng& rng);
QVecN sample_orthogonal(const QVecN& x, const Exponent& p, Rng& rng);

/// A random y with y ⊥_B x: y = v - m x with m minimising ||v - m x|| for a
/// random v.
VecN sample_reverse_orthogonal(const VecN& x, const Exponent& p, Rng& rng);

enum class SymmetryStatus { HoldsOnSample, Refuted };

/// Falsification-only: HoldsOnSample is not a proof.
struct SymmetryVerdict {
  SymmetryStatus status = SymmetryStatus::HoldsOnSample;
  std::optional<VecN> witness;
  int tested = 0;
};

/// Left symmetry at x: x ⊥_B y implies y ⊥_B x. Samples y with x ⊥_B y and
/// reports the first y with y not ⊥_B x.
SymmetryVerdict check_left_symmetric(const VecN& x, const Exponent& p, int n, int samples, std::uint64_t seed);
/// Right symmetry at x: y ⊥_B x implies x ⊥_B y.
SymmetryVerdict check_right_symmetric(const VecN& x, const Exponent& p, int n, int samples, std::uint64_t seed);

}  // namespace banach
