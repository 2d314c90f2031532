#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "banach/exponent.hpp"
#include "banach/rational.hpp"
#include "banach/space_core.hpp"
#include "banach/vector.hpp"

namespace banach {

/// The matrix (a b; c d) of an operator on l_p^2 in the standard basis.
template <class T>
struct Operator2 {
  T a{0};
  T b{0};
  T c{0};
  T d{0};

  static Operator2 identity() { return {T(1), T(0), T(0), T(1)}; }

  Vector<T> apply(const Vector<T>& v) const { return Vector<T>{a * v[0] + b * v[1], c * v[0] + d * v[1]}; }
  T det() const { return a * d - b * c; }
  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  /// Transpose acting on functionals: (T^t f)(v) = f(T v).
  Vector<T> pullback(const Vector<T>& f) const { return Vector<T>{a * f[0] + c * f[1], b * f[0] + d * f[1]}; }

  friend Operator2 operator+(const Operator2& l, const Operator2& r) {
    return {l.a + r.a, l.b + r.b, l.c + r.c, l.d + r.d};
  }
  friend Operator2 operator*(const T& s, const Operator2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
  friend Operator2 operator*(const Operator2& l, const Operator2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
  friend bool operator==(const Operator2& l, const Operator2& r) {
    return l.a == r.a && l.b == r.b && l.c == r.c && l.d == r.d;
  }
};

using QOperator2 = Operator2<Rational>;

template <class T>
Vector<T> apply(const Operator2<T>& t, const Vector<T>& v) {
  return t.apply(v);
}

inline Operator2<double> to_double(const QOperator2& t) {
  return {t.a.get_d(), t.b.get_d(), t.c.get_d(), t.d.get_d()};
}

/// Inverse of an invertible rational operator.
QOperator2 inverse(const QOperator2& t);

struct NormEstimate {
  double value = 0.0;
  /// Refined local maxima within tolerance of value, one per antipodal pair
  /// (each chart representative has x > 0, or x = 0 and y > 0). When
  /// whole_sphere is set this is the full evaluation grid instead.
  std::vector<VecN> argmax;
  /// Every grid value lies within tolerance of the maximum: isometry-multiple
  /// suspicion.
  bool whole_sphere = false;
};

inline constexpr int kDefaultGrid = 4096;
inline constexpr int kDefaultRefineIters = 60;

/// sup ||T z|| over the unit sphere of l_p^2. The half sphere is covered by two
/// overlapping charts t -> ((1-|t|^p)^(1/p), t) and t -> (t, (1-|t|^p)^(1/p)),
/// each sampled on `grid` points; every local maximum of the grid is refined
/// by ternary search on its bracketing cells in extended precision.
NormEstimate operator_norm_numeric(const Operator2<double>& t, const Exponent& p, int grid = kDefaultGrid,
                                   int refine_iters = kDefaultRefineIters, double tol = kDefaultTol);

/// Closed forms for p in {1, 2, inf}, operator_norm_numeric otherwise.
double operator_norm(const Operator2<double>& t, const Exponent& p);

/// Largest singular value, closed form.
double spectral_norm(const Operator2<double>& t);

enum class CertificateKind { Numeric, Exact };

struct Certificate {
  CertificateKind kind = CertificateKind::Numeric;
  double tol = 0.0;
};

/// A finite, antipodally closed set of unit vectors at which T attains its norm.
/// whole_sphere marks M_T = S_X (isometry multiples); points is then empty.
struct AttainmentSet {
  double norm_value = 0.0;
  std::vector<VecN> points;
  Certificate certificate;
  bool whole_sphere = false;
};

/// Numeric M_T: clustered (radius 1e-6) local maxima of operator_norm_numeric
/// within tol of the norm, antipodally completed. Throws DegenerateOperator for
/// T = 0; scalar multiples of isometries return the whole-sphere sentinel.
AttainmentSet mt_numeric(const Operator2<double>& t, const Exponent& p, double tol = kDefaultTol);

/// M_T for p in {1, inf} and rational T. The norm is a maximum of a convex
/// function over a polygon, so it is attained at vertices; an edge belongs to
/// M_T exactly when both its endpoints and its midpoint attain.
struct PolyhedralAttainment {
  Rational norm;
  /// Attaining vertices, antipodally closed.
  std::vector<QVecN> vertices;
  /// Attaining edges (one per antipodal pair).
  std::vector<std::pair<QVecN, QVecN>> edges;
};
PolyhedralAttainment polyhedral_attainment(const QOperator2& t, const Exponent& p);

enum class KernelKind { Trivial, Line, Whole };

template <class T>
struct KernelInfo {
  KernelKind kind = KernelKind::Trivial;
  /// Spanning vector of the null line when kind == Line. Euclidean-normalised
  /// on the float path, primitive (unnormalised) on the rational path.
  Vector<T> direction;
};

KernelInfo<double> kernel(const Operator2<double>& t, double tol = 1e-12);
KernelInfo<Rational> kernel(const QOperator2& t);

/// s > 0 with T = s U for an isometry U of l_p^2: U orthogonal for p = 2, a
/// signed permutation otherwise.
std::optional<double> is_isometry_multiple(const Operator2<double>& t, const Exponent& p, double tol = 1e-12);
std::optional<double> is_isometry_multiple(const QOperator2& t, const Exponent& p);

/// (1 + ||T||) - ||I + T||; zero exactly when T satisfies the Daugavet equation.
double daugavet_residual(const Operator2<double>& t, const Exponent& p);

/// Whether the line x0^⊥ (spanned by (-j(x0)_2, j(x0)_1)) is T-invariant.
/// Needs 1 < p < inf. The rational overload is exact for integer p and accepts
/// any nonzero x0 (x0^⊥ only depends on the ray).
bool invariant_line_check(const Operator2<double>& t, const VecN& x0, const Exponent& p, double tol = kDefaultTol);
bool invariant_line_check(const QOperator2& t, const QVecN& x0, const Exponent& p);

/// Dense rows x cols operator from l_p^cols to l_p^rows (small sizes only).
class DenseOperator {
 public:
  DenseOperator(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), m_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t r, std::size_t c) { return m_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return m_[r * cols_ + c]; }
  VecN apply(const VecN& v) const;
  /// The operator with column `col` removed (restriction to {x_col = 0}).
  DenseOperator drop_column(std::size_t col) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> m_;
};

/// Brute-force sphere sampling plus pattern-search polishing; a lower bound
/// for ||T|| that is sharp to ~1e-12 for the small smooth problems used here.
NormEstimate operator_norm_sampled(const DenseOperator& t, const Exponent& p, int samples, std::uint64_t seed,
                                   double tol = 1e-9);

}  // namespace banach
