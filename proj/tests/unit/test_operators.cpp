#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "banach/errors.hpp"
#include "banach/operators.hpp"
#include "banach/random.hpp"
#include "banach/theorem_verify.hpp"

using namespace banach;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const Exponent kInf = Exponent::infinity();

Exponent P(int q) { return Exponent::integer(q); }

// Largest singular value from the eigenvalues of T^t T.
double svd_oracle(const Operator2<double>& t) {
  const double s = t.a * t.a + t.b * t.b + t.c * t.c + t.d * t.d;
  const double det = t.a * t.d - t.b * t.c;
  return std::sqrt((s + std::sqrt(std::max(0.0, s * s - 4 * det * det))) / 2);
}

// Dense angular sampling of the sphere, normalised in l_p.
double grid_norm(const Operator2<double>& t, const Exponent& p, int n) {
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = std::numbers::pi * i / n;
    VecN z{std::cos(th), std::sin(th)};
    const double len = p_norm(z, p);
    best = std::max(best, p_norm(t.apply(VecN{z[0] / len, z[1] / len}), p) );
  }
  return best;
}

bool contains_point(const std::vector<VecN>& pts, const VecN& v, double tol) {
  for (const auto& q : pts) {
    if (std::fabs(q[0] - v[0]) <= tol && std::fabs(q[1] - v[1]) <= tol) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("apply and inverse", "[operators]") {
  const QOperator2 t = sup_norm_example_operator();
  CHECK(t == QOperator2{rat(3, 4), rat(1, 4), rat(1, 4), rat(-1, 4)});
  CHECK(t.apply(QVecN{1, 1}) == QVecN{1, 0});
  CHECK(t.apply(QVecN{1, -1}) == QVecN{rat(1, 2), rat(1, 2)});
  CHECK(t.apply(QVecN{rat(-1, 2), 1}) == QVecN{rat(-1, 8), rat(-3, 8)});
  CHECK(QOperator2::identity().apply(QVecN{rat(2, 7), -3}) == QVecN{rat(2, 7), -3});
  CHECK(inverse(t) * t == QOperator2::identity());
}

TEST_CASE("operator norm examples", "[operators]") {
  const NormEstimate diag = operator_norm_numeric({2, 0, 0, 1}, P(3));
  CHECK_THAT(diag.value, WithinAbs(2.0, 1e-12));
  REQUIRE(diag.argmax.size() == 1);
  CHECK_THAT(diag.argmax[0][0], WithinAbs(1.0, 1e-9));
  CHECK_THAT(diag.argmax[0][1], WithinAbs(0.0, 1e-6));

  const NormEstimate ex = operator_norm_numeric(to_double(sup_norm_example_operator()), kInf);
  CHECK_THAT(ex.value, WithinAbs(1.0, 1e-12));
  CHECK(contains_point(ex.argmax, VecN{1, 1}, 1e-6));

  const NormEstimate id = operator_norm_numeric(Operator2<double>::identity(), P(3));
  CHECK(id.whole_sphere);
  CHECK_THAT(id.value, WithinAbs(1.0, 1e-12));
  CHECK(id.argmax.size() > 1000);
}

TEST_CASE("closed forms match independent oracles", "[operators]") {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const Operator2<double> t{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
    CHECK_THAT(spectral_norm(t), WithinRel(svd_oracle(t), 1e-12));
    CHECK_THAT(operator_norm(t, P(2)), WithinRel(svd_oracle(t), 1e-12));
    CHECK_THAT(operator_norm(t, P(1)),
               WithinRel(std::max(std::fabs(t.a) + std::fabs(t.c), std::fabs(t.b) + std::fabs(t.d)), 1e-15));
    CHECK_THAT(operator_norm(t, kInf),
               WithinRel(std::max(std::fabs(t.a) + std::fabs(t.b), std::fabs(t.c) + std::fabs(t.d)), 1e-15));
    if (i % 4 == 0) {
      CHECK_THAT(operator_norm_numeric(t, P(2)).value, WithinRel(svd_oracle(t), 1e-12));
      CHECK_THAT(operator_norm_numeric(t, P(1)).value, WithinRel(operator_norm(t, P(1)), 1e-12));
      CHECK_THAT(operator_norm_numeric(t, kInf).value, WithinRel(operator_norm(t, kInf), 1e-12));
    }
  }
}

TEST_CASE("numeric norm is never below a dense grid", "[operators]") {
  Rng rng(23);
  for (const Exponent& p : {P(3), P(4), Exponent::real(2.5), Exponent::real(1.5)}) {
    for (int i = 0; i < 10; ++i) {
      const Operator2<double> t{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
      const double g = grid_norm(t, p, 200000);
      const double v = operator_norm_numeric(t, p).value;
      CHECK(v >= g * (1 - 1e-14));
      CHECK_THAT(v, WithinRel(g, 1e-6));
    }
  }
}

TEST_CASE("numeric attainment sets", "[operators]") {
  AttainmentSet s = mt_numeric({2, 0, 0, 1}, P(3));
  REQUIRE(s.points.size() == 2);
  CHECK(contains_point(s.points, VecN{1, 0}, 1e-6));
  CHECK(contains_point(s.points, VecN{-1, 0}, 1e-6));
  CHECK(s.certificate.kind == CertificateKind::Numeric);

  s = mt_numeric({1, 1, 1, 1}, P(2));
  REQUIRE(s.points.size() == 2);
  CHECK_THAT(s.norm_value, WithinAbs(2.0, 1e-12));
  CHECK(contains_point(s.points, VecN{std::sqrt(0.5), std::sqrt(0.5)}, 1e-6));

  const double r = std::sqrt(0.5);
  s = mt_numeric({r, -r, r, r}, P(2));
  CHECK(s.whole_sphere);
  CHECK(s.points.empty());

  CHECK_THROWS_AS(mt_numeric({0, 0, 0, 0}, P(2)), DegenerateOperator);
}

TEST_CASE("polyhedral attainment", "[operators]") {
  const PolyhedralAttainment ex = polyhedral_attainment(sup_norm_example_operator(), kInf);
  CHECK(ex.norm == 1);
  REQUIRE(ex.vertices.size() == 2);
  CHECK((ex.vertices[0] == QVecN{1, 1} || ex.vertices[1] == QVecN{1, 1}));
  CHECK(ex.edges.empty());

  // ||(x, y)||_1 attains ||diag(1,1/2)|| = 1 at ±e_1 only.
  const PolyhedralAttainment d = polyhedral_attainment({1, 0, 0, rat(1, 2)}, P(1));
  CHECK(d.norm == 1);
  CHECK(d.vertices.size() == 2);
  // A column-sum tie attains on the whole edge between e_1 and e_2.
  const PolyhedralAttainment e = polyhedral_attainment({1, 1, 0, 0}, P(1));
  CHECK(e.norm == 1);
  CHECK(e.vertices.size() == 4);
  CHECK_FALSE(e.edges.empty());
}

TEST_CASE("kernel", "[operators]") {
  KernelInfo<double> k = kernel(Operator2<double>{1, 1, 1, 1});
  REQUIRE(k.kind == KernelKind::Line);
  CHECK_THAT(k.direction[0] + k.direction[1], WithinAbs(0.0, 1e-15));
  CHECK(kernel(Operator2<double>{2, 0, 0, 1}).kind == KernelKind::Trivial);
  k = kernel(Operator2<double>{0, 1, 0, 2});
  REQUIRE(k.kind == KernelKind::Line);
  CHECK_THAT(k.direction[1], WithinAbs(0.0, 1e-15));
  CHECK(kernel(Operator2<double>{0, 0, 0, 0}).kind == KernelKind::Whole);
  const KernelInfo<Rational> q = kernel(QOperator2{1, 2, 2, 4});
  REQUIRE(q.kind == KernelKind::Line);
  CHECK(QOperator2{1, 2, 2, 4}.apply(q.direction).is_zero());
}

TEST_CASE("isometry multiples", "[operators]") {
  auto s = is_isometry_multiple(Operator2<double>{0, 2, -2, 0}, P(3));
  REQUIRE(s);
  CHECK(*s == 2.0);
  s = is_isometry_multiple(Operator2<double>{1, 1, -1, 1}, P(2));
  REQUIRE(s);
  CHECK_THAT(*s, WithinAbs(std::sqrt(2.0), 1e-15));
  CHECK_FALSE(is_isometry_multiple(Operator2<double>{1, 1, -1, 1}, P(3)));
  CHECK_FALSE(is_isometry_multiple(Operator2<double>{2, 0, 0, 1}, P(2)));
  CHECK(is_isometry_multiple(QOperator2{0, rat(-1, 3), rat(1, 3), 0}, kInf));
  CHECK(is_isometry_multiple(QOperator2{rat(3, 5), rat(-4, 5), rat(4, 5), rat(3, 5)}, P(2)));
  CHECK_FALSE(is_isometry_multiple(QOperator2{rat(3, 5), rat(-4, 5), rat(4, 5), rat(3, 5)}, P(4)));
}

TEST_CASE("daugavet residual and invariant lines", "[operators]") {
  for (const Exponent& p : {P(1), P(2), P(3), kInf}) {
    CHECK_THAT(daugavet_residual(Operator2<double>::identity(), p), WithinAbs(0.0, 1e-12));
    CHECK_THAT(daugavet_residual({-1, 0, 0, -1}, p), WithinAbs(2.0, 1e-12));
  }
  CHECK_THAT(daugavet_residual({1, 0, 0, 0.3}, P(2)), WithinAbs(0.0, 1e-14));

  CHECK(invariant_line_check({1, 0, 0, 0.3}, VecN{1, 0}, P(2)));
  const double r = std::sqrt(0.5);
  CHECK_FALSE(invariant_line_check({r, -r, r, r}, VecN{1, 0}, P(2)));
  CHECK_FALSE(invariant_line_check({1, 1, 0, 1}, VecN{1, 0}, P(2)));
  CHECK(invariant_line_check(QOperator2{1, 0, 0, rat(1, 3)}, QVecN{1, 0}, P(3)));
  CHECK_FALSE(invariant_line_check(QOperator2{1, 1, 0, 1}, QVecN{1, 0}, P(3)));
  CHECK_THROWS_AS(invariant_line_check({1, 0, 0, 0.3}, VecN{1, 0}, kInf), UnsupportedExponent);
}

TEST_CASE("sampled dense operator norm", "[operators]") {
  DenseOperator t(2, 2);
  t.at(0, 0) = 2;
  t.at(1, 1) = 1;
  CHECK_THAT(operator_norm_sampled(t, P(3), 200, 1).value, WithinAbs(2.0, 1e-9));
  const DenseOperator t1 = t.drop_column(0);
  CHECK(t1.cols() == 1);
  CHECK_THAT(operator_norm_sampled(t1, P(3), 50, 1).value, WithinAbs(1.0, 1e-9));

  Rng rng(2);
  Operator2<double> m{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
  DenseOperator dm(2, 2);
  dm.at(0, 0) = m.a;
  dm.at(0, 1) = m.b;
  dm.at(1, 0) = m.c;
  dm.at(1, 1) = m.d;
  CHECK_THAT(operator_norm_sampled(dm, P(3), 400, 3).value, WithinRel(operator_norm(m, P(3)), 1e-9));
}
