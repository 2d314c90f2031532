#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "banach/errors.hpp"
#include "banach/random.hpp"
#include "banach/space_core.hpp"

using namespace banach;
using Catch::Matchers::WithinAbs;

namespace {

const Exponent kInf = Exponent::infinity();

Exponent P(int q) { return Exponent::integer(q); }

}  // namespace

TEST_CASE("exponent classification", "[space_core]") {
  CHECK(P(3).smooth());
  CHECK(P(2).strictly_convex());
  CHECK_FALSE(P(1).smooth());
  CHECK_FALSE(kInf.smooth());
  CHECK(Exponent::real(2.5).smooth());
  CHECK_FALSE(Exponent::real(2.5).exact_capable());
  CHECK(Exponent::parse("inf").is_infinity());
  CHECK(Exponent::parse("4") == P(4));
  CHECK(Exponent::from_double(3.0) == P(3));
  CHECK(Exponent::from_double(1.5).kind() == Exponent::Kind::Real);
  CHECK_THROWS(Exponent::parse("0.5"));
  CHECK_THROWS(Exponent::parse("two"));
}

TEST_CASE("p-norm closed forms", "[space_core]") {
  CHECK(p_norm(VecN{3, 4}, P(2)) == 5.0);
  CHECK(p_norm(VecN{1, 1}, kInf) == 1.0);
  CHECK_THAT(p_norm(VecN{1, 1}, P(3)), WithinAbs(std::cbrt(2.0), 1e-15));
  CHECK(p_norm(VecN{-2, 1, 0.5}, P(1)) == 3.5);
  CHECK_THAT(p_norm(VecN{1, 2}, Exponent::real(2.5)), WithinAbs(std::pow(1 + std::pow(2.0, 2.5), 0.4), 1e-14));
  CHECK_THROWS_AS(p_norm(VecN{1, std::numeric_limits<double>::infinity()}, P(2)), DomainError);
  CHECK_THROWS_AS(p_norm(VecN{std::nan(""), 0}, P(2)), DomainError);
}

TEST_CASE("exact norm powers and enclosures", "[space_core]") {
  CHECK(norm_power(QVecN{rat(1, 2), rat(-1, 3)}, P(3)) == rat(1, 8) + rat(1, 27));
  CHECK(norm_power(QVecN{rat(1, 2), rat(-2, 3)}, kInf) == rat(2, 3));
  CHECK(is_unit(QVecN{rat(3, 5), rat(4, 5)}, P(2)));
  CHECK_FALSE(is_unit(QVecN{rat(3, 5), rat(4, 5)}, P(3)));
  CHECK(is_unit(VecN{0.6, 0.8}, P(2)));

  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const QVecN v = rng.rational_vector(2, 20, 9);
    for (int q : {2, 3, 5}) {
      const QInterval e = p_norm_enclosure(v, P(q), 60);
      const double f = p_norm(to_double(v), P(q));
      CHECK(e.lo().get_d() <= f * (1 + 1e-15));
      CHECK(e.hi().get_d() >= f * (1 - 1e-15));
      CHECK(e.width().get_d() <= std::ldexp(1.0, -59) * std::max(1.0, f));
    }
  }
}

TEST_CASE("one-sided derivative examples", "[space_core]") {
  DerivPair d = one_sided_derivative(VecN{1, 0}, VecN{0, 1}, P(1));
  CHECK(d.d_minus == -1.0);
  CHECK(d.d_plus == 1.0);
  d = one_sided_derivative(VecN{1, 0}, VecN{0, 1}, kInf);
  CHECK(d.d_minus == 0.0);
  CHECK(d.d_plus == 0.0);
  d = one_sided_derivative(VecN{3, 4}, VecN{1, 0}, P(2));
  CHECK_THAT(d.d_minus, WithinAbs(0.6, 1e-15));
  CHECK_THAT(d.d_plus, WithinAbs(0.6, 1e-15));
  CHECK_THROWS_AS(one_sided_derivative(VecN{0, 0}, VecN{1, 0}, P(2)), DomainError);
  CHECK_THROWS_AS(one_sided_derivative(QVecN{0, 0}, QVecN{1, 0}, P(3)), DomainError);
}

TEST_CASE("support coordinates", "[space_core]") {
  CHECK(support_coords(VecN{1, 1}, P(3)) == VecN{1, 1});
  CHECK(support_coords(VecN{-2, 1}, P(2)) == VecN{-2, 1});
  CHECK(support_coords(VecN{-2, 3}, P(3)) == VecN{-4, 9});
  CHECK(support_coords(QVecN{rat(-1, 2), rat(1, 3)}, P(4)) == QVecN{rat(-1, 8), rat(1, 27)});
  CHECK_THROWS_AS(support_coords(VecN{1, 0}, P(1)), UnsupportedExponent);
  CHECK_THROWS_AS(support_coords(VecN{1, 0}, kInf), UnsupportedExponent);
}

TEST_CASE("finite-difference oracle brackets the derivative", "[space_core]") {
  const DerivPair e = deriv_oracle(VecN{1, 0}, VecN{0, 1}, P(2), 1e-6);
  CHECK_THAT(e.d_minus, WithinAbs(0.0, 1e-6));
  CHECK_THAT(e.d_plus, WithinAbs(0.0, 1e-6));
  const DerivPair c = deriv_oracle(VecN{1, 0}, VecN{1, 0}, P(2), 1e-6);
  CHECK_THAT(c.d_minus, WithinAbs(1.0, 1e-9));
  CHECK_THAT(c.d_plus, WithinAbs(1.0, 1e-9));

  Rng rng(5);
  for (const Exponent& p : {P(1), P(2), P(3), P(5), kInf, Exponent::real(2.5)}) {
    for (int i = 0; i < 300; ++i) {
      const std::size_t n = 2 + i % 2;
      VecN x(n);
      VecN y(n);
      for (std::size_t k = 0; k < n; ++k) {
        x[k] = rng.uniform(-10, 10);
        y[k] = rng.uniform(-10, 10);
      }
      // Kinks: a zero coordinate (p = 1) and a tied maximum (p = inf).
      if (i % 5 == 0) {
        x[0] = 0.0;
      } else if (i % 7 == 0) {
        x[1] = -x[0];
      }
      const DerivPair d = one_sided_derivative(x, y, p);
      CHECK(d.d_minus <= d.d_plus);
      const DerivPair o = deriv_oracle(x, y, p, 1e-3);
      const double slack = 1e-9 * (1 + std::fabs(d.d_plus));
      CHECK(o.d_minus <= d.d_minus + slack);
      CHECK(d.d_plus <= o.d_plus + slack);
    }
  }
}

TEST_CASE("exact and float derivatives agree", "[space_core]") {
  Rng rng(21);
  for (const Exponent& p : {P(1), P(2), P(3), P(4), kInf}) {
    for (int i = 0; i < 200; ++i) {
      QVecN x = rng.rational_vector(2 + i % 2, 6, 4);
      if (x.is_zero()) continue;
      const QVecN y = rng.rational_vector(x.size(), 6, 4);
      const DerivPair exact = one_sided_derivative(x, y, p).to_double();
      const DerivPair fl = one_sided_derivative(to_double(x), to_double(y), p);
      CHECK_THAT(exact.d_minus, WithinAbs(fl.d_minus, 1e-12 * (1 + std::fabs(fl.d_minus))));
      CHECK_THAT(exact.d_plus, WithinAbs(fl.d_plus, 1e-12 * (1 + std::fabs(fl.d_plus))));
    }
  }
}
