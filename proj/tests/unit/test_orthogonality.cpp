#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "banach/errors.hpp"
#include "banach/orthogonality.hpp"

using namespace banach;

namespace {

const Exponent kInf = Exponent::infinity();

Exponent P(int q) { return Exponent::integer(q); }

// Sign of d/dt ||x + t y|| at a point where the norm is smooth.
double directional_slope(const VecN& x, const VecN& y, const Exponent& p, double t, double h) {
  const VecN a{x[0] + (t + h) * y[0], x[1] + (t + h) * y[1]};
  const VecN b{x[0] + (t - h) * y[0], x[1] + (t - h) * y[1]};
  return (p_norm(a, p) - p_norm(b, p)) / (2 * h);
}

}  // namespace

TEST_CASE("orthogonality examples", "[orthogonality]") {
  const OrthVerdict v = bj_orthogonal(QVecN{1, 1}, QVecN{rat(-1, 2), 1}, kInf);
  CHECK(v.orthogonal);
  CHECK(v.method == OrthMethod::Exact);
  CHECK(v.deriv.d_minus == -0.5);
  CHECK(v.deriv.d_plus == 1.0);
  for (int beta : {-7, -1, 0, 2, 100}) CHECK(bj_orthogonal(QVecN{1, 0}, QVecN{0, beta}, kInf).orthogonal);
  CHECK(bj_orthogonal(VecN{1, 1}, VecN{-1, 1}, P(3)).orthogonal);
  CHECK(bj_orthogonal(QVecN{1, 1}, QVecN{-1, 1}, P(3)).orthogonal);
  CHECK_FALSE(bj_orthogonal(VecN{1, 1}, VecN{-1, 2}, P(3)).orthogonal);
  CHECK_THROWS_AS(bj_orthogonal(VecN{0, 0}, VecN{1, 0}, P(2)), DomainError);
  // Real exponents fall back to the float path.
  CHECK(bj_orthogonal(QVecN{1, 0}, QVecN{0, 1}, Exponent::real(2.5)).method == OrthMethod::Derivative);
}

TEST_CASE("brute-force oracle examples", "[orthogonality]") {
  CHECK(bj_bruteforce(VecN{1, 0}, VecN{0, 1}, P(2), -10, 10, 100000));
  CHECK_FALSE(bj_bruteforce(VecN{1, 0}, VecN{1, 0}, P(2), -10, 10, 100000));
  CHECK(bj_bruteforce(VecN{1, 1}, VecN{-0.5, 1}, kInf, -10, 10, 100000));
}

TEST_CASE("derivative verdict agrees with brute force", "[orthogonality]") {
  Rng rng(3);
  int checked = 0;
  for (const Exponent& p : {P(1), P(2), P(3), P(5), kInf}) {
    for (int i = 0; i < 400; ++i) {
      const QVecN x = rng.rational_vector(2 + i % 2, 5, 3);
      if (x.is_zero()) continue;
      // Half of the instances are orthogonal by construction.
      const QVecN y = i % 2 == 0 ? sample_orthogonal(x, p, rng) : rng.rational_vector(x.size(), 5, 3);
      if (y.is_zero()) continue;
      const bool exact = bj_orthogonal(x, y, p).orthogonal;
      CHECK(exact == bj_orthogonal(to_double(x), to_double(y), p).orthogonal);
      const bool brute = bj_bruteforce(to_double(x), to_double(y), p, -20, 20, 2000);
      // A dip below ||x|| smaller than the 1e-7 guard is beyond the oracle.
      if (brute != bj_bruteforce(to_double(x), to_double(y), p, -20, 20, 2000, 1e-12)) continue;
      CHECK(exact == brute);
      ++checked;
    }
  }
  CHECK(checked > 1500);
}

TEST_CASE("sampled orthogonal vectors are orthogonal", "[orthogonality]") {
  Rng rng(8);
  for (const Exponent& p : {P(1), P(2), P(3), kInf, Exponent::real(3.5)}) {
    for (int i = 0; i < 100; ++i) {
      const VecN x = rng.gaussian_vector(2 + i % 2);
      const VecN y = sample_orthogonal(x, p, rng);
      CHECK(bj_orthogonal(x, y, p, 1e-7).orthogonal);
      const VecN z = sample_reverse_orthogonal(x, p, rng);
      CHECK(bj_orthogonal(z, x, p, 1e-6).orthogonal);
    }
  }
  // Smooth case: the sampled functional is j(x) up to scale.
  Rng r2(1);
  const VecN f = sample_norming_functional(VecN{1, 2}, P(3), r2);
  CHECK(std::fabs(f[1] / f[0] - 4.0) < 1e-12);
}

TEST_CASE("half-line cones", "[orthogonality]") {
  for (const Exponent& p : {P(1), P(2), P(3), kInf}) {
    const VecN x{2, -1};
    CHECK(in_plus(x, x, p));
    CHECK_FALSE(in_minus(x, x, p));
    CHECK(in_plus(x, VecN{0, 0}, p));
    CHECK(in_minus(x, VecN{0, 0}, p));
    CHECK(in_plus(QVecN{2, -1}, QVecN{2, -1}, p));
    CHECK_FALSE(in_minus(QVecN{2, -1}, QVecN{2, -1}, p));
  }
  // Smooth p: in_plus agrees with the sign of the central slope.
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const VecN x = rng.gaussian_vector(2);
    const VecN y = rng.gaussian_vector(2);
    const double s = directional_slope(x, y, P(3), 0.0, 1e-6);
    if (std::fabs(s) < 1e-4) continue;
    CHECK(in_plus(x, y, P(3)) == (s > 0));
    CHECK(in_minus(x, y, P(3)) == (s < 0));
  }
}

TEST_CASE("left and right symmetric points", "[orthogonality]") {
  CHECK(check_left_symmetric(VecN{1, 1}, P(3), 2, 500, 1).status == SymmetryStatus::HoldsOnSample);
  CHECK(check_left_symmetric(VecN{1, 0}, P(2), 2, 500, 1).status == SymmetryStatus::HoldsOnSample);
  CHECK(check_left_symmetric(VecN{0.3, -0.7}, P(2), 2, 500, 1).status == SymmetryStatus::HoldsOnSample);
  CHECK(check_right_symmetric(VecN{1, 0}, P(3), 2, 1000, 2).status == SymmetryStatus::HoldsOnSample);
  CHECK(check_right_symmetric(VecN{1, 0}, P(2), 2, 1000, 2).status == SymmetryStatus::HoldsOnSample);
  CHECK(check_right_symmetric(VecN{1, 1}, kInf, 2, 1000, 2).status == SymmetryStatus::HoldsOnSample);

  const SymmetryVerdict v = check_left_symmetric(VecN{1, 1}, kInf, 2, 1000, 3);
  REQUIRE(v.status == SymmetryStatus::Refuted);
  REQUIRE(v.witness);
  CHECK(bj_orthogonal(VecN{1, 1}, *v.witness, kInf).orthogonal);
  CHECK_FALSE(bj_bruteforce(*v.witness, VecN{1, 1}, kInf, -10, 10, 100000));
  // The documented witness: y = (-1/2, 1) with ||y - x/4|| = 3/4 < ||y||.
  CHECK(p_norm(VecN{-0.75, 0.75}, kInf) < p_norm(VecN{-0.5, 1}, kInf));
  CHECK_FALSE(bj_orthogonal(VecN{-0.5, 1}, VecN{1, 1}, kInf).orthogonal);

  // A generic point of l_3^2 is neither.
  CHECK(check_left_symmetric(VecN{1, 0.4}, P(3), 2, 1000, 4).status == SymmetryStatus::Refuted);
}
