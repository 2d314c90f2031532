#include "banach/random.hpp"

#include <cmath>
#include <numbers>

namespace banach {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long Rng::uniform_int(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Rational Rng::rational(long max_num, long max_den) {
  const long d = uniform_int(1, max_den);
  const long n = uniform_int(-max_num, max_num);
  return rat(n, d);
}

VecN Rng::gaussian_vector(std::size_t n) {
  VecN v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = gaussian();
  return v;
}

QVecN Rng::rational_vector(std::size_t n, long max_num, long max_den) {
  QVecN v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rational(max_num, max_den);
  return v;
}

}  // namespace banach
