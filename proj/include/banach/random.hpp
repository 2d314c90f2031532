#pragma once

#include <cstdint>
#include <random>

#include "banach/rational.hpp"
#include "banach/vector.hpp"

namespace banach {

/// splitmix64 finalizer; derives independent per-trial seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Seeded generator with distributions implemented in-house so that streams
/// are identical across standard libraries (std::*_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi);
  /// Uniform double in [0, 1).
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Standard normal via Box-Muller.
  double gaussian();
  /// n/d with d uniform in [1, max_den] and n uniform in [-max_num, max_num].
  Rational rational(long max_num, long max_den);

  VecN gaussian_vector(std::size_t n);
  QVecN rational_vector(std::size_t n, long max_num, long max_den);

 private:
  std::mt19937_64 engine_;
};

}  // namespace banach
