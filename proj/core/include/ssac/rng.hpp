#pragma once

#include <complex>
#include <cstdint>

namespace ssac {

/// Deterministic random source. Gaussian variates are produced by Box-Muller
/// on the raw 64-bit stream so that sequences are identical across standard
/// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream for trial `index` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal.
  double normal();
  /// Circularly symmetric complex normal with unit variance.
  std::complex<double> complex_normal();

 private:
  std::uint64_t state_[4];
};

}  // namespace ssac
