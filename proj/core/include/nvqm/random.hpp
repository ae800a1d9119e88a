#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace nvqm {

/// Seeded source of uniform and Gaussian variates.
///
/// Stream mapping: the seed initializes std::mt19937_64 directly. Uniform
/// doubles take the top 53 bits of one engine output, u = (x >> 11) * 2^-53,
/// giving values in [0, 1). Gaussians use the basic Box-Muller transform on
/// two consecutive uniforms (u1 is replaced by 1 - u1 so the log argument is
/// in (0, 1]); both outputs of a pair are returned, cosine branch first.
/// Nothing here depends on std::*_distribution, whose output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double gaussian();
  std::complex<double> complex_gaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Derives an independent-looking seed for worker or stream `index` (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace nvqm
