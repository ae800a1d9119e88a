#pragma once

#include <cstdint>

#include "nvqm/qcore.hpp"

namespace nvqm {

/// Schmidt angle chi in [0, pi/2] radians.
class SchmidtAngle {
 public:
  explicit SchmidtAngle(double chi);
  double radians() const noexcept { return chi_; }

 private:
  double chi_;
};

/// Mixing weight q in [0, 1] of the Bell-plus-noise family.
class WernerWeight {
 public:
  explicit WernerWeight(double q);
  double value() const noexcept { return q_; }

 private:
  double q_;
};

/// cos(chi)|0 down> + sin(chi)|-1 up>.
DensityMatrix schmidt_state(SchmidtAngle chi);

/// (|0 down> + |-1 up>)/sqrt(2).
DensityMatrix bell_state();

/// (1-q)/4 * 1 + q |Phi+><Phi+|.
DensityMatrix werner_state(WernerWeight q);

DensityMatrix product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b);

/// Projector onto a normalized vector of four i.i.d. complex Gaussians (Haar).
DensityMatrix random_pure(std::uint64_t seed);

/// G G^dagger / tr(G G^dagger), G a 4x4 complex Ginibre matrix.
DensityMatrix random_mixed(std::uint64_t seed);

/// Haar-random 2x2 unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary2(std::uint64_t seed);

}  // namespace nvqm
