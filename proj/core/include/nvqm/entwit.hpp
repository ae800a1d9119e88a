#pragma once

#include "nvqm/entropic.hpp"
#include "nvqm/qcore.hpp"

namespace nvqm {

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), where the l_i are the
/// square roots of the eigenvalues of rho (s2 x s2) rho* (s2 x s2), obtained
/// directly as singular values so pure states keep full precision.
double concurrence(const DensityMatrix& rho);

struct WitnessVerdict {
  double u = 0.0;
  double threshold = 0.0;  // log2(1/c)
  bool entangled_certified = false;
};

/// Certifies entanglement when U < log2(1/c) - 1e-12. A negative S(A|B) is
/// required for that, which no separable state has.
WitnessVerdict witness(const UncertaintyReport& report);

/// Werner weight q* where 2 H((1-q)/2) = 1, by bisection to 1e-10.
double witness_threshold_q();

}  // namespace nvqm
