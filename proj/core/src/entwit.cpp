#include "nvqm/entwit.hpp"

#include <algorithm>
#include <cmath>

namespace nvqm {

namespace {
constexpr double kWitnessMargin = 1e-12;
}

double concurrence(const DensityMatrix& rho) {
  // lambda_i are the singular values of tau_ij = v_i^T (s2 x s2) v_j, where
  // v_i = sqrt(p_i) e_i run over the eigen-decomposition of rho. s2 x s2 is
  // real, so this equals <v_i| tilde v_j> up to conjugation.
  const ComplexMatrix yy = tensor(pauli::sigma2(), pauli::sigma2());
  const HermitianEigen eig = hermitian_eigen(rho.matrix());
  ComplexMatrix v = eig.vectors;
  for (std::size_t k = 0; k < 4; ++k) {
    const double w = std::sqrt(std::max(eig.values[k], 0.0));
    for (std::size_t r = 0; r < 4; ++r) v(r, k) *= w;
  }
  ComplexMatrix vt(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) vt(r, c) = v(c, r);
  const auto lam = singular_values(vt * yy * v);  // descending
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

WitnessVerdict witness(const UncertaintyReport& report) {
  WitnessVerdict v;
  v.u = report.u;
  v.threshold = std::log2(1.0 / report.c);
  v.entangled_certified = report.u < v.threshold - kWitnessMargin;
  return v;
}

double witness_threshold_q() {
  // 2 H((1-q)/2) decreases from 2 at q = 0 to 0 at q = 1.
  const auto f = [](double q) { return 2.0 * binary_entropy((1.0 - q) / 2.0) - 1.0; };
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace nvqm
