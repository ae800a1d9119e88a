#include "nvqm/states.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "nvqm/random.hpp"

namespace nvqm {

SchmidtAngle::SchmidtAngle(double chi) : chi_(chi) {
  if (!(chi >= 0.0 && chi <= std::numbers::pi / 2)) {
    throw std::out_of_range("Schmidt angle " + std::to_string(chi) + " outside [0, pi/2]");
  }
}

WernerWeight::WernerWeight(double q) : q_(q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::out_of_range("Werner weight " + std::to_string(q) + " outside [0, 1]");
  }
}

DensityMatrix schmidt_state(SchmidtAngle chi) {
  const double c = std::cos(chi.radians());
  const double s = std::sin(chi.radians());
  const std::array<Complex, 4> ket{c, 0.0, 0.0, s};
  return DensityMatrix::from_ket(ket);
}

DensityMatrix bell_state() {
  const double h = std::numbers::sqrt2 / 2;
  const std::array<Complex, 4> ket{h, 0.0, 0.0, h};
  return DensityMatrix::from_ket(ket);
}

DensityMatrix werner_state(WernerWeight q) {
  const double w = q.value();
  ComplexMatrix m = ComplexMatrix::identity(4) * ((1.0 - w) / 4.0);
  m += bell_state().matrix() * w;
  return DensityMatrix::from_matrix(m);
}

DensityMatrix product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b) {
  validate_state(rho_a);
  validate_state(rho_b);
  return DensityMatrix::from_matrix(tensor(rho_a, rho_b));
}

DensityMatrix random_pure(std::uint64_t seed) {
  Rng rng(seed);
  std::array<Complex, 4> ket{};
  for (auto& z : ket) z = rng.complex_gaussian();
  return DensityMatrix::from_ket(ket);
}

DensityMatrix random_mixed(std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix g(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) g(r, c) = rng.complex_gaussian();
  ComplexMatrix m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  return DensityMatrix::from_matrix(m);
}

ComplexMatrix random_unitary2(std::uint64_t seed) {
  Rng rng(seed);
  std::array<Complex, 4> g{};
  for (auto& z : g) z = rng.complex_gaussian();
  // Gram-Schmidt on the columns; dividing by |r_kk| only via normalization
  // keeps the r_kk phases real positive, which is the Haar-correct choice.
  Complex c0[2] = {g[0], g[2]};
  Complex c1[2] = {g[1], g[3]};
  const double n0 = std::sqrt(std::norm(c0[0]) + std::norm(c0[1]));
  c0[0] /= n0;
  c0[1] /= n0;
  const Complex proj = std::conj(c0[0]) * c1[0] + std::conj(c0[1]) * c1[1];
  c1[0] -= proj * c0[0];
  c1[1] -= proj * c0[1];
  const double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
  c1[0] /= n1;
  c1[1] /= n1;
  return {2, 2, {c0[0], c1[0], c0[1], c1[1]}};
}

}  // namespace nvqm
