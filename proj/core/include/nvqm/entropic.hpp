#pragma once

#include <array>
#include <stdexcept>

#include "nvqm/qcore.hpp"

namespace nvqm {

/// Raised when a probability or tensor entry lies outside its domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Spin observable n . sigma on a qubit, n a unit vector.
class PauliObservable {
 public:
  /// Throws std::invalid_argument unless |axis| = 1 within 1e-12.
  explicit PauliObservable(const Vec3& axis);

  static PauliObservable sigma1() { return PauliObservable({1.0, 0.0, 0.0}); }
  static PauliObservable sigma3() { return PauliObservable({0.0, 0.0, 1.0}); }

  const Vec3& axis() const noexcept { return axis_; }
  ComplexMatrix matrix() const;
  /// Eigenprojectors (1 + n.sigma)/2 and (1 - n.sigma)/2, outcome +1 first.
  std::array<ComplexMatrix, 2> projectors() const;

  friend bool operator==(const PauliObservable&, const PauliObservable&) = default;

 private:
  Vec3 axis_;
};

/// Entropies are in bits. 0 log 0 is taken as 0.

/// H(p) = -p log p - (1-p) log(1-p). p within 1e-12 of [0, 1] is clamped;
/// further out throws DomainError.
double binary_entropy(double p);

/// -sum lambda log lambda over the spectrum; eigenvalues below 1e-12 are
/// dropped. Throws InvalidState for non-states.
double von_neumann_entropy(const ComplexMatrix& rho);
double von_neumann_entropy(const DensityMatrix& rho);

/// sum_m (P_m (x) 1) rho (P_m (x) 1) over the eigenprojectors of lambda on A.
DensityMatrix post_measurement_state(const DensityMatrix& rho, const PauliObservable& lambda);

/// S(A|B) = S(rho_AB) - S(rho_B).
double conditional_entropy(const DensityMatrix& rho);

/// S(Lambda|B): conditional entropy of the post-measurement state.
double measured_conditional_entropy(const DensityMatrix& rho, const PauliObservable& lambda);

/// S(Q|B) + S(R|B) computed from explicit post-measurement states.
double uncertainty_generic(const DensityMatrix& rho, const PauliObservable& q,
                           const PauliObservable& r);

/// Closed-form S(sigma1|B) + S(sigma3|B) from the Bloch data alone:
///
///   eta(mu, nu; l) = [1 + (-1)^mu x_l + (-1)^nu |y + (-1)^mu T_l.|] / 4
///   U = -sum_{mu,nu; l in {1,3}} eta log eta - 2 H((1 - |y|)/2)
///
/// Only the (sigma1, sigma3) pair is supported. Throws DomainError if some
/// eta falls outside [0, 1] by more than 1e-12.
double uncertainty_closed(const BlochForm& b);

/// max over eigenvector pairs of |<phi_a|psi_b>|^2, via tr(P_a P_b).
double complementarity(const PauliObservable& q, const PauliObservable& r);

/// Bound for (sigma1, sigma3): S(rho_AB) + 1 - H((1 - |y|)/2).
double lower_bound(const DensityMatrix& rho);

/// log2(1/c) + S(A|B) for an arbitrary observable pair.
double lower_bound_generic(const DensityMatrix& rho, const PauliObservable& q,
                           const PauliObservable& r);

/// H((1 - T11)/2) + H((1 - T33)/2). Throws DomainError when T11 or T33 is
/// outside [-1, 1] beyond rounding.
double measurement_estimate(const BlochForm& b);

struct UncertaintyReport {
  double u = 0.0;   // S(Q|B) + S(R|B)
  double ub = 0.0;  // lower bound
  double me = 0.0;  // measurement estimate
  double c = 0.0;   // complementarity
  double s_q_given_b = 0.0;
  double s_r_given_b = 0.0;
  double s_a_given_b = 0.0;
};

/// Every quantity above for Q = sigma1, R = sigma3.
UncertaintyReport uncertainty_report(const DensityMatrix& rho);

}  // namespace nvqm
