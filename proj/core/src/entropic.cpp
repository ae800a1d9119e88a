#include "nvqm/entropic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace nvqm {

namespace {

constexpr double kProbabilitySlack = 1e-12;
constexpr double kLogFloor = 1e-12;
constexpr double kAxisNorm = 1e-12;

double plogp(double p) { return p < kLogFloor ? 0.0 : -p * std::log2(p); }

// Spectrum of a validated state in one eigensolve.
std::vector<double> state_spectrum(const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() == 0) throw InvalidState("state matrix must be square");
  if (hermiticity_defect(rho) > tol::kHermitian) throw InvalidState("state is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol::kTrace) throw InvalidState("state trace is not 1");
  auto values = hermitian_eigenvalues(rho);
  if (values.back() < -tol::kPsd) {
    std::ostringstream msg;
    msg << "state is not positive semidefinite (eigenvalue " << values.back() << ")";
    throw InvalidState(msg.str());
  }
  for (auto& v : values) v = std::max(v, 0.0);
  return values;
}

}  // namespace

PauliObservable::PauliObservable(const Vec3& axis) : axis_(axis) {
  const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(std::abs(n - 1.0) <= kAxisNorm)) {
    throw std::invalid_argument("observable axis must be a unit vector");
  }
}

ComplexMatrix PauliObservable::matrix() const {
  ComplexMatrix m(2, 2);
  for (int i = 0; i < 3; ++i) m += pauli::sigma(i + 1) * axis_[static_cast<std::size_t>(i)];
  return m;
}

std::array<ComplexMatrix, 2> PauliObservable::projectors() const {
  const ComplexMatrix id = pauli::identity();
  const ComplexMatrix n = matrix();
  return {(id + n) * 0.5, (id - n) * 0.5};
}

double binary_entropy(double p) {
  if (!(p >= -kProbabilitySlack && p <= 1.0 + kProbabilitySlack)) {
    std::ostringstream msg;
    msg << "binary_entropy: probability " << p << " outside [0, 1]";
    throw DomainError(msg.str());
  }
  p = std::clamp(p, 0.0, 1.0);
  return plogp(p) + plogp(1.0 - p);
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  double s = 0.0;
  for (double v : state_spectrum(rho)) s += plogp(v);
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

DensityMatrix post_measurement_state(const DensityMatrix& rho, const PauliObservable& lambda) {
  const ComplexMatrix id = pauli::identity();
  ComplexMatrix out(4, 4);
  for (const auto& p : lambda.projectors()) {
    const ComplexMatrix pa = tensor(p, id);
    out += pa * rho.matrix() * pa;
  }
  return DensityMatrix::from_matrix(out);
}

double conditional_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace(rho, Subsystem::B));
}

double measured_conditional_entropy(const DensityMatrix& rho, const PauliObservable& lambda) {
  return conditional_entropy(post_measurement_state(rho, lambda));
}

double uncertainty_generic(const DensityMatrix& rho, const PauliObservable& q,
                           const PauliObservable& r) {
  return measured_conditional_entropy(rho, q) + measured_conditional_entropy(rho, r);
}

double uncertainty_closed(const BlochForm& b) {
  double u = 0.0;
  for (const std::size_t l : {std::size_t{0}, std::size_t{2}}) {
    for (int mu = 0; mu < 2; ++mu) {
      const double smu = mu == 0 ? 1.0 : -1.0;
      double r2 = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        const double c = b.y[i] + smu * b.t[l][i];
        r2 += c * c;
      }
      const double radius = std::sqrt(r2);
      for (int nu = 0; nu < 2; ++nu) {
        const double snu = nu == 0 ? 1.0 : -1.0;
        const double eta = (1.0 + smu * b.x[l] + snu * radius) / 4.0;
        if (!(eta >= -kProbabilitySlack && eta <= 1.0 + kProbabilitySlack)) {
          std::ostringstream msg;
          msg << "uncertainty_closed: eta = " << eta << " outside [0, 1]; Bloch data inconsistent";
          throw DomainError(msg.str());
        }
        u += plogp(std::clamp(eta, 0.0, 1.0));
      }
    }
  }
  return u - 2.0 * binary_entropy((1.0 - b.y_norm()) / 2.0);
}

double complementarity(const PauliObservable& q, const PauliObservable& r) {
  double c = 0.0;
  for (const auto& pq : q.projectors())
    for (const auto& pr : r.projectors()) c = std::max(c, (pq * pr).trace().real());
  return c;
}

double lower_bound(const DensityMatrix& rho) {
  const BlochForm b = bloch_decompose(rho);
  return von_neumann_entropy(rho) + 1.0 - binary_entropy((1.0 - b.y_norm()) / 2.0);
}

double lower_bound_generic(const DensityMatrix& rho, const PauliObservable& q,
                           const PauliObservable& r) {
  return std::log2(1.0 / complementarity(q, r)) + conditional_entropy(rho);
}

double measurement_estimate(const BlochForm& b) {
  const auto kappa = [](double t) {
    if (!(t >= -1.0 - kProbabilitySlack && t <= 1.0 + kProbabilitySlack)) {
      std::ostringstream msg;
      msg << "measurement_estimate: correlation " << t << " outside [-1, 1]";
      throw DomainError(msg.str());
    }
    return (1.0 - std::clamp(t, -1.0, 1.0)) / 2.0;
  };
  return binary_entropy(kappa(b.t[0][0])) + binary_entropy(kappa(b.t[2][2]));
}

UncertaintyReport uncertainty_report(const DensityMatrix& rho) {
  const auto q = PauliObservable::sigma1();
  const auto r = PauliObservable::sigma3();
  const BlochForm b = bloch_decompose(rho);

  UncertaintyReport rep;
  rep.s_q_given_b = measured_conditional_entropy(rho, q);
  rep.s_r_given_b = measured_conditional_entropy(rho, r);
  rep.s_a_given_b = conditional_entropy(rho);
  rep.u = rep.s_q_given_b + rep.s_r_given_b;
  rep.ub = lower_bound(rho);
  rep.me = measurement_estimate(b);
  rep.c = complementarity(q, r);
  return rep;
}

}  // namespace nvqm
