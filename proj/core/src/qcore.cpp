#include "nvqm/qcore.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace nvqm {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::initializer_list<Complex> entries)
    : ComplexMatrix(rows, cols, std::vector<Complex>(entries)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

void ComplexMatrix::check_index(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) {
    throw std::out_of_range("ComplexMatrix index (" + std::to_string(r) + ", " +
                            std::to_string(c) + ") out of range");
  }
}

Complex& ComplexMatrix::operator()(std::size_t r, std::size_t c) {
  check_index(r, c);
  return data_[r * cols_ + c];
}

const Complex& ComplexMatrix::operator()(std::size_t r, std::size_t c) const {
  check_index(r, c);
  return data_[r * cols_ + c];
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.data_[c * rows_ + r] = std::conj(data_[r * cols_ + c]);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace of a non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += data_[i * cols_ + i];
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("ComplexMatrix: shape mismatch in addition");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("ComplexMatrix: shape mismatch in subtraction");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("ComplexMatrix: shape mismatch in product");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex ark = a.data_[r * a.cols_ + k];
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) out.data_[r * b.cols_ + c] += ark * b.data_[k * b.cols_ + c];
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
  return worst;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermiticity_defect: non-square matrix");
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c) worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac)
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
  return out;
}

ComplexMatrix outer(std::span<const Complex> ket) {
  ComplexMatrix out(ket.size(), ket.size());
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < ket.size(); ++c) out(r, c) = ket[r] * std::conj(ket[c]);
  return out;
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m) { return u * m * u.adjoint(); }

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix sigma1() { return {2, 2, {0.0, 1.0, 1.0, 0.0}}; }
ComplexMatrix sigma2() { return {2, 2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}}; }
ComplexMatrix sigma3() { return {2, 2, {1.0, 0.0, 0.0, -1.0}}; }
ComplexMatrix sigma(int i) {
  switch (i) {
    case 1: return sigma1();
    case 2: return sigma2();
    case 3: return sigma3();
    default: throw std::out_of_range("pauli::sigma index must be 1, 2 or 3");
  }
}
}  // namespace pauli

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  if (!m.is_square()) throw NotHermitian("hermitian_eigen: matrix is not square");
  const double defect = hermiticity_defect(m);
  if (defect > tol::kEigenInput) {
    std::ostringstream msg;
    msg << "hermitian_eigen: hermiticity defect " << defect << " exceeds " << tol::kEigenInput;
    throw NotHermitian(msg.str());
  }

  const std::size_t n = m.rows();
  ComplexMatrix a = (m + m.adjoint()) * 0.5;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = tol::kJacobiOffDiagonal * std::max(1.0, frobenius_norm(a));

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        // Unitary rotation in the (p, q) plane: phase column q so a(p, q) is
        // real, then a real Givens rotation that annihilates it.
        const Complex phase = apq / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * r, aqq - app);
        const double cs = std::cos(theta);
        const double sn = std::sin(theta);
        const Complex upp = cs;
        const Complex upq = sn;
        const Complex uqp = -sn * std::conj(phase);
        const Complex uqq = cs * std::conj(phase);

        // a <- a U (columns p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        // a <- U^dagger a (rows p, q)
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) { return hermitian_eigen(m).values; }

std::vector<double> singular_values(const ComplexMatrix& m) {
  ComplexMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  constexpr int kMaxSweeps = 100;
  constexpr double kOrthogonality = 1e-15;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t k = 0; k < rows; ++k) {
          alpha += std::norm(a(k, p));
          beta += std::norm(a(k, q));
          gamma += std::conj(a(k, p)) * a(k, q);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kOrthogonality * std::sqrt(alpha * beta)) continue;
        rotated = true;
        // Phase column q so the overlap is real, then a plane rotation.
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < rows; ++k) {
          const Complex ap = a(k, p);
          const Complex aq = a(k, q) * phase;
          a(k, p) = c * ap - s * aq;
          a(k, q) = s * ap + c * aq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> values(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    double s = 0.0;
    for (std::size_t k = 0; k < rows; ++k) s += std::norm(a(k, c));
    values[c] = std::sqrt(s);
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

void validate_state(const ComplexMatrix& m) {
  if (!m.is_square() || m.rows() == 0) throw InvalidState("state matrix must be square and nonempty");
  const double defect = hermiticity_defect(m);
  if (defect > tol::kHermitian) {
    std::ostringstream msg;
    msg << "state is not Hermitian (defect " << defect << ")";
    throw InvalidState(msg.str());
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    std::ostringstream msg;
    msg << "state trace " << tr.real() << (tr.imag() < 0 ? "-" : "+") << std::abs(tr.imag())
        << "i is not 1";
    throw InvalidState(msg.str());
  }
  const auto values = hermitian_eigenvalues(m);
  if (values.back() < -tol::kPsd) {
    std::ostringstream msg;
    msg << "state is not positive semidefinite (eigenvalue " << values.back() << ")";
    throw InvalidState(msg.str());
  }
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m) {
  if (m.rows() != kDim || m.cols() != kDim) throw InvalidState("two-qubit state must be 4x4");
  validate_state(m);
  return DensityMatrix((m + m.adjoint()) * 0.5);
}

DensityMatrix DensityMatrix::from_ket(std::span<const Complex> ket) {
  if (ket.size() != kDim) throw InvalidState("two-qubit ket must have 4 amplitudes");
  double norm2 = 0.0;
  for (const auto& z : ket) norm2 += std::norm(z);
  if (!(norm2 > 0.0)) throw InvalidState("ket has zero norm");
  ComplexMatrix m = outer(ket) * (1.0 / norm2);
  return from_matrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(ComplexMatrix::identity(kDim) * 0.25); }

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

ComplexMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  ComplexMatrix out(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < 2; ++k) {
        s += keep == Subsystem::A ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
      }
      out(i, j) = s;
    }
  }
  return out;
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  // For a pure argument F = tr(a b) exactly; the square-root route would
  // turn rounding-level eigenvalues into errors near 1e-8.
  constexpr double kPure = 1e-12;
  if (a.purity() > 1.0 - kPure || b.purity() > 1.0 - kPure) return (a.matrix() * b.matrix()).trace().real();
  const auto clamp_sqrt = [](double x) { return std::sqrt(std::max(x, 0.0)); };
  const ComplexMatrix sa = hermitian_function(a.matrix(), clamp_sqrt);
  const ComplexMatrix inner = sa * b.matrix() * sa;
  double root_trace = 0.0;
  for (double v : hermitian_eigenvalues((inner + inner.adjoint()) * 0.5)) root_trace += clamp_sqrt(v);
  return root_trace * root_trace;
}

double BlochForm::y_norm() const { return std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]); }

BlochForm bloch_decompose(const DensityMatrix& rho) {
  const ComplexMatrix id = pauli::identity();
  const auto expect = [&](const ComplexMatrix& op) { return (rho.matrix() * op).trace().real(); };
  BlochForm b;
  for (int i = 1; i <= 3; ++i) {
    const ComplexMatrix si = pauli::sigma(i);
    b.x[i - 1] = expect(tensor(si, id));
    b.y[i - 1] = expect(tensor(id, si));
    for (int j = 1; j <= 3; ++j) b.t[i - 1][j - 1] = expect(tensor(si, pauli::sigma(j)));
  }
  return b;
}

DensityMatrix bloch_compose(const BlochForm& b) {
  const ComplexMatrix id = pauli::identity();
  ComplexMatrix m = tensor(id, id);
  for (int i = 1; i <= 3; ++i) {
    const ComplexMatrix si = pauli::sigma(i);
    m += tensor(si, id) * b.x[i - 1];
    m += tensor(id, si) * b.y[i - 1];
    for (int j = 1; j <= 3; ++j) m += tensor(si, pauli::sigma(j)) * b.t[i - 1][j - 1];
  }
  m *= 0.25;
  return DensityMatrix::from_matrix(m);
}

}  // namespace nvqm
