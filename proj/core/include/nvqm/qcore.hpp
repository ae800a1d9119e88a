#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace nvqm {

using Complex = std::complex<double>;

/// Raised when a matrix does not describe a physical state (non-Hermitian,
/// wrong trace, or negative eigenvalues beyond tolerance).
class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the eigensolver when the input is not Hermitian within 1e-10.
class NotHermitian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kEigenInput = 1e-10;
inline constexpr double kJacobiOffDiagonal = 1e-14;
}  // namespace tol

/// Dense row-major complex matrix. Sized for the 2x2 and 4x4 operators used
/// throughout the library; element access is bounds-checked.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> entries);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c);
  const Complex& operator()(std::size_t r, std::size_t c) const;

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void check_index(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus of m - m^dagger.
double hermiticity_defect(const ComplexMatrix& m);

/// Kronecker product, first factor leftmost (a is subsystem A).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// |v><v| for a column vector v.
ComplexMatrix outer(std::span<const Complex> ket);

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m);  // u m u^dagger

namespace pauli {
ComplexMatrix identity();
ComplexMatrix sigma1();
ComplexMatrix sigma2();
ComplexMatrix sigma3();
/// sigma_i for i in {1, 2, 3}.
ComplexMatrix sigma(int i);
}  // namespace pauli

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Cyclic complex Jacobi diagonalization. The input is symmetrized as
/// (M + M^dagger)/2 first; a Hermiticity defect above 1e-10 throws NotHermitian.
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

/// Eigenvalues only, descending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Singular values, descending, by one-sided (Hestenes) Jacobi on the
/// columns. Small singular values keep absolute accuracy near machine
/// epsilon, unlike square roots of Gram-matrix eigenvalues.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Applies f to the spectrum: V diag(f(lambda)) V^dagger.
template <class F>
ComplexMatrix hermitian_function(const ComplexMatrix& m, F&& f) {
  const HermitianEigen eig = hermitian_eigen(m);
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        out(r, c) += fk * eig.vectors(r, k) * std::conj(eig.vectors(c, k));
      }
    }
  }
  return out;
}

/// Checks the state invariants (Hermitian, unit trace, PSD) on a square
/// matrix of any size; throws InvalidState describing the first failure.
void validate_state(const ComplexMatrix& m);

enum class Subsystem { A, B };

/// Joint electron (A) x nucleus (B) state. Basis order |e,n> is
/// |0 down>, |0 up>, |-1 down>, |-1 up>, i.e. index = 2*e + n with
/// e = 1 for |-1> and n = 1 for |up>.
class DensityMatrix {
 public:
  static constexpr std::size_t kDim = 4;

  /// Validates and stores the Hermitian part of m.
  static DensityMatrix from_matrix(const ComplexMatrix& m);
  static DensityMatrix from_ket(std::span<const Complex> ket);
  static DensityMatrix maximally_mixed();

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  Complex operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

  double purity() const;

 private:
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

/// Reduced 2x2 state of the kept subsystem.
ComplexMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// Uhlmann fidelity F = (tr sqrt(sqrt(a) b sqrt(a)))^2; tr(a b) when either is pure.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// Local Bloch vectors and correlation tensor of a two-qubit state.
struct BlochForm {
  Vec3 x{};  // x_i = tr(rho sigma_i (x) 1)
  Vec3 y{};  // y_i = tr(rho 1 (x) sigma_i)
  Mat3 t{};  // T_ij = tr(rho sigma_i (x) sigma_j)

  double y_norm() const;
};

BlochForm bloch_decompose(const DensityMatrix& rho);

/// Inverse of bloch_decompose. Throws InvalidState when the expansion is not
/// positive semidefinite.
DensityMatrix bloch_compose(const BlochForm& b);

}  // namespace nvqm
