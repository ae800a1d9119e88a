#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nvqm/qcore.hpp"
#include "nvqm/random.hpp"
#include "nvqm/states.hpp"
#include "oracles.hpp"

using namespace nvqm;

namespace {

ComplexMatrix random_matrix(Rng& rng, std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.complex_gaussian();
  return m;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  const ComplexMatrix g = random_matrix(rng, n);
  return (g + g.adjoint()) * 0.5;
}

double trace_distance_to(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs_diff(a, b); }

}  // namespace

TEST(Tensor, IdentityTimesIdentity) {
  EXPECT_EQ(tensor(pauli::identity(), pauli::identity()), ComplexMatrix::identity(4));
}

TEST(Tensor, Sigma3OnElectronFollowsBasisOrder) {
  const std::array<double, 4> d{1, 1, -1, -1};
  EXPECT_EQ(tensor(pauli::sigma3(), pauli::identity()), ComplexMatrix::diagonal(d));
}

TEST(Tensor, Sigma1Sigma1IsAntiDiagonal) {
  const ComplexMatrix m = tensor(pauli::sigma1(), pauli::sigma1());
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(m(r, c), Complex(r + c == 3 ? 1.0 : 0.0));
}

TEST(Tensor, AssociativeAndTraceMultiplicative) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const ComplexMatrix a = random_matrix(rng, 2);
    const ComplexMatrix b = random_matrix(rng, 2);
    const ComplexMatrix c = random_matrix(rng, 2);
    EXPECT_LE(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-12);
    EXPECT_LE(std::abs(tensor(a, b).trace() - a.trace() * b.trace()), 1e-12);
  }
}

TEST(ComplexMatrix, BoundsCheckedAccess) {
  ComplexMatrix m(2, 2);
  EXPECT_THROW(m(2, 0), std::out_of_range);
  EXPECT_THROW(m(0, 2), std::out_of_range);
  const ComplexMatrix& cm = m;
  EXPECT_THROW(cm(5, 5), std::out_of_range);
  EXPECT_THROW(ComplexMatrix(2, 2, {1.0, 2.0}), std::invalid_argument);
}

TEST(PartialTrace, ProductStateFactorizes) {
  const ComplexMatrix ra(2, 2, {0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3});
  const ComplexMatrix rb(2, 2, {0.4, 0.0, 0.0, 0.6});
  const DensityMatrix rho = product_state(ra, rb);
  EXPECT_LE(max_abs_diff(partial_trace(rho, Subsystem::A), ra), 1e-15);
  EXPECT_LE(max_abs_diff(partial_trace(rho, Subsystem::B), rb), 1e-15);
}

TEST(PartialTrace, BellReducesToMaximallyMixed) {
  EXPECT_LE(max_abs_diff(partial_trace(bell_state(), Subsystem::B), pauli::identity() * 0.5), 1e-15);
}

TEST(PartialTrace, SchmidtPiOverSixElectronWeights) {
  const ComplexMatrix ra = partial_trace(schmidt_state(SchmidtAngle(std::numbers::pi / 6)), Subsystem::A);
  const std::array<double, 2> d{0.75, 0.25};
  EXPECT_LE(max_abs_diff(ra, ComplexMatrix::diagonal(d)), 1e-15);
}

TEST(PartialTrace, ReductionsAreStatesOnRandomInputs) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const DensityMatrix rho = seed % 2 ? random_pure(seed) : random_mixed(seed);
    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
      const ComplexMatrix red = partial_trace(rho, s);
      EXPECT_LE(hermiticity_defect(red), 1e-10);
      EXPECT_NEAR(red.trace().real(), 1.0, 1e-10);
      EXPECT_GE(hermitian_eigenvalues(red).back(), -1e-10);
    }
    // Independent route for the B reduction.
    EXPECT_LE(max_abs_diff(partial_trace(rho, Subsystem::B), oracle::trace_out_a(rho.matrix())), 1e-15);
  }
}

TEST(Eigenvalues, MaximallyMixed) {
  const auto v = hermitian_eigenvalues(DensityMatrix::maximally_mixed().matrix());
  for (double x : v) EXPECT_DOUBLE_EQ(x, 0.25);
}

TEST(Eigenvalues, PureProjector) {
  const auto v = hermitian_eigenvalues(random_pure(5).matrix());
  EXPECT_NEAR(v[0], 1.0, 1e-14);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(v[i], 0.0, 1e-14);
}

TEST(Eigenvalues, WernerHalfMatchesDirectDiagonalization) {
  const auto v = hermitian_eigenvalues(werner_state(WernerWeight(0.5)).matrix());
  const auto ref = oracle::eigenvalues_desc(werner_state(WernerWeight(0.5)).matrix());
  const std::array<double, 4> expected{0.625, 0.125, 0.125, 0.125};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(ref[i], expected[i], 1e-14);
    EXPECT_NEAR(v[i], expected[i], 1e-14);
  }
}

TEST(Eigenvalues, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::identity(4);
  m(0, 1) = 1e-6;
  EXPECT_THROW(hermitian_eigenvalues(m), NotHermitian);
  m(0, 1) = 1e-11;  // within tolerance: symmetrized and accepted
  EXPECT_NO_THROW(hermitian_eigenvalues(m));
  EXPECT_THROW(hermitian_eigenvalues(ComplexMatrix(2, 3)), NotHermitian);
}

TEST(Eigenvalues, AgreeWithEigenOnRandomHermitian) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = i % 2 ? 4 : 2;
    const ComplexMatrix h = random_hermitian(rng, n);
    const HermitianEigen eig = hermitian_eigen(h);
    const auto ref = oracle::eigenvalues_desc(h);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(eig.values[k], ref[k], 1e-12);
      sum += eig.values[k];
    }
    EXPECT_NEAR(sum, h.trace().real(), 1e-10);
    for (std::size_t k = 1; k < n; ++k) EXPECT_GE(eig.values[k - 1], eig.values[k]);
    // V diag V^dagger reconstructs the input and V is unitary.
    const ComplexMatrix back = hermitian_function(h, [](double x) { return x; });
    EXPECT_LE(trace_distance_to(back, h), 1e-12);
    EXPECT_LE(max_abs_diff(eig.vectors.adjoint() * eig.vectors, ComplexMatrix::identity(n)), 1e-12);
  }
}

TEST(SingularValues, AgreeWithEigenSvd) {
  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    const ComplexMatrix m = random_matrix(rng, 4);
    const auto sv = singular_values(m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(oracle::to_eigen(m));
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(sv[k], svd.singularValues()(static_cast<Eigen::Index>(k)), 1e-12);
  }
}

TEST(SingularValues, RankDeficientKeepsZerosSmall) {
  // Rank one: the three trailing singular values must be at rounding level,
  // not at sqrt(rounding).
  const std::array<Complex, 4> u{0.3, Complex(0.1, 0.5), -0.2, 0.7};
  const auto sv = singular_values(outer(u));
  for (std::size_t k = 1; k < 4; ++k) EXPECT_LE(sv[k], 1e-15);
}

TEST(DensityMatrix, ValidStatesHaveSpectrumInRange) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const DensityMatrix rho = seed % 2 ? random_pure(seed) : random_mixed(seed);
    const auto v = hermitian_eigenvalues(rho.matrix());
    double sum = 0.0;
    for (double x : v) {
      EXPECT_GE(x, -1e-10);
      EXPECT_LE(x, 1.0 + 1e-10);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-10);
  }
}

TEST(DensityMatrix, RejectsNonStates) {
  EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::identity(4)), InvalidState);  // trace 4
  ComplexMatrix skew = ComplexMatrix::identity(4) * 0.25;
  skew(0, 1) = Complex(0, 0.1);
  EXPECT_THROW(DensityMatrix::from_matrix(skew), InvalidState);  // not Hermitian
  const std::array<double, 4> neg{0.75, 0.5, -0.25, 0.0};
  EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::diagonal(neg)), InvalidState);
  EXPECT_THROW(DensityMatrix::from_matrix(ComplexMatrix::identity(2) * 0.5), InvalidState);  // wrong size
}

TEST(Bloch, SchmidtState) {
  for (double chi : {0.0, 0.2, std::numbers::pi / 8, std::numbers::pi / 4, 1.3, std::numbers::pi / 2}) {
    const BlochForm b = bloch_decompose(schmidt_state(SchmidtAngle(chi)));
    const double c2 = std::cos(2 * chi);
    const double s2 = std::sin(2 * chi);
    const Vec3 xy{0, 0, c2};
    const Mat3 t{{{s2, 0, 0}, {0, -s2, 0}, {0, 0, 1}}};
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(b.x[i], xy[i], 1e-12);
      EXPECT_NEAR(b.y[i], xy[i], 1e-12);
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(b.t[i][j], t[i][j], 1e-12);
    }
  }
}

TEST(Bloch, WernerState) {
  for (double q : {0.0, 0.3, 0.5, 1.0}) {
    const BlochForm b = bloch_decompose(werner_state(WernerWeight(q)));
    const Mat3 t{{{q, 0, 0}, {0, -q, 0}, {0, 0, q}}};
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(b.x[i], 0.0, 1e-15);
      EXPECT_NEAR(b.y[i], 0.0, 1e-15);
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(b.t[i][j], t[i][j], 1e-15);
    }
  }
}

TEST(Bloch, MaximallyMixedIsZero) {
  const BlochForm b = bloch_decompose(DensityMatrix::maximally_mixed());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(b.x[i], 0.0);
    EXPECT_EQ(b.y[i], 0.0);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(b.t[i][j], 0.0);
  }
}

TEST(Bloch, ComposeZeroIsMaximallyMixed) {
  EXPECT_LE(max_abs_diff(bloch_compose(BlochForm{}).matrix(), ComplexMatrix::identity(4) * 0.25), 1e-16);
}

TEST(Bloch, ComposeBellTensor) {
  BlochForm b;
  b.t = {{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
  const double h = std::numbers::sqrt2 / 2;
  const std::array<Complex, 4> ket{h, 0, 0, h};
  EXPECT_LE(max_abs_diff(bloch_compose(b).matrix(), outer(ket)), 1e-15);
}

TEST(Bloch, ComposeRejectsNonPositiveExpansion) {
  BlochForm b;
  b.t = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  // Independent check that the expansion really has eigenvalue -1/2.
  ComplexMatrix m = ComplexMatrix::identity(4);
  for (int i = 1; i <= 3; ++i) m += tensor(pauli::sigma(i), pauli::sigma(i));
  EXPECT_NEAR(oracle::eigenvalues_desc(m * 0.25).back(), -0.5, 1e-14);
  EXPECT_THROW(bloch_compose(b), InvalidState);
}

TEST(Bloch, RoundTripOnRandomStates) {
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const DensityMatrix rho = seed % 2 ? random_pure(seed) : random_mixed(seed);
    const BlochForm b = bloch_decompose(rho);
    ASSERT_LE(max_abs_diff(bloch_compose(b).matrix(), rho.matrix()), 1e-12) << "seed " << seed;
    for (std::size_t i = 0; i < 3; ++i) {
      ASSERT_LE(std::abs(b.x[i]), 1.0 + 1e-12);
      ASSERT_LE(std::abs(b.y[i]), 1.0 + 1e-12);
      for (std::size_t j = 0; j < 3; ++j) ASSERT_LE(std::abs(b.t[i][j]), 1.0 + 1e-12);
    }
    ASSERT_LE(b.y_norm(), 1.0 + 1e-12);
  }
}

TEST(Fidelity, PureAndMixedCases) {
  const DensityMatrix bell = bell_state();
  EXPECT_NEAR(fidelity(bell, bell), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(bell, DensityMatrix::maximally_mixed()), 0.25, 1e-15);
  const DensityMatrix a = random_mixed(1);
  EXPECT_NEAR(fidelity(a, a), 1.0, 1e-10);
  // Symmetric in its arguments.
  const DensityMatrix b = random_mixed(2);
  EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-10);
}
