#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <gtest/gtest.h>

#include "trapscatter/errors.hpp"
#include "trapscatter/fock.hpp"
#include "trapscatter/numerics/quadrature.hpp"
#include "trapscatter/numerics/special.hpp"

namespace ts = trapscatter;
using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

namespace {

Mat lowering(int dim) {
  Mat a = Mat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// exp(i eta (a + a^dagger)) on a truncated Fock space.
Mat displacement_matrix(double eta, int dim) {
  const Mat a = lowering(dim);
  const Mat x = a + a.adjoint();
  return (cplx{0.0, eta} * x).exp();
}

// exp(i (phase/2)(a^dagger^2 + a^2)) |0> on a truncated Fock space.
Eigen::VectorXcd squeeze_matrix_vacuum(double phase, int dim) {
  const Mat a = lowering(dim);
  const Mat gen = a * a + a.adjoint() * a.adjoint();
  const Mat u = (cplx{0.0, 0.5 * phase} * gen).exp();
  return u.col(0);
}

}  // namespace

TEST(Displacement, AgainstMatrixExponential) {
  const int dim = 90;
  for (double eta : {0.1, 0.5, 1.3, -0.7}) {
    const Mat d = displacement_matrix(eta, dim);
    for (int m = 0; m <= 20; ++m) {
      for (int n = 0; n <= 20; ++n) {
        EXPECT_LT(std::abs(ts::displacement_element(m, n, eta) - d(m, n)), 1e-11)
            << "eta " << eta << " <" << m << "|D|" << n << ">";
      }
    }
  }
}

TEST(Displacement, SpotValues) {
  EXPECT_NEAR(std::real(ts::displacement_element(0, 0, 0.1)), std::exp(-0.005), 1e-15);
  const cplx d10 = ts::displacement_element(1, 0, 0.1);
  EXPECT_NEAR(std::real(d10), 0.0, 1e-16);
  EXPECT_NEAR(std::imag(d10), 0.1 * std::exp(-0.005), 1e-15);
  EXPECT_EQ(ts::displacement_element(3, 3, 0.0), cplx(1.0));
  EXPECT_EQ(ts::displacement_element(3, 4, 0.0), cplx(0.0));
  EXPECT_THROW(ts::displacement_element(-1, 0, 0.1), std::invalid_argument);
}

TEST(Displacement, ColumnsAreUnitVectors) {
  for (double eta : {0.05, 0.5, 2.0}) {
    for (int n : {0, 7, 60}) {
      double s = 0.0;
      for (int m = 0; m <= 600; ++m) s += std::norm(ts::displacement_element(m, n, eta));
      EXPECT_NEAR(s, 1.0, 1e-12) << "eta " << eta << " column " << n;
    }
  }
}

TEST(Displacement, StableAtLargeIndices) {
  const cplx diag = ts::displacement_element(1000, 1000, 0.1);
  EXPECT_TRUE(std::isfinite(std::abs(diag)));
  EXPECT_LE(std::abs(diag), 1.0);
  double s = 0.0;
  for (int m = 0; m <= 1500; ++m) s += std::norm(ts::displacement_element(m, 500, 0.1));
  EXPECT_NEAR(s, 1.0, 1e-10);
}

TEST(Squeeze, AgainstMatrixExponential) {
  const int dim = 260;
  for (double phase : {0.3, 1.0}) {
    const auto ref = squeeze_matrix_vacuum(phase, dim);
    const auto got = ts::squeeze_vacuum(phase, 60);
    for (int n = 0; n <= 60; ++n) {
      EXPECT_LT(std::abs(got.amps[static_cast<std::size_t>(n)] - ref(n)), 1e-10) << "phase " << phase << " n " << n;
    }
  }
  EXPECT_NEAR(std::norm(ts::squeeze_vacuum(1.0, 80).amps[2]), 0.5 * std::pow(std::tanh(1.0), 2) / std::cosh(1.0), 1e-14);
}

TEST(Squeeze, UnitNormAndParity) {
  for (double phase : {0.0, 0.2, 1.0, 2.5, 4.0}) {
    const auto s = ts::squeeze_vacuum_adaptive(phase, 1e-11);
    EXPECT_NEAR(s.norm(), 1.0, 1e-10) << "phase " << phase;
    EXPECT_EQ(s.parity, ts::Parity::EvenOnly);
    for (std::size_t n = 1; n < s.size(); n += 2) EXPECT_EQ(s.amps[n], cplx(0.0));
  }
  const auto vac = ts::squeeze_vacuum(0.0, 10);
  EXPECT_EQ(vac.amps[0], cplx(1.0));
  for (std::size_t n = 1; n < vac.size(); ++n) EXPECT_EQ(vac.amps[n], cplx(0.0));
}

TEST(Squeeze, PhaseAdvancesByPlusIPerPair) {
  const auto s = ts::squeeze_vacuum(0.8, 40);
  for (std::size_t n = 0; n + 2 < s.size(); n += 2) {
    const cplx r = s.amps[n + 2] / s.amps[n];
    EXPECT_NEAR(std::real(r), 0.0, 1e-14);
    EXPECT_GT(std::imag(r), 0.0);
  }
}

TEST(Squeeze, ReportsTruncation) {
  EXPECT_THROW(ts::squeeze_vacuum(2.0, 20, 1e-8), ts::TruncationError);
  EXPECT_THROW(ts::squeeze_vacuum(-0.1, 20), std::invalid_argument);
}

TEST(Emission, MomentsAgainstAngularQuadrature) {
  for (int p : {0, 2, 4, 6}) {
    // Dipole pattern (3/16 pi)(1 + cos^2) over the sphere.
    auto f = [p](double theta) {
      const double c = std::cos(theta);
      return 2.0 * std::numbers::pi * std::sin(theta) * 3.0 / (16.0 * std::numbers::pi) * (1.0 + c * c) *
             std::pow(c, p);
    };
    const double ref = ts::numerics::integrate_interval(f, 0.0, std::numbers::pi, {1e-15, 1e-14}).value;
    EXPECT_NEAR(ts::emission_moment(p), ref, 1e-14) << "p " << p;
    EXPECT_NEAR(ts::emission_average([p](double u) { return std::pow(u, p); }), ref, 1e-14);
  }
  EXPECT_NEAR(ts::emission_moment(2), 0.4, 1e-15);
  EXPECT_THROW(ts::emission_moment(3), std::invalid_argument);
  EXPECT_THROW(ts::emission_moment(-2), std::invalid_argument);
}

TEST(Hermite, AgainstPolynomialDefinition) {
  for (int n = 0; n <= 40; ++n) {
    const double norm = std::exp(-0.5 * (n * std::numbers::ln2 + ts::numerics::log_factorial(n)) -
                                 0.25 * std::log(std::numbers::pi));
    for (double k : {-3.1, -0.4, 0.0, 0.9, 2.2, 5.0}) {
      const double ref = std::hermite(static_cast<unsigned>(n), k) * std::exp(-0.5 * k * k) * norm;
      EXPECT_NEAR(ts::fock_momentum_wavefunction(n, k), ref, 1e-12 * (1.0 + std::abs(ref))) << n << " " << k;
    }
  }
  EXPECT_NEAR(ts::fock_momentum_wavefunction(2, 0.0), -std::pow(std::numbers::pi, -0.25) / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(ts::fock_momentum_wavefunction(-1, 0.0), std::invalid_argument);
}

TEST(Hermite, Orthonormal) {
  for (int m = 0; m <= 30; m += 3) {
    for (int n = m; n <= 30; n += 2) {
      auto f = [&](double k) {
        const auto h = ts::hermite_functions(n, k);
        return h[static_cast<std::size_t>(m)] * h[static_cast<std::size_t>(n)];
      };
      const double v = ts::numerics::integrate_interval(f, -12.0, 12.0, {1e-14, 1e-12}).value;
      EXPECT_NEAR(v, m == n ? 1.0 : 0.0, 1e-10) << m << " " << n;
    }
  }
}

TEST(Hermite, StableForLargeIndices) {
  const auto h = ts::hermite_functions(2000, 60.0);
  for (double v : h) ASSERT_TRUE(std::isfinite(v));
  // Inside the classically allowed region |psi_n| stays below the envelope ~ n^{-1/12}.
  for (double v : h) EXPECT_LT(std::abs(v), 1.0);
  // Weight of psi_n^2 inside |k| < 2 from the semiclassical arcsine law.
  const int n = 1000;
  auto f = [&](double k) { return std::pow(ts::fock_momentum_wavefunction(n, k), 2); };
  const double v = ts::numerics::integrate_interval(f, -2.0, 2.0, {1e-14, 1e-8}, 20000).value;
  const double r = std::sqrt(2.0 * n + 1.0);
  const double ref = 2.0 * std::asin(2.0 / r) / std::numbers::pi;
  EXPECT_NEAR(v, ref, 2e-2 * ref);
}
