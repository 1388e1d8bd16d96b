#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <gtest/gtest.h>

#include "trapscatter/equal_trap.hpp"
#include "trapscatter/numerics/quadrature.hpp"

namespace ts = trapscatter;
namespace eq = trapscatter::equal_trap;
using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

namespace {

ts::Params equal(double w, double d, double eta, double drive = 0.01) {
  ts::Params p;
  p.trap_ratio = w;
  p.detuning = d;
  p.eta = eta;
  p.drive = drive;
  p.potential = ts::ExcitedPotential::equal_trap();
  return p;
}

Mat position(int dim) {
  Mat a = Mat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a + a.adjoint();
}

// Steady excited amplitudes from a linear solve of the truncated equations
// (n w - Delta - i/2) c_n = -(Omega/2) <n| exp(i eta x) |0>.
Vec solve_steady(const ts::Params& p, int dim) {
  const Vec kicked = (cplx{0.0, p.eta} * position(dim)).exp().col(0);
  Mat h = Mat::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) h(n, n) = cplx{n * p.trap_ratio - p.detuning, -0.5};
  return h.partialPivLu().solve(-0.5 * p.drive * kicked);
}

// Emission-direction average with the dipole pattern, by adaptive quadrature in u.
template <typename F>
double dipole_average(F&& f) {
  auto g = [&](double u) { return 0.375 * (1.0 + u * u) * f(u); };
  return ts::numerics::integrate_interval(g, -1.0, 1.0, {1e-15, 1e-12}).value;
}

}  // namespace

TEST(EqualTrap, AmplitudesMatchLinearSolve) {
  for (auto [w, d, eta] : {std::tuple{1.0, 0.0, 0.1}, std::tuple{0.3, 0.8, 0.4}, std::tuple{2.0, -1.0, 0.9}}) {
    const auto p = equal(w, d, eta);
    const Vec ref = solve_steady(p, 80);
    const auto c = eq::steady_amplitudes(p, 40);
    for (int n = 0; n <= 40; ++n) {
      EXPECT_LT(std::abs(c.amps[static_cast<std::size_t>(n)] - ref(n)), 1e-12 * p.drive) << w << " " << d << " " << n;
    }
  }
}

TEST(EqualTrap, NoKickStaysInGround) {
  const auto p = equal(1.0, 0.3, 0.0);
  const auto pops = eq::excited_populations(p);
  EXPECT_NEAR(pops[0], p.drive * p.drive * ts::static_rate(0.3), 1e-18);
  for (std::size_t n = 1; n < pops.size(); ++n) EXPECT_EQ(pops[n], 0.0);
  EXPECT_NEAR(eq::total_rate(p), ts::static_rate(0.3), 1e-15);
  EXPECT_NEAR(eq::elastic_rate(p), ts::static_rate(0.3), 1e-14);
  EXPECT_NEAR(eq::phonon_rate(p), 0.0, 1e-20);
}

TEST(EqualTrap, FirstSidebandRatio) {
  const auto pops = eq::excited_populations(equal(1.0, 0.0, 0.1));
  EXPECT_NEAR(pops[1] / pops[0], 0.002, 1e-12);
}

TEST(EqualTrap, FirstSidebandPeaksAtTrapFrequency) {
  const double w = 1.7;
  double best = -1.0, best_d = 0.0;
  for (double d = 0.0; d <= 4.0; d += 0.01) {
    const double v = eq::excited_populations(equal(w, d, 0.1), 3, 1e-6)[1];
    if (v > best) {
      best = v;
      best_d = d;
    }
  }
  EXPECT_NEAR(best_d, w, 0.006);
}

TEST(EqualTrap, TotalRateLimits) {
  EXPECT_NEAR(eq::total_rate(equal(1.0, 0.0, 0.0)), 1.0, 1e-15);
  EXPECT_NEAR(eq::total_rate(equal(0.1, 0.0, 0.1)), 0.99962, 1e-5);
  EXPECT_NEAR(eq::total_rate(equal(100.0, 0.0, 0.1)), std::exp(-0.01), 1e-4);
  for (double d : {-2.0, 0.0, 2.0}) {
    EXPECT_NEAR(eq::total_rate(equal(1e-7, d, 0.3)), ts::static_rate(d), 1e-6) << d;
  }
}

TEST(EqualTrap, TotalRateMatchesLinearSolveNorm) {
  for (auto [w, d, eta] : {std::tuple{0.05, 0.2, 0.3}, std::tuple{1.0, 1.0, 0.7}}) {
    const auto p = equal(w, d, eta);
    const double ref = solve_steady(p, 90).squaredNorm() / (p.drive * p.drive);
    EXPECT_NEAR(eq::total_rate(p), ref, 1e-12) << w << " " << d;
  }
}

TEST(EqualTrap, LambDickeFormWithinFourthOrder) {
  for (double eta : {0.05, 0.1, 0.2, 0.3}) {
    for (double w : {0.1, 1.0, 10.0}) {
      for (double d : {-1.0, 0.0, 1.0}) {
        const auto p = equal(w, d, eta);
        const double exact = eq::total_rate(p);
        EXPECT_LT(std::abs(eq::total_rate_lamb_dicke(p) / exact - 1.0), 5.0 * std::pow(eta, 4))
            << eta << " " << w << " " << d;
      }
    }
  }
}

TEST(EqualTrap, ElasticMatchesMatrixOracle) {
  for (auto [w, d, eta] : {std::tuple{0.01, 0.0, 0.1}, std::tuple{0.5, 0.5, 0.5}}) {
    const auto p = equal(w, d, eta);
    const int dim = 70;
    const Vec c = solve_steady(p, dim);
    const Mat x = position(dim);
    const double ref = dipole_average([&](double u) {
      const Vec back = (cplx{0.0, -eta * u} * x).exp() * c;
      return std::norm(back(0)) / (p.drive * p.drive);
    });
    EXPECT_NEAR(eq::elastic_rate(p), ref, 1e-11) << w << " " << d;
  }
}

TEST(EqualTrap, ElasticFractionUnresolvedSidebands) {
  for (auto [eta, expected, tol] : {std::tuple{0.1, 0.986, 5e-4}, std::tuple{0.2, 0.944, 3e-3}}) {
    const auto r = eq::rates(equal(0.01, 0.0, eta));
    EXPECT_NEAR(r.elastic / r.total, expected, tol) << eta;
  }
  const auto r0 = eq::rates(equal(0.01, 0.0, 0.0));
  EXPECT_NEAR(r0.elastic, r0.total, 1e-14);
}

TEST(EqualTrap, PhononRateMatchesMatrixOracle) {
  for (auto [w, d, eta] : {std::tuple{0.01, 0.0, 0.1}, std::tuple{1.0, 1.0, 0.4}}) {
    const auto p = equal(w, d, eta);
    const int dim = 70;
    const Vec c = solve_steady(p, dim);
    const Mat x = position(dim);
    const double ref = dipole_average([&](double u) {
      const Vec out = (cplx{0.0, -eta * u} * x).exp() * c;
      double s = 0.0;
      for (int n = 0; n < dim / 2; ++n) s += n * std::norm(out(n));
      return s;
    });
    // Limited by the accuracy of the dense matrix exponential.
    EXPECT_NEAR(eq::phonon_rate(p) / ref, 1.0, 1e-9) << w << " " << d;
  }
}

TEST(EqualTrap, RecoilHeatingSevenFifths) {
  const double eta = 0.1;
  const auto p = equal(0.01, 0.0, eta);
  const double ratio = eq::phonon_rate(p) / (p.drive * p.drive) / (eta * eta * eq::total_rate(p));
  EXPECT_NEAR(ratio, 1.4, 2.0 * eta * eta);
  EXPECT_NEAR(eq::recoil_heating_rate(p), 1.4 * eta * eta * eq::total_rate(p) * p.drive * p.drive, 1e-20);
  EXPECT_EQ(eq::recoil_heating_rate(equal(0.01, 0.0, 0.0)), 0.0);
  const double r1 = eq::recoil_heating_rate(equal(0.01, 0.0, 0.05));
  const double r2 = eq::recoil_heating_rate(equal(0.01, 0.0, 0.1));
  EXPECT_NEAR(r2 / r1, 4.0, 4e-2);
}

TEST(EqualTrap, RejectsOtherPotentials) {
  auto p = equal(1.0, 0.0, 0.1);
  p.potential = ts::ExcitedPotential::free();
  EXPECT_THROW(eq::total_rate(p), std::invalid_argument);
}
