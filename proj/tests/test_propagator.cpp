#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "trapscatter/anti_trapped.hpp"
#include "trapscatter/free_excited.hpp"
#include "trapscatter/momentum.hpp"
#include "trapscatter/propagator.hpp"

namespace ts = trapscatter;
namespace pr = trapscatter::propagator;
using cplx = std::complex<double>;

namespace {

ts::Params inverted(double w, double v, double d = 0.0) {
  ts::Params p;
  p.trap_ratio = w;
  p.detuning = d;
  p.potential = ts::ExcitedPotential::anti_trapped(v);
  return p;
}

// int G(k, k', tau) f(k') dk' on a composite grid in k'.
template <typename F>
cplx apply_kernel(double k, double tau, double v, double w, F&& f, const ts::numerics::Grid& grid) {
  cplx s{};
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    s += grid.weights[i] * pr::mehler_kernel(k, grid.nodes[i], tau, v, w) * f(grid.nodes[i]);
  }
  return s;
}

double numeric_second_moment(double tau, double v, double w) {
  auto f = [&](double k) { return std::norm(pr::evolved_gaussian(k, tau, v, w)); };
  auto g = [&](double k) { return k * k * f(k); };
  const ts::numerics::Tolerance tol{1e-300, 1e-12};
  return ts::numerics::integrate_line(g, {}, tol).value / ts::numerics::integrate_line(f, {}, tol).value;
}

}  // namespace

TEST(Propagator, KernelReproducesEvolvedGaussian) {
  const auto grid = ts::make_k_grid(-10.0, 10.0, {0.0}, 0.005);
  for (auto [tau, v, w] : {std::tuple{0.1, 1.0, 1.0}, std::tuple{1.0, 1.0, 1.0}, std::tuple{3.0, 0.5, 2.0},
                           std::tuple{1.0, 0.1, 1.0}}) {
    for (double k : {-1.5, 0.0, 0.8, 2.0}) {
      const cplx num = apply_kernel(k, tau, v, w, ts::ground_gaussian, grid);
      const cplx exact = pr::evolved_gaussian(k, tau, v, w);
      EXPECT_LT(std::abs(num - exact), 1e-8) << tau << " " << v << " " << w << " " << k;
    }
  }
}

TEST(Propagator, SemigroupOnGaussians) {
  // U(t1) U(t2) g = U(t1 + t2) g
  const double v = 0.7, w = 1.3;
  const auto grid = ts::make_k_grid(-14.0, 14.0, {0.0}, 0.004);
  for (auto [t1, t2] : {std::pair{0.4, 0.9}, std::pair{1.5, 0.3}}) {
    auto evolved = [&](double k) { return pr::evolved_gaussian(k, t2, v, w); };
    for (double k : {-1.0, 0.0, 0.6, 1.7}) {
      const cplx num = apply_kernel(k, t1, v, w, evolved, grid);
      EXPECT_LT(std::abs(num - pr::evolved_gaussian(k, t1 + t2, v, w)), 1e-8) << t1 << " " << t2 << " " << k;
    }
  }
}

TEST(Propagator, KernelIsSymmetricAndSingularAtZero) {
  EXPECT_LT(std::abs(pr::mehler_kernel(0.3, -1.1, 0.7, 1.0, 2.0) - pr::mehler_kernel(-1.1, 0.3, 0.7, 1.0, 2.0)), 1e-15);
  EXPECT_THROW(pr::mehler_kernel(0.0, 0.0, 0.0, 1.0, 1.0), std::domain_error);
  EXPECT_THROW(pr::mehler_kernel(0.0, 0.0, 1.0, 0.0, 1.0), std::domain_error);
}

TEST(Propagator, EvolutionPreservesNorm) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int i = 0; i < 20; ++i) {
    const double tau = u(rng), v = u(rng), w = u(rng);
    auto f = [&](double k) { return std::norm(pr::evolved_gaussian(k, tau, v, w)); };
    EXPECT_NEAR(ts::numerics::integrate_line(f, {}, {1e-300, 1e-13}).value, 1.0, 1e-11) << tau << " " << v << " " << w;
  }
  // Through the kernel itself.
  const auto outer = ts::make_k_grid(-15.0, 15.0, {0.0}, 0.25);
  const auto inner = ts::make_k_grid(-10.0, 10.0, {0.0}, 0.05);
  double norm = 0.0;
  for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
    norm += outer.weights[i] * std::norm(apply_kernel(outer.nodes[i], 1.0, 1.0, 1.0, ts::ground_gaussian, inner));
  }
  EXPECT_NEAR(norm, 1.0, 1e-6);
}

TEST(Propagator, StartsAtGroundState) {
  for (double k : {-2.0, 0.0, 1.0}) {
    EXPECT_LT(std::abs(pr::evolved_gaussian(k, 0.0, 1.0, 2.0) - ts::ground_gaussian(k)), 1e-15);
  }
  EXPECT_LT(std::abs(pr::vacuum_overlap(0.0, 1.0, 2.0) - 1.0), 1e-15);
}

TEST(Propagator, SmallCurvatureApproachesFreeSpreading) {
  for (double k : {-1.0, 0.0, 2.0}) {
    const double a = std::abs(pr::evolved_gaussian(k, 1.0, 1e-6, 1.0));
    const double b = std::abs(pr::evolved_gaussian(k, 1.0, 0.0, 1.0));
    EXPECT_NEAR(a, b, 1e-10);
  }
}

TEST(Propagator, VarianceGrowth) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.1, 2.5);
  for (int i = 0; i < 10; ++i) {
    const double tau = u(rng), v = u(rng), w = u(rng);
    EXPECT_NEAR(numeric_second_moment(tau, v, w) / 0.5, pr::variance_ratio(tau, v, w), 1e-9 * pr::variance_ratio(tau, v, w));
  }
  // Matched curvature: cosh(2 w tau).
  EXPECT_NEAR(pr::variance_ratio(0.5, 1.0, 1.0), std::cosh(1.0), 1e-14);
  // Late-time growth rate 2v.
  const double v = 0.8, w = 2.0;
  const double slope = (std::log(pr::variance_ratio(12.0, v, w)) - std::log(pr::variance_ratio(10.0, v, w))) / 2.0;
  EXPECT_NEAR(slope, 2.0 * v, 1e-6);
}

TEST(Propagator, OverlapRoutesAgreeAndAreContinuous) {
  for (auto [v, w] : {std::pair{0.5, 0.5}, std::pair{2.0, 2.0}, std::pair{4.0, 2.0}, std::pair{0.01, 2.0}}) {
    cplx prev = pr::vacuum_overlap(0.0, v, w);
    for (double tau = 0.01; tau < 6.0; tau += 0.01) {
      const cplx a = pr::vacuum_overlap(tau, v, w);
      EXPECT_LT(std::abs(a - pr::vacuum_overlap_quadrature(tau, v, w)), 1e-10) << v << " " << w << " " << tau;
      EXPECT_LT(std::abs(a - prev), 0.1) << "jump at " << tau;
      prev = a;
    }
  }
}

TEST(Propagator, MatchedCurvatureAgreesWithFockRoute) {
  for (double w : {0.5, 2.0}) {
    for (double d : {0.0, 1.0}) {
      const auto p = inverted(w, w, d);
      const auto a = ts::anti_trapped::steady_rates(p);
      const auto b = pr::rates(p, pr::kInfinity, pr::Overlap::Quadrature);
      EXPECT_NEAR(b.total / a.total, 1.0, 1e-9) << w << " " << d;
      EXPECT_NEAR(b.elastic / a.elastic, 1.0, 1e-9) << w << " " << d;
      const double t = 4.0;
      EXPECT_NEAR(pr::excited_norm(p, t) / ts::anti_trapped::excited_norm(p, t), 1.0, 1e-9);
    }
  }
}

TEST(Propagator, WeakCurvatureMatchesFreeState) {
  for (double d : {0.0, 1.0}) {
    const auto p = inverted(2.0, 1e-6, d);
    auto q = p;
    q.potential = ts::ExcitedPotential::free();
    const auto a = pr::rates(p);
    EXPECT_NEAR(a.total / ts::free_excited::total_rate(q), 1.0, 1e-5) << d;
    EXPECT_NEAR(a.elastic / ts::free_excited::elastic_rate(q), 1.0, 1e-5) << d;
  }
}

TEST(Propagator, SteadyStateProjectsOntoFockAmplitudes) {
  const auto p = inverted(0.5, 0.5, 0.0);
  const auto state = pr::steady_state_k(p, pr::kInfinity, 10.0, 0.1);
  const auto proj = ts::fock_projection(state, 6);
  const auto fock = ts::anti_trapped::amplitudes_t(p, ts::anti_trapped::kInfinity, 6);
  for (int n = 0; n <= 6; n += 2) {
    const cplx a = proj.amps[static_cast<std::size_t>(n)], b = fock.amps[static_cast<std::size_t>(n)];
    EXPECT_LT(std::abs(a - b), 1e-4 * std::abs(b)) << n;
  }
  EXPECT_LT(std::abs(proj.amps[1]), 1e-12);
}

TEST(Propagator, MomentumDistributionsAtResonanceAndDetuned) {
  // Inverted potential keeps the peak at k = 0 when detuned; the free case moves it to the resonant shell.
  auto peak = [](const ts::MomentumState& s) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      if (std::norm(s.amps[i]) > std::norm(s.amps[best])) best = i;
    }
    return std::abs(s.grid[best]);
  };
  const auto anti = pr::steady_state_k(inverted(2.0, 1.0, 1.0), pr::kInfinity, 6.0, 0.1);
  EXPECT_LT(peak(anti), 0.05);
  auto q = inverted(2.0, 1.0, 1.0);
  q.potential = ts::ExcitedPotential::free();
  const auto freed = pr::steady_state_k(q, pr::kInfinity, 6.0, 0.1);
  EXPECT_NEAR(peak(freed), 1.0, 0.1);

  // Resonant drive: population ordering equal > free > anti, width ordering anti > equal > free.
  auto r = inverted(2.0, 1.0, 0.0);
  const double anti_norm = pr::excited_norm(r);
  r.potential = ts::ExcitedPotential::free();
  const double free_norm = pr::excited_norm(r);
  EXPECT_GT(1.0, free_norm);
  EXPECT_GT(free_norm, anti_norm);
  const auto anti0 = pr::steady_state_k(inverted(2.0, 1.0, 0.0), pr::kInfinity, 8.0, 0.1);
  const auto free0 = pr::steady_state_k(r, pr::kInfinity, 8.0, 0.1);
  EXPECT_GT(anti0.second_moment(), 0.5);
  EXPECT_LT(free0.second_moment(), 0.5);
}

TEST(Propagator, SpectrumShapes) {
  // Matched curvature is symmetric in detuning.
  const auto sym = pr::spectrum(inverted(2.0, 2.0), {-1.5, -0.5, 0.5, 1.5});
  EXPECT_NEAR(sym[0], sym[3], 1e-9);
  EXPECT_NEAR(sym[1], sym[2], 1e-9);
  // Weak curvature tracks the free spectrum.
  auto q = inverted(2.0, 0.01, 0.0);
  for (double d : {-1.0, 0.0, 1.0}) {
    q.detuning = d;
    auto f = q;
    f.potential = ts::ExcitedPotential::free();
    EXPECT_NEAR(pr::excited_norm(q) / ts::free_excited::total_rate(f), 1.0, 0.02) << d;
  }
  // Asymmetry changes sign between weak and strong curvature.
  auto asym = [](double v) {
    const auto s = pr::spectrum(inverted(2.0, v), {-1.0, 1.0});
    return s[1] - s[0];
  };
  EXPECT_GT(asym(1.0), 0.0);
  EXPECT_LT(asym(4.0), 0.0);
}

TEST(Propagator, RejectsEqualTrap) {
  ts::Params p;
  EXPECT_THROW(pr::excited_norm(p), std::invalid_argument);
}
