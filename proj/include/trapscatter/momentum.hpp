#pragma once

// Excited-state wavefunctions sampled on a dimensionless wavenumber grid
// (k in units of the ground-state momentum spread), with the quadrature
// weights needed to integrate them.

#include <cmath>
#include <complex>
#include <vector>

#include "trapscatter/fock.hpp"
#include "trapscatter/numerics/quadrature.hpp"

namespace trapscatter {

struct MomentumState {
  std::vector<double> grid;
  std::vector<double> weights;
  std::vector<cplx> amps;

  double norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) s += weights[i] * std::norm(amps[i]);
    return s;
  }

  /// <k^2> of the normalized state.
  double second_moment() const {
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) s += weights[i] * grid[i] * grid[i] * std::norm(amps[i]);
    return s / norm();
  }

  /// Integral of conj(f(k)) psi(k) dk.
  template <typename F>
  cplx overlap(F&& f) const {
    cplx s{};
    for (std::size_t i = 0; i < grid.size(); ++i) s += weights[i] * std::conj(cplx(f(grid[i]))) * amps[i];
    return s;
  }
};

/// Ground-state Gaussian pi^{-1/4} exp(-k^2/2).
inline double ground_gaussian(double k) {
  return std::exp(-0.5 * k * k - 0.25 * std::log(std::numbers::pi));
}

/// Composite 16-point Gauss-Legendre grid on [lo, hi] with the given
/// breakpoints and panels no wider than max_panel.
inline numerics::Grid make_k_grid(double lo, double hi, std::vector<double> breakpoints, double max_panel) {
  std::vector<double> pts{lo, hi};
  for (double b : breakpoints) {
    if (b > lo && b < hi) pts.push_back(b);
  }
  return numerics::make_panel_grid(std::move(pts), max_panel, numerics::gauss_legendre<16>());
}

/// Fock components <n|psi> for n = 0..n_max, using <k|n> = (-i)^n psi_n(k).
inline FockAmplitudes fock_projection(const MomentumState& state, int n_max) {
  FockAmplitudes out;
  out.amps.assign(static_cast<std::size_t>(n_max) + 1, cplx{});
  for (std::size_t i = 0; i < state.grid.size(); ++i) {
    const cplx wa = state.weights[i] * state.amps[i];
    if (wa == cplx{}) continue;
    const auto h = hermite_functions(n_max, state.grid[i]);
    for (int n = 0; n <= n_max; ++n) out.amps[static_cast<std::size_t>(n)] += h[static_cast<std::size_t>(n)] * wa;
  }
  for (int n = 0; n <= n_max; ++n) out.amps[static_cast<std::size_t>(n)] *= detail::i_pow(n);
  const double norm = state.norm();
  out.tail_mass = norm > 0.0 ? std::max(0.0, 1.0 - out.norm() / norm) : 0.0;
  return out;
}

}  // namespace trapscatter
