#pragma once

// Free (untrapped) excited state. Momentum is conserved while excited, so
// each wavenumber is driven independently with detuning omega_T k^2 - 2 Delta
// and the quasi-steady state is diagonal in k.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "trapscatter/core.hpp"
#include "trapscatter/errors.hpp"
#include "trapscatter/fock.hpp"
#include "trapscatter/momentum.hpp"
#include "trapscatter/numerics/fit.hpp"
#include "trapscatter/numerics/quadrature.hpp"

namespace trapscatter::free_excited {

struct Options {
  double rel_tol = 1e-10;
  /// Keep the photon-kick shift sqrt(2) eta in the absorption numerator.
  bool include_recoil = false;
};

namespace detail {

inline double kick_shift(const Params& p, const Options& opt) {
  return opt.include_recoil ? std::numbers::sqrt2 * p.eta : 0.0;
}

// Abscissae where the energy denominator is smallest.
inline std::vector<double> resonance_hints(const Params& p, double shift) {
  std::vector<double> hints{0.0};
  if (p.detuning > 0.0) {
    const double kp = std::sqrt(2.0 * p.detuning / p.trap_ratio);
    hints.push_back(kp);
    hints.push_back(-kp);
  }
  if (shift != 0.0) hints.push_back(shift);
  return hints;
}

// Panel width resolving the narrowest Lorentzian feature in k.
inline double resonance_panel(const Params& p) {
  const double w = p.trap_ratio;
  const double kp = p.detuning > 0.0 ? std::sqrt(2.0 * p.detuning / w) : 0.0;
  const double width = 1.0 / (2.0 * w * kp + std::sqrt(w) + 1.0);
  return std::min(0.25, 0.5 * width);
}

inline Params checked(const Params& p, const char* where) {
  require_potential(p, PotentialKind::FreeExcited, where);
  validate(p);
  return p;
}

}  // namespace detail

/// c_e(k) = -Omega g(k - sqrt2 eta) / (omega_T k^2 - 2 Delta - i).
inline cplx steady_amplitude(const Params& p, double k, double shift = 0.0) {
  const cplx denom{p.trap_ratio * k * k - 2.0 * p.detuning, -1.0};
  return -p.drive * ground_gaussian(k - shift) / denom;
}

/// Quasi-steady excited state on a grid refined until its norm is stable.
inline MomentumState steady_state_k(const Params& p, const Options& opt = {}, double max_panel = 0.0) {
  detail::checked(p, "free_excited::steady_state_k");
  const double shift = detail::kick_shift(p, opt);
  const double reach = std::abs(shift) + 8.0;
  double h = max_panel > 0.0 ? max_panel : detail::resonance_panel(p);
  auto build = [&](double panel) {
    const auto g = make_k_grid(-reach, reach, detail::resonance_hints(p, shift), panel);
    MomentumState s;
    s.grid = g.nodes;
    s.weights = g.weights;
    s.amps.reserve(s.grid.size());
    for (double k : s.grid) s.amps.push_back(steady_amplitude(p, k, shift));
    return s;
  };
  MomentumState state = build(h);
  for (int attempt = 0; attempt < 12; ++attempt) {
    MomentumState finer = build(0.5 * h);
    const double a = state.norm(), b = finer.norm();
    if (std::abs(a - b) <= 1e-9 * std::abs(b)) return state;
    state = std::move(finer);
    h *= 0.5;
  }
  throw QuadratureError("free_excited::steady_state_k: grid refinement did not converge");
}

/// R_sc / R_ideal, the Lorentzian-filtered momentum distribution.
inline double total_rate(const Params& p, const Options& opt = {}) {
  detail::checked(p, "free_excited::total_rate");
  const double shift = detail::kick_shift(p, opt);
  const double w = p.trap_ratio, d = p.detuning;
  auto f = [&](double k) {
    const double e = w * k * k - 2.0 * d;
    return std::exp(-(k - shift) * (k - shift)) / std::sqrt(std::numbers::pi) / (e * e + 1.0);
  };
  return numerics::integrate_line(f, detail::resonance_hints(p, shift), {1e-300, opt.rel_tol}).value;
}

/// R_elastic / R_ideal, overlap of the emitted state with the ground state
/// averaged over emission directions when recoil is kept.
inline double elastic_rate(const Params& p, const Options& opt = {}) {
  detail::checked(p, "free_excited::elastic_rate");
  const double shift = detail::kick_shift(p, opt);
  const double w = p.trap_ratio, d = p.detuning;
  auto amplitude = [&](double emit_shift) {
    auto f = [&](double k) {
      const cplx denom{w * k * k - 2.0 * d, -1.0};
      return ground_gaussian(k - emit_shift) * ground_gaussian(k - shift) / denom;
    };
    auto hints = detail::resonance_hints(p, shift);
    if (emit_shift != 0.0) hints.push_back(emit_shift);
    return numerics::integrate_line(f, hints, {1e-300, opt.rel_tol}).value;
  };
  if (shift == 0.0) return std::norm(amplitude(0.0));
  return emission_average([&](double u) { return std::norm(amplitude(shift * u)); });
}

inline RateResult rates(const Params& p, const Options& opt = {}) {
  return {total_rate(p, opt), elastic_rate(p, opt)};
}

enum class Branch { SmallTrap, LargeTrap };

/// Closed-form expansions of the rates for omega_T << Gamma (to second
/// order) or omega_T >> Gamma (leading behavior of the narrow Lorentzian
/// filter). The caller decides whether the branch applies.
inline RateResult asymptotic_rates(const Params& p, Branch branch) {
  const double w = p.trap_ratio, d = p.detuning;
  const double D = 4.0 * d * d + 1.0;
  RateResult r;
  if (branch == Branch::SmallTrap) {
    // <k^2> = 1/2 and <k^4> = 3/4 of the ground-state distribution.
    r.total = (1.0 + 2.0 * d * w / D - 0.75 * w * w / D + 12.0 * d * d * w * w / (D * D)) / D;
    const cplx z{-2.0 * d, -1.0};
    r.elastic = std::norm((1.0 / z) * (1.0 - w / (2.0 * z) + 0.75 * w * w / (z * z)));
    return r;
  }
  const double s = std::sqrt(D);
  r.total = std::sqrt(std::numbers::pi / (2.0 * w)) * std::sqrt(s + 2.0 * d) / s;
  if (d > 0.0) r.total *= std::exp(-2.0 * d / w);
  // Amplitude sqrt(pi/(w z)) from the bare Lorentzian, minus 2/w from the
  // Gaussian's departure from 1 across the wings.
  const cplx z{-2.0 * d, -1.0};
  const cplx amp = std::sqrt(std::numbers::pi / (w * z)) - 2.0 / w;
  r.elastic = std::norm(amp);
  return r;
}

/// Detuning maximizing total_rate, to 1e-4 Gamma.
inline double optimal_detuning(const Params& p, double tol = 1e-5) {
  detail::checked(p, "free_excited::optimal_detuning");
  Params q = p;
  return numerics::maximize_scalar(
      [&](double d) {
        q.detuning = d;
        return total_rate(q);
      },
      -1.0, 3.0, tol, 81);
}

/// Normalized excess heating (1/R_sc) d<n>/dt = <n> of the emitted motional
/// state, from its Fock components. Recoil is excluded.
inline double heating_rate(const Params& p, double tol = 1e-10, int n_limit = 1 << 16) {
  detail::checked(p, "free_excited::heating_rate");
  Params q = p;
  q.eta = 0.0;
  double previous = -1.0;
  for (int n_max = 64; n_max <= n_limit; n_max *= 2) {
    const double panel = std::min(detail::resonance_panel(q), 2.0 / std::sqrt(2.0 * n_max + 1.0));
    const auto state = steady_state_k(q, {}, panel);
    const auto c = fock_projection(state, n_max);
    double num = 0.0, den = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      num += n * std::norm(c.amps[static_cast<std::size_t>(n)]);
      den += std::norm(c.amps[static_cast<std::size_t>(n)]);
    }
    const double mean = num / den;
    if (c.tail_mass < tol && std::abs(mean - previous) <= 1e-7 * std::max(mean, 1e-12)) return mean;
    previous = mean;
  }
  throw TruncationError("free_excited::heating_rate: Fock projection did not converge below n=" +
                        std::to_string(n_limit));
}

/// Phonons from free spreading over the mean excited time 2/Gamma:
/// (omega_T t)^2 / 4 = (omega_T / Gamma)^2.
inline double heating_estimate(const Params& p) { return p.trap_ratio * p.trap_ratio; }

/// Trap ratio at which free spreading matches recoil heating, sqrt(7/5) eta.
inline double recoil_crossover(double eta) { return std::sqrt(1.4) * eta; }

}  // namespace trapscatter::free_excited
