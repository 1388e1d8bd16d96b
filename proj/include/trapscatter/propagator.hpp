#pragma once

// Momentum-space route for an inverted-oscillator excited state of any
// strength. With k in ground-trap units the excited Hamiltonian is
//   H = (w/2) k^2 - (v^2 / 2w) x^2,   w = omega_T/Gamma, v = Omega_inv/Gamma,
// whose propagator is the Mehler kernel continued to imaginary frequency.
// Acting on the ground-state Gaussian it yields another Gaussian, so the
// vacuum overlap phi(tau) = <0|U(tau)|0> is closed form and drives the
// same lag-integral rate formulas as the Fock route. v -> 0 is the free
// excited state.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "trapscatter/core.hpp"
#include "trapscatter/errors.hpp"
#include "trapscatter/fock.hpp"
#include "trapscatter/momentum.hpp"
#include "trapscatter/numerics/quadrature.hpp"

namespace trapscatter::propagator {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

namespace detail {

// sinh(x)/x.
inline double sinhc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 + x * x / 6.0;
  return std::sinh(x) / x;
}

struct GaussianShape {
  cplx width;  // a(tau): psi ~ exp(-a k^2 / 2)
  cplx norm;   // pi^{-1/4} (C - i rho S)^{-1/2}
};

inline GaussianShape evolved_shape(double tau, double inv_ratio, double trap_ratio) {
  const double v = inv_ratio, w = trap_ratio;
  const double c = std::cosh(v * tau);
  const double rs = (v / w) * std::sinh(v * tau);   // (v/w) sinh(v tau)
  const double ws = w * tau * sinhc(v * tau);       // (w/v) sinh(v tau)
  GaussianShape g;
  g.width = cplx{-ws, c} / cplx{rs, c};
  g.norm = std::exp(-0.25 * std::log(std::numbers::pi)) / std::sqrt(cplx{c, -rs});
  return g;
}

inline double inv_ratio_of(const Params& p) {
  switch (p.potential.kind) {
    case PotentialKind::AntiTrapped: return p.potential.inv_ratio;
    case PotentialKind::FreeExcited: return 0.0;
    default: throw std::invalid_argument("propagator: needs an anti-trapped or free excited potential");
  }
}

inline double lag_rate(double v) { return 0.5 * (1.0 + v); }

inline double oscillation(const Params& p) { return std::abs(p.detuning) + p.trap_ratio; }

}  // namespace detail

/// Inverted-oscillator propagator <k|U(tau)|k'> in ground-trap units.
inline cplx mehler_kernel(double k, double k_prime, double tau, double inv_ratio, double trap_ratio) {
  if (!(tau > 0.0)) throw std::domain_error("mehler_kernel: singular at tau = 0");
  if (!(inv_ratio > 0.0)) throw std::domain_error("mehler_kernel: needs inv_ratio > 0 (free limit is a delta function)");
  const double v = inv_ratio, w = trap_ratio;
  const double lambda = w / (v * std::sinh(v * tau));
  const double half_sinh = std::sinh(0.5 * v * tau);
  // (k^2 + k'^2) cosh - 2 k k' written to avoid cancellation as v tau -> 0.
  const double quad = (k - k_prime) * (k - k_prime) + 2.0 * half_sinh * half_sinh * (k * k + k_prime * k_prime);
  const cplx pre = std::sqrt(cplx{0.0, lambda / (2.0 * std::numbers::pi)});
  return pre * std::exp(cplx{0.0, -0.5 * lambda * quad});
}

/// U(tau) applied to the ground-state Gaussian, evaluated at k.
inline cplx evolved_gaussian(double k, double tau, double inv_ratio, double trap_ratio) {
  if (!(tau >= 0.0)) throw std::invalid_argument("evolved_gaussian: tau must be nonnegative");
  const auto g = detail::evolved_shape(tau, inv_ratio, trap_ratio);
  return g.norm * std::exp(-0.5 * g.width * k * k);
}

/// <k^2(tau)> / <k^2(0)> = cosh^2(v tau) + (v/w)^2 sinh^2(v tau).
inline double variance_ratio(double tau, double inv_ratio, double trap_ratio) {
  const double c = std::cosh(inv_ratio * tau);
  const double s = (inv_ratio / trap_ratio) * std::sinh(inv_ratio * tau);
  return c * c + s * s;
}

/// phi(tau) = <0|U(tau)|0>, closed form.
inline cplx vacuum_overlap(double tau, double inv_ratio, double trap_ratio) {
  const auto g = detail::evolved_shape(tau, inv_ratio, trap_ratio);
  return g.norm * std::exp(-0.25 * std::log(std::numbers::pi)) * std::sqrt(2.0 * std::numbers::pi / (1.0 + g.width));
}

/// phi(tau) by quadrature of the ground Gaussian against the evolved one.
inline cplx vacuum_overlap_quadrature(double tau, double inv_ratio, double trap_ratio) {
  static const numerics::Grid grid = make_k_grid(-12.0, 12.0, {0.0}, 0.25);
  cplx s{};
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const double k = grid.nodes[i];
    s += grid.weights[i] * ground_gaussian(k) * evolved_gaussian(k, tau, inv_ratio, trap_ratio);
  }
  return s;
}

enum class Overlap { ClosedForm, Quadrature };

inline cplx overlap(Overlap route, double tau, double v, double w) {
  return route == Overlap::ClosedForm ? vacuum_overlap(tau, v, w) : vacuum_overlap_quadrature(tau, v, w);
}

/// Excited population at time t over Omega^2:
/// (1/2) int_0^t Re[e^{i Delta s} phi(s)] (e^{-s/2} - e^{-t+s/2}) ds.
inline double excited_norm(const Params& p, double t = kInfinity, Overlap route = Overlap::ClosedForm,
                           double tol = 1e-11) {
  validate(p);
  const double v = detail::inv_ratio_of(p), w = p.trap_ratio, d = p.detuning;
  auto f = [&](double s) {
    const double window = std::isinf(t) ? std::exp(-0.5 * s) : std::exp(-0.5 * s) - std::exp(-t + 0.5 * s);
    return std::real(std::exp(cplx{0.0, d * s}) * overlap(route, s, v, w)) * window;
  };
  return 0.5 * numerics::integrate_decaying_oscillatory(f, detail::lag_rate(v), detail::oscillation(p), t, tol).value;
}

/// c_0(t) / Omega.
inline cplx ground_amplitude(const Params& p, double t = kInfinity, Overlap route = Overlap::ClosedForm,
                             double tol = 1e-11) {
  validate(p);
  const double v = detail::inv_ratio_of(p), w = p.trap_ratio, d = p.detuning;
  auto f = [&](double tau) { return std::exp(cplx{-0.5 * tau, d * tau}) * overlap(route, tau, v, w); };
  const auto r = numerics::integrate_decaying_oscillatory(f, detail::lag_rate(v), detail::oscillation(p), t, tol);
  return cplx{0.0, -0.5} * r.value;
}

inline RateResult rates(const Params& p, double t = kInfinity, Overlap route = Overlap::ClosedForm) {
  return {excited_norm(p, t, route), std::norm(ground_amplitude(p, t, route))};
}

/// Total rate over R_ideal across detunings.
inline std::vector<double> spectrum(const Params& p, const std::vector<double>& detunings, double t = kInfinity) {
  std::vector<double> out;
  out.reserve(detunings.size());
  Params q = p;
  for (double d : detunings) {
    q.detuning = d;
    out.push_back(excited_norm(q, t));
  }
  return out;
}

/// psi_e(k, t) = -i (Omega/2) int_0^t e^{(i Delta - 1/2) tau} g(k, tau) dtau.
inline cplx excited_amplitude(const Params& p, double k, double t_final = kInfinity, double tol = 1e-10) {
  const double v = detail::inv_ratio_of(p), w = p.trap_ratio, d = p.detuning;
  auto f = [&](double tau) { return std::exp(cplx{-0.5 * tau, d * tau}) * evolved_gaussian(k, tau, v, w); };
  const double freq = std::abs(d) + 0.5 * w * k * k + v;
  const auto r = numerics::integrate_decaying_oscillatory(f, detail::lag_rate(v), freq, t_final, tol);
  return cplx{0.0, -0.5} * p.drive * r.value;
}

/// excited_amplitude sampled on a grid over [-half_width, half_width].
/// Anti-trapped states carry power-law momentum tails, so the grid norm is
/// a lower bound there.
inline MomentumState steady_state_k(const Params& p, double t_final = kInfinity, double half_width = 8.0,
                                    double max_panel = 0.1, double tol = 1e-10) {
  validate(p);
  const double w = p.trap_ratio, d = p.detuning;
  std::vector<double> hints{0.0};
  if (d > 0.0) {
    hints.push_back(std::sqrt(2.0 * d / w));
    hints.push_back(-std::sqrt(2.0 * d / w));
  }
  const auto grid = make_k_grid(-half_width, half_width, hints, max_panel);
  MomentumState s;
  s.grid = grid.nodes;
  s.weights = grid.weights;
  s.amps.reserve(s.grid.size());
  for (double k : s.grid) s.amps.push_back(excited_amplitude(p, k, t_final, tol));
  return s;
}

}  // namespace trapscatter::propagator
