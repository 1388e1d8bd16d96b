#pragma once

// Anti-trapped excited state with inverted-oscillator frequency equal to the
// ground-trap frequency. The excited motional evolution then squeezes the
// vacuum: U(tau)|0> populates only even Fock states, and the excited state
// built up by time t is
//   c(t) = -i (Omega/2) int_0^t exp((i Delta - 1/2) tau) U(tau)|0> dtau.
// Norms and phonon moments are computed from resummed single-time integrals
// of vacuum overlaps; individual Fock amplitudes by direct time quadrature.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trapscatter/core.hpp"
#include "trapscatter/errors.hpp"
#include "trapscatter/fock.hpp"
#include "trapscatter/numerics/fit.hpp"
#include "trapscatter/numerics/quadrature.hpp"
#include "trapscatter/numerics/special.hpp"

namespace trapscatter::anti_trapped {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
/// Evaluation time used for finite-time steady rates.
inline constexpr double kSteadyTime = 13.0;

namespace detail {

inline void check(const Params& p, const char* where) {
  require_potential(p, PotentialKind::AntiTrapped, where);
  validate(p);
  const double w = p.trap_ratio, v = p.potential.inv_ratio;
  if (std::abs(v - w) > 1e-9 * std::max(w, v)) {
    throw std::invalid_argument(std::string(where) +
                                ": the Fock-basis route needs inv_ratio equal to trap_ratio; use the "
                                "propagator module for general anti-trap strengths");
  }
}

inline void check_time(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("anti_trapped: time must be nonnegative");
}

// 1/sqrt(cosh x), finite for large x.
inline double inv_sqrt_cosh(double x) {
  x = std::abs(x);
  return std::sqrt(2.0 * std::exp(-x) / (1.0 + std::exp(-2.0 * x)));
}

// cosh(x)^{-3/2}.
inline double inv_cosh_three_halves(double x) {
  const double r = inv_sqrt_cosh(x);
  return r * r * r;
}

// int_s^{u_max} exp(c u) du, with u_max = infinity allowed for c < 0.
inline double exp_integral(double c, double s, double u_max) {
  if (std::isinf(u_max)) return -std::exp(c * s) / c;
  const double len = u_max - s;
  if (std::abs(c) * len < 1e-12) return len * std::exp(c * s);
  return std::exp(c * s) * std::expm1(c * len) / c;
}

// Time-window weights for a lag s between the two time arguments.
inline double norm_window(double s, double t) {
  if (std::isinf(t)) return std::exp(-0.5 * s);
  return std::exp(-0.5 * s) - std::exp(-t + 0.5 * s);
}

inline double phonon_window(double s, double t, double w) {
  const double u_max = std::isinf(t) ? kInfinity : 2.0 * t - s;
  const double grow = exp_integral(w - 0.5, s, u_max);
  const double decay = exp_integral(-w - 0.5, s, u_max);
  const double flat = exp_integral(-0.5, s, u_max);
  return 0.25 * (0.5 * (grow + decay) - std::cosh(w * s) * flat);
}

inline double lag_rate(double w) { return 0.5 * (1.0 + w); }

}  // namespace detail

/// Excited population sum_n |c_2n(t)|^2 / Omega^2; t may be infinite.
inline double excited_norm(const Params& p, double t = kInfinity, double tol = 1e-11) {
  detail::check(p, "anti_trapped::excited_norm");
  detail::check_time(t);
  const double w = p.trap_ratio, d = p.detuning;
  auto f = [&](double s) { return std::cos(d * s) * detail::inv_sqrt_cosh(w * s) * detail::norm_window(s, t); };
  return 0.5 * numerics::integrate_decaying_oscillatory(f, detail::lag_rate(w), d, t, tol).value;
}

/// c_0(t) / Omega, the amplitude of the motional ground state.
inline cplx ground_amplitude(const Params& p, double t = kInfinity, double tol = 1e-11) {
  detail::check(p, "anti_trapped::ground_amplitude");
  detail::check_time(t);
  const double w = p.trap_ratio, d = p.detuning;
  auto f = [&](double tau) {
    return std::exp(cplx{-0.5 * tau, d * tau}) * detail::inv_sqrt_cosh(w * tau);
  };
  const auto r = numerics::integrate_decaying_oscillatory(f, detail::lag_rate(w), d, t, tol);
  return cplx{0.0, -0.5} * r.value;
}

/// <psi_e(t)| n |psi_e(t)> / Omega^2. Finite at t = infinity only for
/// trap_ratio < 1/2.
inline double phonon_moment(const Params& p, double t = kInfinity, double tol = 1e-11) {
  detail::check(p, "anti_trapped::phonon_moment");
  detail::check_time(t);
  const double w = p.trap_ratio, d = p.detuning;
  if (std::isinf(t) && w >= 0.5) {
    throw std::domain_error("anti_trapped::phonon_moment: diverges at infinite time for trap_ratio >= 1/2");
  }
  auto f = [&](double s) {
    return std::cos(d * s) * detail::inv_cosh_three_halves(w * s) * detail::phonon_window(s, t, w);
  };
  // For w < 1/2 the lag integrand decays like exp(-(1+w)s/2); otherwise the
  // range is finite and only the panel width matters.
  const double rate = w < 0.5 ? detail::lag_rate(w) : std::max(0.5, w);
  return 0.5 * numerics::integrate_decaying_oscillatory(f, rate, d, t, tol).value;
}

/// Total and elastic rates over R_ideal at time t (default: t -> infinity).
inline RateResult steady_rates(const Params& p, double t = kInfinity) {
  return {excited_norm(p, t), std::norm(ground_amplitude(p, t))};
}

/// Fock amplitudes c_0 .. c_{n_max} at time t by direct time quadrature of
/// the squeezed-vacuum integrand (odd entries zero). tail_mass is the
/// fraction of the excited norm beyond n_max; TruncationError is raised when
/// it exceeds tol (tol >= 1 disables the check, as heavy power-law tails
/// rarely meet tight tolerances at practical n_max).
inline FockAmplitudes amplitudes_t(const Params& p, double t, int n_max, double tol = 1.0) {
  detail::check(p, "anti_trapped::amplitudes_t");
  detail::check_time(t);
  if (n_max < 0) throw std::invalid_argument("anti_trapped::amplitudes_t: n_max must be nonnegative");
  const double w = p.trap_ratio, d = p.detuning;
  const int half = n_max / 2;
  FockAmplitudes out;
  out.parity = Parity::EvenOnly;
  out.amps.assign(static_cast<std::size_t>(n_max) + 1, cplx{});
  if (t == 0.0) return out;

  // Integrand for index 2n switches on near tanh(w tau)^n ~ 1, i.e. tau ~
  // ln(2n)/(2w), then decays like exp(-(1+w) tau / 2).
  const double onset = std::log(2.0 * half + 2.0) / (2.0 * w);
  const double t_end = std::min(t, onset + 80.0 / (1.0 + w));
  const double panel = std::min({0.25, std::numbers::pi / (4.0 * std::abs(d) + 1.0), 0.25 / w});
  std::vector<cplx> acc(static_cast<std::size_t>(half) + 1, cplx{});
  std::vector<double> beta(static_cast<std::size_t>(half) + 1);
  beta[0] = 1.0;
  for (int n = 0; n < half; ++n) {
    beta[static_cast<std::size_t>(n + 1)] =
        beta[static_cast<std::size_t>(n)] * std::sqrt((2.0 * n + 1.0) * (2.0 * n + 2.0)) / (2.0 * (n + 1.0));
  }
  numerics::for_each_panel_node(0.0, t_end, panel, numerics::gauss_legendre<16>(), [&](double tau, double wt) {
    const double th = std::tanh(w * tau);
    // Magnitude in log form so high powers of tanh underflow gracefully.
    const double log_th = std::log(th);
    const cplx lead = wt * std::exp(cplx{-0.5 * tau, d * tau}) * detail::inv_sqrt_cosh(w * tau);
    for (int n = 0; n <= half; ++n) {
      const double m = n == 0 ? 1.0 : std::exp(n * log_th);
      if (m == 0.0) break;
      acc[static_cast<std::size_t>(n)] += lead * (m * beta[static_cast<std::size_t>(n)]);
    }
  });
  // Phase i^n of the squeezed vacuum and the -i (Omega/2) prefactor.
  const cplx pre = cplx{0.0, -0.5} * p.drive;
  double sum = 0.0;
  for (int n = 0; n <= half; ++n) {
    const cplx c = pre * trapscatter::detail::i_pow(n) * acc[static_cast<std::size_t>(n)];
    out.amps[static_cast<std::size_t>(2 * n)] = c;
    sum += std::norm(c);
  }
  const double exact = excited_norm(p, t) * p.drive * p.drive;
  out.tail_mass = exact > 0.0 ? std::max(0.0, 1.0 - sum / exact) : 0.0;
  if (tol < 1.0 && out.tail_mass > tol) {
    throw TruncationError("anti_trapped::amplitudes_t: norm beyond n_max=" + std::to_string(n_max) +
                          " is " + std::to_string(out.tail_mass) + " of the total");
  }
  return out;
}

/// Large-n steady population |c_2n(infinity)|^2 from the Stirling form of
/// the squeezed vacuum. Requires n >= 20.
inline double tail_population(const Params& p, int n) {
  detail::check(p, "anti_trapped::tail_population");
  if (n < 20) throw std::invalid_argument("anti_trapped::tail_population: needs n >= 20");
  const double w = p.trap_ratio;
  const double x = 1.0 / (2.0 * w);
  const double lg = numerics::log_gamma(0.25 + 0.25 / w);
  const double log_val = std::log(p.drive * p.drive / (8.0 * w * w)) - 0.5 * std::log(2.0 * std::numbers::pi) -
                         x * std::numbers::ln2 + 2.0 * lg - (1.0 + x) * std::log(static_cast<double>(n));
  return std::exp(log_val);
}

/// Finite-time large-n population
/// b Gamma((w+1)/(4w), 2n e^{-2wt})^2 (2n)^{-1-1/(2w)}, b = Omega^2 / (sqrt(2 pi) 4 w^2).
inline double amplitudes_gamma_form(const Params& p, double t, int n) {
  detail::check(p, "anti_trapped::amplitudes_gamma_form");
  detail::check_time(t);
  if (n < 1) throw std::invalid_argument("anti_trapped::amplitudes_gamma_form: needs n >= 1");
  const double w = p.trap_ratio;
  const double b = p.drive * p.drive / (std::sqrt(2.0 * std::numbers::pi) * 4.0 * w * w);
  const double a = (w + 1.0) / (4.0 * w);
  const double lower = std::isinf(t) ? 0.0 : 2.0 * n * std::exp(-2.0 * w * t);
  const double g = numerics::upper_incomplete_gamma(a, lower);
  return b * g * g * std::pow(2.0 * n, -1.0 - 1.0 / (2.0 * w));
}

enum class HeatingModel {
  /// Resummed phonon moment over excited norm.
  Exact,
  /// 2 int dn n |c_2n(t)|^2 with the incomplete-gamma populations.
  GammaIntegral,
};

struct HeatingSeries {
  std::vector<double> times;
  std::vector<double> rate;  ///< (1/R_sc) d<n>/dt
  std::optional<double> fitted_exponent;
  double fit_start = 0.0;
  double fit_stop = 0.0;
  /// Infinite-time value, present when trap_ratio < 1/2.
  std::optional<double> plateau;
};

/// Normalized heating rate at one time.
inline double heating_rate_at(const Params& p, double t, HeatingModel model = HeatingModel::Exact) {
  const double norm = excited_norm(p, t);
  if (model == HeatingModel::Exact) return phonon_moment(p, t) / norm;
  const double w = p.trap_ratio;
  const double a = (w + 1.0) / (4.0 * w);
  const double b = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * 4.0 * w * w);
  const double shrink = std::isinf(t) ? 0.0 : std::exp(-2.0 * w * t);
  if (std::isinf(t) && w >= 0.5) {
    throw std::domain_error("anti_trapped::heating_rate_at: diverges at infinite time for trap_ratio >= 1/2");
  }
  // Integrate in x = ln n; the incomplete gamma cuts the integrand off once
  // 2n e^{-2wt} exceeds a few tens.
  auto f = [&](double x) {
    const double n = std::exp(x);
    const double g = numerics::upper_incomplete_gamma(a, 2.0 * n * shrink);
    return 2.0 * n * n * b * g * g * std::pow(2.0 * n, -1.0 - 1.0 / (2.0 * w));
  };
  const double x_lo = std::log(0.5);
  double value = 0.0;
  if (shrink > 0.0) {
    const double x_hi = std::log((60.0 + a) / (2.0 * shrink));
    value = numerics::integrate_interval(f, x_lo, std::max(x_hi, x_lo + 1.0), {1e-300, 1e-9}).value;
  } else {
    // Power-law tail n^{1 - 1/(2w)}: integrate to a large cutoff then add the remainder.
    const double x_hi = std::log(1e6);
    value = numerics::integrate_interval(f, x_lo, x_hi, {1e-300, 1e-9}).value;
    const double e = 1.0 / (2.0 * w) - 1.0;
    value += f(x_hi) / e;
  }
  return value / norm;
}

/// Heating rate over a time grid. For trap_ratio >= 1/2 the log-rate is fit
/// against time over [max(5, 2/trap_ratio), last time]; for smaller trap
/// ratios the infinite-time plateau is reported instead.
inline HeatingSeries heating_series(const Params& p, const std::vector<double>& times,
                                    HeatingModel model = HeatingModel::Exact) {
  detail::check(p, "anti_trapped::heating_series");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0) || std::isinf(times[i]) || (i > 0 && !(times[i] > times[i - 1]))) {
      throw std::invalid_argument("anti_trapped::heating_series: times must be positive, finite and increasing");
    }
  }
  HeatingSeries out;
  out.times = times;
  out.rate.reserve(times.size());
  for (double t : times) out.rate.push_back(heating_rate_at(p, t, model));
  const double w = p.trap_ratio;
  if (w < 0.5) {
    out.plateau = heating_rate_at(p, kInfinity, model);
    return out;
  }
  if (times.empty()) return out;
  out.fit_start = std::max(5.0, 2.0 / w);
  out.fit_stop = times.back();
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= out.fit_start - 1e-12 && out.rate[i] > 0.0) {
      xs.push_back(times[i]);
      ys.push_back(out.rate[i]);
    }
  }
  if (xs.size() >= 2) out.fitted_exponent = numerics::fit_semilog_slope(xs, ys).slope;
  return out;
}

/// Phonons from inverted-oscillator spreading over the mean excited time
/// 2/Gamma: (cosh(2 omega_T t) - 1) / 2.
inline double heating_estimate(const Params& p) { return 0.5 * (std::cosh(4.0 * p.trap_ratio) - 1.0); }

/// Trap ratio at which anti-trap spreading matches recoil heating, sqrt(7/20) eta.
inline double recoil_crossover(double eta) { return std::sqrt(0.35) * eta; }

}  // namespace trapscatter::anti_trapped
