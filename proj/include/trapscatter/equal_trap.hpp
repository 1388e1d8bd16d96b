#pragma once

// Equally trapped excited state (magic-wavelength trapping). The drive
// couples |g,0> to |e,n'> through the photon-kick element, each sideband
// n' detuned by 2 n' omega_T - 2 Delta.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "trapscatter/core.hpp"
#include "trapscatter/errors.hpp"
#include "trapscatter/fock.hpp"
#include "trapscatter/numerics/special.hpp"

namespace trapscatter::equal_trap {

namespace detail {

// |<n|e^{i eta X}|0>|^2: a Poisson weight of mean eta^2.
inline double kick_weight(int n, double eta) {
  if (eta == 0.0) return n == 0 ? 1.0 : 0.0;
  const double x = eta * eta;
  return std::exp(-x + n * std::log(x) - numerics::log_factorial(n));
}

// Smallest n_max whose Poisson tail is below tol.
inline int sideband_cutoff(double eta, double tol, int n_limit = 100000) {
  double mass = 0.0;
  for (int n = 0; n <= n_limit; ++n) {
    mass += kick_weight(n, eta);
    if (1.0 - mass < tol && n >= 1) return n;
  }
  throw TruncationError("equal_trap: sideband sum did not converge");
}

inline int resolve_n_max(const Params& p, int n_max, double tol) {
  if (n_max > 0) {
    double mass = 0.0;
    for (int n = 0; n <= n_max; ++n) mass += kick_weight(n, p.eta);
    if (1.0 - mass > tol) {
      throw TruncationError("equal_trap: kick weight beyond n_max=" + std::to_string(n_max) + " is " +
                            std::to_string(1.0 - mass));
    }
    return n_max;
  }
  return sideband_cutoff(p.eta, tol);
}

}  // namespace detail

/// Steady excited amplitudes c_n' with the ground state held in |0>.
/// n_max <= 0 selects the cutoff from the kick-weight tail.
inline FockAmplitudes steady_amplitudes(const Params& p, int n_max = 0, double tol = 1e-12) {
  require_potential(p, PotentialKind::EqualTrap, "equal_trap::steady_amplitudes");
  validate(p);
  const int n_top = detail::resolve_n_max(p, n_max, tol);
  FockAmplitudes out;
  out.amps.resize(static_cast<std::size_t>(n_top) + 1);
  double mass = 0.0;
  for (int n = 0; n <= n_top; ++n) {
    const cplx denom{2.0 * n * p.trap_ratio - 2.0 * p.detuning, -1.0};
    out.amps[static_cast<std::size_t>(n)] = -p.drive * displacement_element(n, 0, p.eta) / denom;
    mass += detail::kick_weight(n, p.eta);
  }
  out.tail_mass = std::max(0.0, 1.0 - mass);
  return out;
}

/// |c_n'|^2 for n' = 0..n_max.
inline std::vector<double> excited_populations(const Params& p, int n_max = 0, double tol = 1e-12) {
  const auto c = steady_amplitudes(p, n_max, tol);
  std::vector<double> out;
  out.reserve(c.size());
  for (const auto& a : c.amps) out.push_back(std::norm(a));
  return out;
}

/// R_sc / R_ideal = sum_n' |c_n'|^2 / Omega^2.
inline double total_rate(const Params& p, int n_max = 0, double tol = 1e-12) {
  require_potential(p, PotentialKind::EqualTrap, "equal_trap::total_rate");
  validate(p);
  const int n_top = detail::resolve_n_max(p, n_max, tol);
  double sum = 0.0;
  for (int n = 0; n <= n_top; ++n) {
    const double d = 2.0 * n * p.trap_ratio - 2.0 * p.detuning;
    sum += detail::kick_weight(n, p.eta) / (d * d + 1.0);
  }
  return sum;
}

/// R_elastic / R_ideal: emission-averaged probability of returning to |0>.
inline double elastic_rate(const Params& p, int n_max = 0, double tol = 1e-12) {
  const auto c = steady_amplitudes(p, n_max, tol);
  const double scale = 1.0 / (p.drive * p.drive);
  return emission_average([&](double u) {
    cplx overlap{};
    for (std::size_t n = 0; n < c.size(); ++n) {
      overlap += displacement_element(0, static_cast<int>(n), -p.eta * u) * c.amps[n];
    }
    return std::norm(overlap) * scale;
  });
}

inline RateResult rates(const Params& p, int n_max = 0, double tol = 1e-12) {
  return {total_rate(p, n_max, tol), elastic_rate(p, n_max, tol)};
}

/// Two-sideband Lamb-Dicke expansion of total_rate, accurate to O(eta^4).
inline double total_rate_lamb_dicke(const Params& p) {
  const double e2 = p.eta * p.eta;
  const double d1 = 2.0 * p.trap_ratio - 2.0 * p.detuning;
  return (static_rate(p.detuning) + e2 / (d1 * d1 + 1.0)) / (1.0 + e2);
}

/// Phonons gained per unit time (Gamma units), from emission out of the
/// steady excited state: Gamma (<n>_e + (2/5) eta^2 <psi_e|psi_e>).
inline double phonon_rate(const Params& p, int n_max = 0, double tol = 1e-12) {
  const auto c = steady_amplitudes(p, n_max, tol);
  double n_mean = 0.0;
  double norm = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    n_mean += static_cast<double>(n) * std::norm(c.amps[n]);
    norm += std::norm(c.amps[n]);
  }
  return n_mean + emission_moment(2) * p.eta * p.eta * norm;
}

/// Recoil heating in the Lamb-Dicke regime, (7/5) eta^2 R_sc, in Gamma units.
inline double recoil_heating_rate(const Params& p) {
  return 1.4 * p.eta * p.eta * total_rate(p) * r_ideal(p);
}

}  // namespace trapscatter::equal_trap
