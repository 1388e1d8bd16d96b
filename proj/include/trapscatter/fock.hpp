#pragma once

// Ground-trap Fock-basis algebra: photon-kick matrix elements, squeezed
// vacuum amplitudes, emission-pattern moments and Hermite functions on the
// dimensionless wavenumber line.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "trapscatter/errors.hpp"
#include "trapscatter/numerics/quadrature.hpp"
#include "trapscatter/numerics/special.hpp"

namespace trapscatter {

using cplx = std::complex<double>;

enum class Parity { All, EvenOnly };

struct FockAmplitudes {
  std::vector<cplx> amps;  ///< indexed by Fock number
  Parity parity = Parity::All;
  /// Estimated norm carried by states beyond the last index.
  double tail_mass = 0.0;

  std::size_t size() const { return amps.size(); }
  double norm() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
  }
};

inline constexpr double kDefaultTruncationTol = 1e-8;

namespace detail {

// i^k for integer k >= 0.
inline cplx i_pow(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Generalized Laguerre L_n^(alpha)(x) returned as mantissa * exp(log_scale),
// so the polynomial may exceed the double range for large n and alpha.
struct ScaledValue {
  double mantissa = 0.0;
  double log_scale = 0.0;
};

inline ScaledValue laguerre_scaled(int n, int alpha, double x) {
  double prev = 1.0;
  if (n == 0) return {1.0, 0.0};
  double cur = 1.0 + alpha - x;
  double log_scale = 0.0;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e150) {
      prev *= 1e-150;
      cur *= 1e-150;
      log_scale += 150.0 * std::numbers::ln10;
    }
  }
  return {cur, log_scale};
}

}  // namespace detail

/// <n_out| exp(i eta (a + a^dagger)) |n_in>.
inline cplx displacement_element(int n_out, int n_in, double eta) {
  if (n_out < 0 || n_in < 0) throw std::invalid_argument("displacement_element: negative Fock index");
  const int lo = std::min(n_out, n_in);
  const int hi = std::max(n_out, n_in);
  const int d = hi - lo;
  if (eta == 0.0) return d == 0 ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
  const double x = eta * eta;
  const auto lag = detail::laguerre_scaled(lo, d, x);
  if (lag.mantissa == 0.0) return {0.0, 0.0};
  const double log_mag = d * std::log(std::abs(eta)) +
                         0.5 * (numerics::log_factorial(lo) - numerics::log_factorial(hi)) - 0.5 * x +
                         lag.log_scale + std::log(std::abs(lag.mantissa));
  const double sign = (lag.mantissa < 0.0 ? -1.0 : 1.0) * (eta < 0.0 && (d & 1) ? -1.0 : 1.0);
  return detail::i_pow(d) * (sign * std::exp(log_mag));
}

/// U|0> for U = exp(i (phase/2)(a^dagger^2 + a^2)), the inverted-oscillator
/// evolution of the vacuum over a time phase/omega. Entries 0..n_max.
/// Throws TruncationError when the norm missing beyond n_max exceeds tol.
inline FockAmplitudes squeeze_vacuum(double phase, int n_max, double tol = kDefaultTruncationTol) {
  if (!(phase >= 0.0)) throw std::invalid_argument("squeeze_vacuum: phase must be nonnegative");
  if (n_max < 0) throw std::invalid_argument("squeeze_vacuum: n_max must be nonnegative");
  FockAmplitudes out;
  out.parity = Parity::EvenOnly;
  out.amps.assign(static_cast<std::size_t>(n_max) + 1, cplx{});
  const double t = std::tanh(phase);
  // 1/sqrt(cosh) written to stay finite for large phase.
  cplx a = std::sqrt(2.0 * std::exp(-phase) / (1.0 + std::exp(-2.0 * phase)));
  const cplx step = cplx{0.0, t};
  double sum = 0.0;
  for (int n = 0; 2 * n <= n_max; ++n) {
    out.amps[static_cast<std::size_t>(2 * n)] = a;
    sum += std::norm(a);
    a *= step * (std::sqrt((2.0 * n + 1.0) * (2.0 * n + 2.0)) / (2.0 * (n + 1.0)));
  }
  out.tail_mass = std::max(0.0, 1.0 - sum);
  if (out.tail_mass > tol) {
    throw TruncationError("squeeze_vacuum: norm beyond n_max=" + std::to_string(n_max) + " is " +
                          std::to_string(out.tail_mass));
  }
  return out;
}

/// As squeeze_vacuum, doubling n_max from 16 until the tail is below tol.
inline FockAmplitudes squeeze_vacuum_adaptive(double phase, double tol = kDefaultTruncationTol,
                                              int n_limit = 1 << 22) {
  for (int n_max = 16;; n_max *= 2) {
    try {
      return squeeze_vacuum(phase, n_max, tol);
    } catch (const TruncationError&) {
      if (n_max >= n_limit) throw;
    }
  }
}

/// Integral over the dipole emission pattern (3/8)(1+u^2) of u^p, u = cos(theta).
inline double emission_moment(int p) {
  if (p < 0 || (p & 1)) {
    throw std::invalid_argument("emission_moment: p must be a nonnegative even integer, got " +
                                std::to_string(p));
  }
  return 0.375 * (2.0 / (p + 1.0) + 2.0 / (p + 3.0));
}

/// Average of f(u) over the emission pattern, u = cos(theta) in [-1, 1].
template <typename F>
auto emission_average(F&& f) {
  const auto& rule = numerics::gauss_legendre<64>();
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  T sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    sum += f(u) * (0.375 * (1.0 + u * u) * rule.weights[i]);
  }
  return sum;
}

/// Hermite functions psi_0..psi_{n_max} at k, orthonormal on the real line.
inline std::vector<double> hermite_functions(int n_max, double k) {
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  // Run the recurrence on rescaled values; the Gaussian factor and any
  // rescaling are folded back per index.
  const double base_log = -0.5 * k * k - 0.25 * std::log(std::numbers::pi);
  double log_scale = 0.0;
  double prev = 0.0;
  double cur = 1.0;
  out[0] = std::exp(base_log);
  for (int n = 0; n < n_max; ++n) {
    const double next = std::sqrt(2.0 / (n + 1.0)) * k * cur - std::sqrt(n / (n + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e150) {
      prev *= 1e-150;
      cur *= 1e-150;
      log_scale += 150.0 * std::numbers::ln10;
    }
    const double lg = base_log + log_scale;
    out[static_cast<std::size_t>(n + 1)] = lg < -745.0 ? 0.0 : cur * std::exp(lg);
  }
  return out;
}

/// Real Hermite function psi_n(k).
inline double fock_momentum_wavefunction(int n, double k_tilde) {
  if (n < 0) throw std::invalid_argument("fock_momentum_wavefunction: negative n");
  return hermite_functions(n, k_tilde).back();
}

}  // namespace trapscatter
