#pragma once

// Gamma-family special functions. Thin wrappers over Boost.Math that fix
// the argument convention and turn Boost's error policy into the domain
// errors used throughout the library.

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

namespace trapscatter::numerics {

/// Upper incomplete gamma, integral from x to infinity of s^(a-1) e^-s ds.
/// Shape first, lower limit second.
inline double upper_incomplete_gamma(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::domain_error("upper_incomplete_gamma: shape must be positive, got " + std::to_string(a));
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("upper_incomplete_gamma: lower limit must be nonnegative, got " +
                            std::to_string(x));
  }
  if (std::isinf(x)) return 0.0;
  if (x == 0.0) return boost::math::tgamma(a);
  return boost::math::tgamma(a, x);
}

/// Natural log of |Gamma(a)| without touching the global signgam.
inline double log_gamma(double a) { return boost::math::lgamma(a); }

/// log(n!) for n >= 0.
inline double log_factorial(int n) { return boost::math::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace trapscatter::numerics
