#pragma once

// Least-squares line fits used for scaling exponents, plus a bracketing
// maximizer for one-dimensional scans.

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace trapscatter::numerics {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit_line: size mismatch");
  const std::size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("fit_line: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_line: abscissae are degenerate");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ys[i] - fit.intercept - fit.slope * xs[i];
      ssr += r * r;
    }
    fit.slope_stderr = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

/// Slope of log(y) against log(x).
inline LineFit fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 4) throw std::invalid_argument("fit_loglog_slope: need at least four points");
  std::vector<double> lx, ly;
  lx.reserve(xs.size());
  ly.reserve(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::invalid_argument("fit_loglog_slope: values must be positive");
    }
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys.at(i)));
  }
  return fit_line(lx, ly);
}

/// Slope of log(y) against x: the exponent of y ~ exp(slope x).
inline LineFit fit_semilog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2) throw std::invalid_argument("fit_semilog_slope: need at least two points");
  std::vector<double> ly;
  ly.reserve(ys.size());
  for (double y : ys) {
    if (!(y > 0.0)) throw std::invalid_argument("fit_semilog_slope: values must be positive");
    ly.push_back(std::log(y));
  }
  return fit_line(xs, ly);
}

/// Maximizer of f on [a, b]: coarse scan for the best bracket, then
/// golden-section refinement to `tol` in the argument.
inline double maximize_scalar(const std::function<double(double)>& f, double a, double b, double tol,
                              int scan_points = 41) {
  if (!(b > a)) throw std::invalid_argument("maximize_scalar: empty interval");
  const int m = std::max(3, scan_points);
  const double h = (b - a) / (m - 1);
  int best = 0;
  double best_value = f(a);
  for (int i = 1; i < m; ++i) {
    const double v = f(a + h * i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = a + h * std::max(0, best - 1);
  double hi = a + h * std::min(m - 1, best + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace trapscatter::numerics
