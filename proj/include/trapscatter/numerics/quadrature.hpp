#pragma once

// Adaptive Gauss-Kronrod quadrature on finite intervals and the whole line,
// fixed-order Gauss-Legendre panel rules, and a panel integrator for
// integrands with a decaying (possibly oscillating) exponential envelope.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <type_traits>
#include <vector>

#include "trapscatter/errors.hpp"

namespace trapscatter::numerics {

template <typename T>
struct QuadResult {
  T value{};
  double abs_error_estimate = 0.0;
  int evaluations = 0;
};

struct Tolerance {
  double abs = 1e-14;
  double rel = 1e-10;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208405107502, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <typename T>
struct Segment {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double error = 0.0;
};

template <typename T>
struct SegmentOrder {
  bool operator()(const Segment<T>& x, const Segment<T>& y) const { return x.error < y.error; }
};

template <typename F>
auto gk21(F& f, double a, double b) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T fc = f(center);
  T kronrod = fc * kKronrodWeights[10];
  T gauss{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    T sum = f(center - dx) + f(center + dx);
    kronrod += sum * kKronrodWeights[j];
    if (j % 2 == 1) gauss += sum * kGaussWeights[j / 2];
  }
  Segment<T> s;
  s.a = a;
  s.b = b;
  s.value = kronrod * half;
  s.error = std::abs((kronrod - gauss) * half);
  return s;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod over the union of consecutive intervals
/// [points[0], points[1]], ..., bisecting the segment with the largest error
/// estimate until the summed estimate meets the tolerance.
template <typename F>
auto integrate_points(F&& f, const std::vector<double>& points, Tolerance tol = {},
                      int max_subdivisions = 4000) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  using Seg = detail::Segment<T>;
  if (points.size() < 2) throw std::invalid_argument("integrate_points: need at least two points");

  std::priority_queue<Seg, std::vector<Seg>, detail::SegmentOrder<T>> queue;
  T total{};
  double total_error = 0.0;
  int evaluations = 0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) continue;
    Seg s = detail::gk21(f, points[i], points[i + 1]);
    evaluations += 21;
    total += s.value;
    total_error += s.error;
    queue.push(s);
  }

  int subdivisions = 0;
  // Segments too narrow to bisect further are retired with their error.
  T retired_value{};
  double retired_error = 0.0;
  while (!queue.empty()) {
    const double target = std::max(tol.abs, tol.rel * std::abs(total));
    if (total_error <= target) break;
    Seg worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(worst.a), std::abs(worst.b))) {
      retired_value += worst.value;
      retired_error += worst.error;
      if (queue.empty()) break;
      continue;
    }
    if (++subdivisions > max_subdivisions) {
      std::ostringstream os;
      os << "adaptive quadrature exceeded " << max_subdivisions << " subdivisions (error estimate "
         << total_error << ", target " << target << ")";
      throw QuadratureError(os.str());
    }
    Seg left = detail::gk21(f, worst.a, mid);
    Seg right = detail::gk21(f, mid, worst.b);
    evaluations += 42;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Recompute the sum from the segments to shed accumulated rounding.
  T sum = retired_value;
  double err = retired_error;
  while (!queue.empty()) {
    sum += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  return QuadResult<T>{sum, err, evaluations};
}

template <typename F>
auto integrate_interval(F&& f, double a, double b, Tolerance tol = {}, int max_subdivisions = 4000) {
  return integrate_points(std::forward<F>(f), std::vector<double>{a, b}, tol, max_subdivisions);
}

/// Integral of f over the real line. `hints` are abscissae near which the
/// integrand has structure (peaks, kinks); the line is split there, the
/// finite pieces are integrated directly and the two tails through the map
/// x = c +- s/(1-s). Without hints the split point is 0.
template <typename F>
auto integrate_line(F&& f, std::vector<double> hints = {}, Tolerance tol = {},
                    int max_subdivisions = 4000) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  if (hints.empty()) hints.push_back(0.0);
  std::sort(hints.begin(), hints.end());
  hints.erase(std::unique(hints.begin(), hints.end()), hints.end());
  const double lo = hints.front();
  const double hi = hints.back();
  // One adaptive pool over a composite variable: [-1, 0) left tail,
  // [0, L] finite part shifted, (L, L+1] right tail.
  const double length = hi - lo;
  auto g = [&](double s) -> T {
    if (s < 0.0) {
      const double u = -s;  // u in (0, 1]
      const double v = 1.0 - u;
      if (v <= 0.0) return T{};
      const double x = lo - u / v;
      return f(x) * (1.0 / (v * v));
    }
    if (s <= length) return f(lo + s);
    const double u = s - length;
    const double v = 1.0 - u;
    if (v <= 0.0) return T{};
    const double x = hi + u / v;
    return f(x) * (1.0 / (v * v));
  };
  std::vector<double> points{-1.0, 0.0};
  for (std::size_t i = 1; i < hints.size(); ++i) points.push_back(hints[i] - lo);
  points.push_back(length + 1.0);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return integrate_points(g, points, tol, max_subdivisions);
}

/// Fixed Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre nodes by Newton iteration on P_n.
inline GaussRule make_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Final derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

template <int N>
const GaussRule& gauss_legendre() {
  static const GaussRule rule = make_gauss_legendre(N);
  return rule;
}

/// Calls visit(x, w) for every node of the rule mapped onto consecutive
/// panels of at most `panel` width covering [a, b].
template <typename Visit>
void for_each_panel_node(double a, double b, double panel, const GaussRule& rule, Visit&& visit) {
  if (!(b > a)) return;
  const auto count = static_cast<long>(std::ceil((b - a) / panel - 1e-12));
  const long panels = std::max(1L, count);
  const double h = (b - a) / static_cast<double>(panels);
  for (long p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      visit(mid + 0.5 * h * rule.nodes[i], 0.5 * h * rule.weights[i]);
    }
  }
}

/// Composite Gauss-Legendre grid over [a, b] with breakpoints.
struct Grid {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline Grid make_panel_grid(std::vector<double> breakpoints, double max_panel, const GaussRule& rule) {
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  Grid grid;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    for_each_panel_node(breakpoints[i], breakpoints[i + 1], max_panel, rule, [&](double x, double w) {
      grid.nodes.push_back(x);
      grid.weights.push_back(w);
    });
  }
  return grid;
}

/// Integral over [0, t_max] of f(tau), where |f(tau)| <~ C exp(-rate tau)
/// and f oscillates with angular frequency up to `freq`. The range is cut
/// into panels no longer than min(period/8, 1/(4 |rate|)), each integrated
/// adaptively. An infinite t_max requires rate > 0; integration then stops
/// once the envelope bound on the remainder drops below tol times the
/// accumulated value.
template <typename F>
auto integrate_decaying_oscillatory(F&& f, double rate, double freq, double t_max, double tol,
                                    long max_panels = 2'000'000) {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  const bool infinite = std::isinf(t_max);
  if (infinite && !(rate > 0.0)) {
    throw std::invalid_argument("integrate_decaying_oscillatory: infinite range needs rate > 0");
  }
  if (!(t_max >= 0.0)) throw std::invalid_argument("integrate_decaying_oscillatory: t_max < 0");
  double panel = 1.0;
  if (freq != 0.0) panel = std::min(panel, 2.0 * std::numbers::pi / std::abs(freq) / 8.0);
  if (rate != 0.0) panel = std::min(panel, 1.0 / (4.0 * std::abs(rate)));

  QuadResult<T> result;
  if (t_max == 0.0) return result;
  long panels = 0;
  double envelope = 0.0;  // running estimate of C in |f| <= C exp(-rate tau)
  double lo = 0.0;
  if (!infinite) {
    const double count = std::ceil(t_max / panel - 1e-12);
    panel = t_max / std::max(1.0, count);
  }
  while (true) {
    double hi = lo + panel;
    if (!infinite && hi > t_max - 1e-12 * panel) hi = t_max;
    if (++panels > max_panels) {
      throw QuadratureError("integrate_decaying_oscillatory: exceeded maximum panel count");
    }
    auto fn = [&](double tau) {
      T v = f(tau);
      if (infinite) envelope = std::max(envelope, std::abs(v) * std::exp(rate * tau));
      return v;
    };
    const double abs_floor = 1e-3 * tol * std::abs(result.value);
    auto part = integrate_interval(fn, lo, hi, Tolerance{std::max(abs_floor, 1e-300), tol}, 200);
    result.value += part.value;
    result.abs_error_estimate += part.abs_error_estimate;
    result.evaluations += part.evaluations;
    lo = hi;
    if (!infinite) {
      if (lo >= t_max) break;
      continue;
    }
    const double remainder = envelope * std::exp(-rate * lo) / rate;
    if (remainder <= tol * std::abs(result.value) || (envelope == 0.0 && lo > 1.0 / rate * 50.0)) {
      result.abs_error_estimate += remainder;
      break;
    }
  }
  return result;
}

}  // namespace trapscatter::numerics
