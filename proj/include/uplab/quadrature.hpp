#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature on finite and
// semi-infinite intervals.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace uplab::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int intervals = 0;
  bool converged = false;
};

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5, 7).
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
};

template <class F>
Segment gk15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kronrod_weights[7] * fc;
  double gauss = gauss_weights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kronrod_nodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kronrod_weights[i] * pair;
    if (i % 2 == 1) gauss += gauss_weights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Integral of f over [a, b] (finite). Bisects the worst segment until the
/// summed error estimate meets max(abs_tol, rel_tol * |value|).
template <class F>
Result integrate(const F& f, double a, double b, const Options& opt = {}) {
  if (a == b) return {0.0, 0.0, 0, true};
  const double sign = (a < b) ? 1.0 : -1.0;
  if (a > b) std::swap(a, b);

  std::vector<detail::Segment> segments{detail::gk15(f, a, b)};
  auto by_error = [](const detail::Segment& x, const detail::Segment& y) {
    return x.error < y.error;
  };
  double total = segments.front().value;
  double error = segments.front().error;
  while (true) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (error <= target) break;
    if (static_cast<int>(segments.size()) >= opt.max_intervals) {
      return {sign * total, error, static_cast<int>(segments.size()), false};
    }
    std::pop_heap(segments.begin(), segments.end(), by_error);
    const detail::Segment worst = segments.back();
    segments.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval exhausted at machine resolution.
      return {sign * total, error, static_cast<int>(segments.size()) + 1, false};
    }
    const auto left = detail::gk15(f, worst.a, mid);
    const auto right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    segments.push_back(left);
    std::push_heap(segments.begin(), segments.end(), by_error);
    segments.push_back(right);
    std::push_heap(segments.begin(), segments.end(), by_error);
  }
  // Re-sum to shed the drift of the running total.
  double value = 0.0;
  double err = 0.0;
  for (const auto& s : segments) {
    value += s.value;
    err += s.error;
  }
  return {sign * value, err, static_cast<int>(segments.size()), true};
}

/// Integral of f over [a, inf) through x = a + t / (1 - t).
template <class F>
Result integrate_to_infinity(const F& f, double a, const Options& opt = {}) {
  auto mapped = [&](double t) {
    const double one_minus = 1.0 - t;
    const double x = a + t / one_minus;
    const double fx = f(x);
    if (fx == 0.0) return 0.0;
    return fx / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, opt);
}

/// Integral over [breakpoints.front(), breakpoints.back()] split at every
/// breakpoint; when `tail` is set the last segment extends to infinity.
template <class F>
Result integrate_pieces(const F& f, std::span<const double> breakpoints, bool tail,
                        const Options& opt = {}) {
  Result out{0.0, 0.0, 0, true};
  auto accumulate = [&](const Result& r) {
    out.value += r.value;
    out.abs_error += r.abs_error;
    out.intervals += r.intervals;
    out.converged = out.converged && r.converged;
  };
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] > breakpoints[i]) {
      accumulate(integrate(f, breakpoints[i], breakpoints[i + 1], opt));
    }
  }
  if (tail && !breakpoints.empty()) accumulate(integrate_to_infinity(f, breakpoints.back(), opt));
  return out;
}

}  // namespace uplab::quad
