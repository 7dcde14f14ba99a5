#pragma once

// Log-domain Gamma machinery and the unit sphere / unit ball constants.

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "uplab/errors.hpp"

namespace uplab {

/// ln Gamma(x) for x > 0. Never overflows for x up to 1e6 and well beyond.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw domain_error("log_gamma: argument must be a positive finite real, got " +
                       std::to_string(x));
  }
  return boost::math::lgamma(x);
}

/// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw domain_error("gamma_p: need a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(a, x);
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw domain_error("gamma_q: need a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(a, x);
}

/// Natural logs of the area of S^{d-1} and of the volume of the unit ball in R^d.
struct DimensionConstants {
  int d = 1;
  double log_sphere_area = 0.0;  // ln omega_{d-1}
  double log_ball_volume = 0.0;  // ln v_d

  double sphere_area() const { return std::exp(log_sphere_area); }
  double ball_volume() const { return std::exp(log_ball_volume); }
};

inline DimensionConstants dimension_constants(int d) {
  if (d < 1) throw domain_error("dimension_constants: d must be >= 1");
  const double half_d = 0.5 * d;
  const double log_pi = std::log(std::numbers::pi);
  return DimensionConstants{
      .d = d,
      .log_sphere_area = std::numbers::ln2 + half_d * log_pi - log_gamma(half_d),
      .log_ball_volume = half_d * log_pi - log_gamma(half_d + 1.0),
  };
}

/// v_d through the two-step recurrence v_d = v_{d-2} * 2pi/d, v_0 = 1, v_1 = 2.
/// Exact in floating point for d = 1; underflows to 0 once v_d leaves the
/// double range (d in the high hundreds). Used only for linear reporting.
inline double ball_volume_recurrence(int d) {
  if (d < 0) throw domain_error("ball_volume_recurrence: d must be >= 0");
  double v = (d % 2 == 0) ? 1.0 : 2.0;
  for (int k = (d % 2 == 0) ? 2 : 3; k <= d; k += 2) v *= 2.0 * std::numbers::pi / k;
  return v;
}

/// Gamma(x) / [sqrt(2 pi / x) (x/e)^x], evaluated in the log domain.
inline double stirling_ratio(double x) {
  if (!(x >= 1.0) || !std::isfinite(x)) throw domain_error("stirling_ratio: need x >= 1");
  const double log_stirling =
      0.5 * std::log(2.0 * std::numbers::pi / x) + x * (std::log(x) - 1.0);
  return std::exp(log_gamma(x) - log_stirling);
}

}  // namespace uplab
