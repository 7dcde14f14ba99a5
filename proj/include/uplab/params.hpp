#pragma once

// Parameter selection for the mass-splitting proofs: the L^2 choice, the
// L^p choice and the Cowling-Price choice, each with its certified constant.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "uplab/errors.hpp"
#include "uplab/specialfn.hpp"

namespace uplab {

inline constexpr double exponent_tolerance = 1e-12;

/// Exponent bundle attached to a (d, p) instance.
struct WigdersonParams {
  int d = 1;
  double p = 2.0;
  double epsilon = 1.0;
  double a = 1.0;
  double r = 2.0;
  double s = 2.0;
  double log_c_d = 0.0;
  double log_bound = 0.0;         // certified constant of the uncertainty product
  double log_single_bound = 0.0;  // constant of the one-function inequality
  double kappa = 0.0;             // power of ||f||_a / ||f||_p in that inequality
  double c_d = 0.0;               // exp(log_c_d), computed directly where representable
  double bound = 0.0;             // exp(log_bound), computed directly where representable

  /// Power of the norm quotient in the threshold T.
  double threshold_exponent() const { return (d + epsilon) / d; }
};

namespace detail {

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline void require_dimension(int d, const char* where) {
  if (d < 1) throw domain_error(std::string(where) + ": d must be >= 1");
}

// ln c_d from (v_d c_d^d)^{1/s} = 1/2.
inline double log_half_mass_radius(int d, double s) {
  return (-s * std::numbers::ln2 - dimension_constants(d).log_ball_volume) / d;
}

// Smallest v_d for which the recurrence still carries full precision.
inline constexpr double linear_floor = 1e-280;

}  // namespace detail

inline WigdersonParams l2_params(int d) {
  detail::require_dimension(d, "l2_params");
  const auto dc = dimension_constants(d);
  WigdersonParams w;
  w.d = d;
  w.p = 2.0;
  w.epsilon = 1.0;
  w.a = 2.0 * (d + 1.0) / (d + 3.0);
  w.r = (d + 3.0) / (d + 1.0);
  w.s = (d + 3.0) / 2.0;
  w.log_c_d = detail::log_half_mass_radius(d, w.s);
  const double log_ratio = w.log_c_d - dc.log_sphere_area;
  w.log_single_bound = std::log(0.25) + (2.0 / (d + 1.0)) * log_ratio;
  w.log_bound = std::log(1.0 / 16.0) + (4.0 / (d + 1.0)) * log_ratio;
  w.kappa = 2.0 + 2.0 / d;

  const double v = ball_volume_recurrence(d);
  if (v > detail::linear_floor) {
    w.c_d = std::pow(std::pow(0.5, w.s) / v, 1.0 / d);
    w.bound = std::pow(w.c_d / (d * v), 4.0 / (d + 1.0)) / 16.0;
  } else {
    w.c_d = std::exp(w.log_c_d);
    w.bound = std::exp(w.log_bound);
  }
  return w;
}

/// True iff p < 2d/(d-1) (always for d = 1).
inline bool lp_in_range(int d, double p) {
  return p > 1.0 && (d == 1 || p < 2.0 * d / (d - 1.0));
}

inline double lp_epsilon(int d, double p) {
  detail::require_dimension(d, "lp_epsilon");
  if (!(p > 1.0) || !std::isfinite(p)) throw domain_error("lp_epsilon: p must be finite and > 1");
  if (!lp_in_range(d, p)) {
    throw infeasible_error("lp_epsilon: no admissible epsilon, p = " + detail::fmt(p) +
                           " >= 2d/(d-1) = " + detail::fmt(2.0 * d / (d - 1.0)));
  }
  if (p <= 2.0) return p / (p - 1.0);
  const double lo = std::max(0.0, (d + p - d * p) / (p - 1.0));
  const double hi = (2.0 * d - p * (d - 1.0)) / (p - 2.0);
  if (!(hi > lo)) throw infeasible_error("lp_epsilon: empty epsilon window");
  return 0.5 * (lo + hi);
}

inline WigdersonParams lp_params(int d, double p) {
  const double eps = lp_epsilon(d, p);
  const auto dc = dimension_constants(d);
  WigdersonParams w;
  w.d = d;
  w.p = p;
  w.epsilon = eps;
  w.a = p * (d + eps) / (d + eps + p);
  w.r = p / w.a;
  w.s = (d + eps + p) / p;
  w.log_c_d = detail::log_half_mass_radius(d, w.s);
  const double log_core =
      std::log(eps) + eps * w.log_c_d - std::numbers::ln2 - dc.log_sphere_area;
  w.log_single_bound = std::log(0.5) + (w.r - 1.0) * log_core;
  w.log_bound = std::log(0.25) + 2.0 * (w.r - 1.0) * log_core;
  w.kappa = p * (1.0 + eps / d);
  w.c_d = std::exp(w.log_c_d);
  w.bound = std::exp(w.log_bound);
  return w;
}

/// Hypothesis of the (a, p) primary uncertainty principle: 1 < a < p, 1/a + 1/p >= 1.
inline bool primary_up_admissible(double a, double p) {
  if (!std::isfinite(a) || !std::isfinite(p)) return false;
  return a > 1.0 && a < p && 1.0 / a + 1.0 / p >= 1.0 - exponent_tolerance;
}

enum class LpRegime { subcritical, critical, supercritical };

inline const char* to_string(LpRegime regime) {
  switch (regime) {
    case LpRegime::subcritical: return "subcritical";
    case LpRegime::critical: return "critical";
    case LpRegime::supercritical: return "supercritical";
  }
  return "?";
}

inline LpRegime lp_regime(int d, double p) {
  detail::require_dimension(d, "lp_regime");
  if (!(p > 1.0)) throw domain_error("lp_regime: p must be > 1");
  if (d == 1) return LpRegime::subcritical;
  const double critical = 2.0 * d / (d - 1.0);
  if (std::abs(p - critical) <= exponent_tolerance * critical) return LpRegime::critical;
  return p < critical ? LpRegime::subcritical : LpRegime::supercritical;
}

// ---- Cowling-Price ------------------------------------------------------

/// Exponents (d, p, q, theta, phi) of a weighted uncertainty inequality
/// || |x|^theta f ||_p || |xi|^phi fhat ||_q >= C ||f||_2^2.
struct CpExponents {
  int d = 1;
  double p = 2.0;
  double q = 2.0;
  double theta = 1.0;
  double phi = 1.0;
};

/// 1/q + phi/d - 1/p - theta/d.
inline double homogeneity_defect(const CpExponents& e) {
  return 1.0 / e.q + e.phi / e.d - 1.0 / e.p - e.theta / e.d;
}

/// theta/d - (1/2 - 1/p). Under homogeneity this equals the q-side gap.
inline double cp_gap(const CpExponents& e) { return e.theta / e.d - (0.5 - 1.0 / e.p); }

inline bool cp_feasible(const CpExponents& e) {
  return e.theta / e.d - (0.5 - 1.0 / e.p) > exponent_tolerance &&
         e.phi / e.d - (0.5 - 1.0 / e.q) > exponent_tolerance &&
         std::abs(homogeneity_defect(e)) <= exponent_tolerance;
}

/// Open interval from which delta is drawn.
struct DeltaWindow {
  double lower = 0.0;  // max(0, closed-form lower end)
  double upper = 0.0;
};

inline DeltaWindow cp_delta_window(const CpExponents& e) {
  const double d = e.d;
  const double base = 1.0 + d / (e.phi * e.q);
  const double lower = base - (1.0 - 1.0 / e.p) * base * d / e.theta;
  double upper = std::min(base, 1.0 + d / (e.theta * e.p));
  if (e.p >= 2.0) upper = std::min(upper, base - (0.5 - 1.0 / e.p) * base * d / e.theta);
  return {std::max(0.0, lower), upper};
}

inline double cp_delta(const CpExponents& e) {
  const auto w = cp_delta_window(e);
  if (!(w.upper > w.lower)) {
    throw infeasible_error("cp_delta: empty delta window (" + detail::fmt(w.lower) + ", " +
                           detail::fmt(w.upper) + ")");
  }
  return 0.5 * (w.lower + w.upper);
}

struct CowlingPriceParams {
  CpExponents exponents;
  double delta = 0.0;
  double epsilon = 0.0;
  double epsilon_tilde = 0.0;
  double a = 0.0;
  double a_tilde = 0.0;
  double r = 0.0;
  double s = 0.0;
  double b = 0.0;
  double r1 = 0.0;
  double s1 = 0.0;
  double b_tilde = 0.0;
  double r1_tilde = 0.0;
  double s1_tilde = 0.0;
  double log_c_d = 0.0;
  double log_bound_space = 0.0;    // constant of || |x|^theta f ||_p / ||f||_2
  double log_bound_fourier = 0.0;  // constant of || |xi|^phi fhat ||_q / ||fhat||_2
  double log_bound = 0.0;
};

inline CowlingPriceParams cp_params(const CpExponents& e) {
  detail::require_dimension(e.d, "cp_params");
  if (!cp_feasible(e)) throw infeasible_error("cp_params: exponents are not feasible");
  const double d = e.d;
  CowlingPriceParams c;
  c.exponents = e;
  c.delta = cp_delta(e);
  const double phq = e.phi * e.q;
  const double thp = e.theta * e.p;
  c.epsilon = d * c.delta * phq / (d + phq - c.delta * phq);
  c.epsilon_tilde = d * c.delta * thp / (d + thp - c.delta * thp);
  if (!(c.epsilon > 0.0) || !(c.epsilon_tilde > 0.0)) {
    throw infeasible_error("cp_params: epsilon must be positive");
  }
  c.a = e.p / (1.0 + e.p * e.theta / (d + c.epsilon));
  c.a_tilde = e.q / (1.0 + e.q * e.phi / (d + c.epsilon_tilde));
  if (!(c.a > 1.0 && c.a < 2.0)) {
    throw infeasible_error("cp_params: auxiliary exponent a = " + detail::fmt(c.a) +
                           " outside (1, 2)");
  }
  c.r = 2.0 / c.a;
  c.s = c.r / (c.r - 1.0);
  c.r1 = e.p / c.a;
  c.s1 = c.r1 / (c.r1 - 1.0);
  c.b = thp / c.r1;
  c.r1_tilde = e.q / c.a_tilde;
  c.s1_tilde = c.r1_tilde / (c.r1_tilde - 1.0);
  c.b_tilde = phq / c.r1_tilde;
  c.log_c_d = detail::log_half_mass_radius(e.d, c.s);

  const double log_omega = dimension_constants(e.d).log_sphere_area;
  auto side = [&](double eps, double s1) {
    return (std::log(eps) + eps * c.log_c_d - s1 * std::numbers::ln2 - log_omega) / (c.a * s1);
  };
  c.log_bound_space = side(c.epsilon, c.s1);
  c.log_bound_fourier = side(c.epsilon_tilde, c.s1_tilde);
  c.log_bound = c.log_bound_space + c.log_bound_fourier;
  return c;
}

/// T = c_d (norm_a / norm_p)^{(d + eps)/d}.
inline double compute_threshold(double norm_a, double norm_p, const WigdersonParams& w) {
  if (!(norm_a > 0.0) || !(norm_p > 0.0) || !std::isfinite(norm_a) || !std::isfinite(norm_p)) {
    throw domain_error("compute_threshold: norms must be positive and finite");
  }
  return w.c_d * std::pow(norm_a / norm_p, w.threshold_exponent());
}

}  // namespace uplab
