#pragma once

// Integrals of radial functions on R^d reduced to one-dimensional integrals
// in r, with closed forms for Gaussian mixtures and power-log profiles.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "uplab/errors.hpp"
#include "uplab/quadrature.hpp"
#include "uplab/specialfn.hpp"

namespace uplab {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// coefficient * exp(-pi * rate * r^2)
struct GaussianTerm {
  double coefficient = 1.0;
  double rate = 1.0;
};

/// coefficient * r^exponent_r * ln^log_exponent(1/r)
struct PowerLogTerm {
  double exponent_r = 0.0;
  double log_exponent = 0.0;
  double coefficient = 1.0;
};

class RadialProfile {
 public:
  enum class Kind { gaussian_mixture, power_log };

  static RadialProfile gaussian_mixture(std::vector<GaussianTerm> terms) {
    for (const auto& t : terms) {
      if (!(t.rate > 0.0) || !std::isfinite(t.rate) || !std::isfinite(t.coefficient)) {
        throw domain_error("RadialProfile: Gaussian rates must be positive and finite");
      }
    }
    RadialProfile out;
    out.kind_ = Kind::gaussian_mixture;
    out.terms_ = std::move(terms);
    return out;
  }

  static RadialProfile gaussian(double rate = 1.0, double coefficient = 1.0) {
    return gaussian_mixture({{coefficient, rate}});
  }

  /// Supported on (0, support_hi]. Without a log factor the default support
  /// is all of (0, inf); with one it is (0, 1/2] so that ln(1/r) stays positive.
  static RadialProfile power_log(double exponent_r, double log_exponent = 0.0,
                                 std::optional<double> support_hi = std::nullopt,
                                 double coefficient = 1.0) {
    const double hi = support_hi.value_or(log_exponent == 0.0 ? infinity : 0.5);
    if (!(hi > 0.0)) throw domain_error("RadialProfile: support must be nonempty");
    if (log_exponent != 0.0 && !(hi < 1.0)) {
      throw domain_error("RadialProfile: a log factor needs support inside (0, 1)");
    }
    RadialProfile out;
    out.kind_ = Kind::power_log;
    out.power_ = {exponent_r, log_exponent, coefficient};
    out.support_hi_ = hi;
    return out;
  }

  Kind kind() const { return kind_; }
  bool is_gaussian() const { return kind_ == Kind::gaussian_mixture; }
  const std::vector<GaussianTerm>& terms() const { return terms_; }
  const PowerLogTerm& power_term() const { return power_; }
  double support_hi() const { return support_hi_; }

  bool nonnegative_coefficients() const {
    if (!is_gaussian()) return power_.coefficient >= 0.0;
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const GaussianTerm& t) { return t.coefficient >= 0.0; });
  }

  double operator()(double r) const {
    if (is_gaussian()) {
      double sum = 0.0;
      for (const auto& t : terms_) sum += t.coefficient * std::exp(-std::numbers::pi * t.rate * r * r);
      return sum;
    }
    if (!(r > 0.0) || r > support_hi_) return 0.0;
    double v = power_.coefficient * std::pow(r, power_.exponent_r);
    if (power_.log_exponent != 0.0) v *= std::pow(std::log(1.0 / r), power_.log_exponent);
    return v;
  }

  /// ln |F(r)|, stable for large r.
  double log_abs(double r) const {
    if (is_gaussian() && nonnegative_coefficients()) {
      double peak = -infinity;
      std::vector<double> logs;
      logs.reserve(terms_.size());
      for (const auto& t : terms_) {
        if (t.coefficient == 0.0) continue;
        logs.push_back(std::log(t.coefficient) - std::numbers::pi * t.rate * r * r);
        peak = std::max(peak, logs.back());
      }
      if (logs.empty()) return -infinity;
      double sum = 0.0;
      for (double l : logs) sum += std::exp(l - peak);
      return peak + std::log(sum);
    }
    return std::log(std::abs((*this)(r)));
  }

 private:
  RadialProfile() = default;

  Kind kind_ = Kind::gaussian_mixture;
  std::vector<GaussianTerm> terms_;
  PowerLogTerm power_;
  double support_hi_ = infinity;
};

enum class RadialMethod { automatic, quadrature };

namespace detail {

inline constexpr double radial_rel_tol = 1e-10;

// omega_{d-1} * integral_lo^hi c e^{-pi rate r^2} r^{d-1} dr
inline double gaussian_shell(const GaussianTerm& t, int d, double lo, double hi) {
  const double half_d = 0.5 * d;
  const double x_lo = std::numbers::pi * t.rate * lo * lo;
  const double x_hi = std::isinf(hi) ? infinity : std::numbers::pi * t.rate * hi * hi;
  const double fraction = (x_lo > half_d) ? gamma_q(half_d, x_lo) - gamma_q(half_d, x_hi)
                                          : gamma_p(half_d, x_hi) - gamma_p(half_d, x_lo);
  return t.coefficient * std::pow(t.rate, -half_d) * fraction;
}

inline void check_converged(const quad::Result& r, const char* where) {
  if (!r.converged || !std::isfinite(r.value)) {
    throw divergence_error(std::string(where) + ": quadrature did not converge");
  }
}

// integral_lo^hi r^{m-1} ln^beta(1/r) dr with m = alpha + d.
inline double power_log_radial(double m, double beta, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  if (beta == 0.0) {
    if (m == 0.0) {
      if (lo == 0.0 || std::isinf(hi)) throw divergence_error("radial_integral: logarithmic divergence");
      return std::log(hi / lo);
    }
    if (m < 0.0 && lo == 0.0) throw divergence_error("radial_integral: non-integrable singularity at 0");
    if (m > 0.0 && std::isinf(hi)) throw divergence_error("radial_integral: diverges at infinity");
    const double top = std::isinf(hi) ? 0.0 : std::pow(hi, m);
    const double bottom = (lo == 0.0) ? 0.0 : std::pow(lo, m);
    return (top - bottom) / m;
  }
  // u = ln(1/r): integral_{u_hi}^{u_lo} e^{-m u} u^beta du
  const double u_hi = std::log(1.0 / hi);
  const double u_lo = (lo == 0.0) ? infinity : std::log(1.0 / lo);
  if (m == 0.0) {
    if (beta == -1.0) {
      if (std::isinf(u_lo)) throw divergence_error("radial_integral: doubly logarithmic divergence");
      return std::log(u_lo) - std::log(u_hi);
    }
    const double k = beta + 1.0;
    if (std::isinf(u_lo)) {
      if (k >= 0.0) throw divergence_error("radial_integral: logarithmic divergence at 0");
      return -std::pow(u_hi, k) / k;
    }
    return (std::pow(u_lo, k) - std::pow(u_hi, k)) / k;
  }
  if (m < 0.0 && std::isinf(u_lo)) throw divergence_error("radial_integral: non-integrable singularity at 0");
  auto integrand = [m, beta](double u) { return std::exp(-m * u) * std::pow(u, beta); };
  quad::Options opt{.rel_tol = radial_rel_tol};
  const auto res = std::isinf(u_lo) ? quad::integrate_to_infinity(integrand, u_hi, opt)
                                    : quad::integrate(integrand, u_hi, u_lo, opt);
  check_converged(res, "radial_integral");
  return res.value;
}

}  // namespace detail

/// omega_{d-1} * integral_lo^hi F(r) r^{d-1} dr.
inline double radial_integral(const RadialProfile& f, int d, double lo, double hi,
                              RadialMethod method = RadialMethod::automatic) {
  if (d < 1) throw domain_error("radial_integral: d must be >= 1");
  if (!(lo >= 0.0) || !(hi >= lo)) throw domain_error("radial_integral: need 0 <= lo <= hi");
  const auto dc = dimension_constants(d);

  if (f.is_gaussian()) {
    if (method == RadialMethod::automatic) {
      double sum = 0.0;
      for (const auto& t : f.terms()) sum += detail::gaussian_shell(t, d, lo, hi);
      return sum;
    }
    auto integrand = [&](double r) {
      const double v = f(r);
      if (v == 0.0) return 0.0;
      return v * std::pow(r, d - 1);
    };
    quad::Options opt{.rel_tol = detail::radial_rel_tol};
    const auto res = std::isinf(hi) ? quad::integrate_to_infinity(integrand, lo, opt)
                                    : quad::integrate(integrand, lo, hi, opt);
    detail::check_converged(res, "radial_integral");
    return dc.sphere_area() * res.value;
  }

  const auto& term = f.power_term();
  const double top = std::min(hi, f.support_hi());
  return dc.sphere_area() * term.coefficient *
         detail::power_log_radial(term.exponent_r + d, term.log_exponent, lo, top);
}

namespace detail {

// ln of omega_{d-1} * integral_0^inf r^{m} |F(r)|^p r^{d-1} dr via quadrature,
// rescaled by the peak of the integrand so large d cannot overflow.
inline double log_gaussian_moment_quadrature(const RadialProfile& f, int d, double p, double m) {
  const double power = m + d - 1.0;
  std::vector<double> peaks;
  std::vector<double> widths;
  for (const auto& t : f.terms()) {
    if (t.coefficient == 0.0) continue;
    const double k = std::numbers::pi * p * t.rate;  // integrand ~ r^power e^{-k r^2}
    peaks.push_back(power > 0.0 ? std::sqrt(power / (2.0 * k)) : 0.0);
    widths.push_back(1.0 / std::sqrt(2.0 * k));
  }
  if (peaks.empty()) return -infinity;

  auto log_integrand = [&](double r) {
    if (r <= 0.0) return power == 0.0 ? p * f.log_abs(0.0) : -infinity;
    return power * std::log(r) + p * f.log_abs(r);
  };
  double scale = -infinity;
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    scale = std::max(scale, log_integrand(std::max(peaks[i], 1e-300)));
    scale = std::max(scale, log_integrand(peaks[i] + widths[i]));
  }
  if (!std::isfinite(scale)) return -infinity;

  std::vector<double> cuts{0.0};
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    for (double k : {-8.0, -2.0, 0.0, 2.0, 8.0}) {
      const double x = peaks[i] + k * widths[i];
      if (x > 0.0) cuts.push_back(x);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto integrand = [&](double r) {
    const double l = log_integrand(r);
    return std::isfinite(l) ? std::exp(l - scale) : 0.0;
  };
  const auto res =
      quad::integrate_pieces(integrand, cuts, true, {.rel_tol = radial_rel_tol, .abs_tol = 0.0});
  check_converged(res, "radial_weighted_norm");
  if (!(res.value > 0.0)) return -infinity;
  return dimension_constants(d).log_sphere_area + scale + std::log(res.value);
}

// ln of omega_{d-1} * integral r^{m+d-1} e^{-pi lambda r^2} dr.
inline double log_gaussian_moment(int d, double m, double lambda) {
  const double k = 0.5 * (m + d);
  return dimension_constants(d).log_sphere_area - std::numbers::ln2 + log_gamma(k) -
         k * std::log(std::numbers::pi * lambda);
}

}  // namespace detail

/// ln of omega_{d-1} integral_0^inf r^{p w} |F(r)|^p r^{d-1} dr.
inline double log_radial_power_moment(const RadialProfile& f, int d, double p,
                                      double weight_exponent,
                                      RadialMethod method = RadialMethod::automatic) {
  if (d < 1) throw domain_error("radial_weighted_norm: d must be >= 1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw domain_error("radial_weighted_norm: need p >= 1");
  if (!(weight_exponent >= 0.0)) throw domain_error("radial_weighted_norm: weight must be >= 0");
  const double m = p * weight_exponent;

  if (!f.is_gaussian()) {
    const auto& t = f.power_term();
    const auto powered = RadialProfile::power_log(p * t.exponent_r + m, p * t.log_exponent,
                                                  f.support_hi(), std::pow(std::abs(t.coefficient), p));
    const double v = radial_integral(powered, d, 0.0, f.support_hi());
    return std::log(v);
  }

  std::vector<GaussianTerm> live;
  for (const auto& t : f.terms()) {
    if (t.coefficient != 0.0) live.push_back(t);
  }
  if (live.empty()) return -infinity;

  if (method == RadialMethod::automatic) {
    if (live.size() == 1) {
      const auto& t = live.front();
      return p * std::log(std::abs(t.coefficient)) + detail::log_gaussian_moment(d, m, p * t.rate);
    }
    if (p == 2.0) {
      double sum = 0.0;
      const double base = detail::log_gaussian_moment(d, m, live.front().rate * 2.0);
      for (const auto& s : live) {
        for (const auto& t : live) {
          sum += s.coefficient * t.coefficient *
                 std::exp(detail::log_gaussian_moment(d, m, s.rate + t.rate) - base);
        }
      }
      if (!(sum > 0.0)) return -infinity;
      return base + std::log(sum);
    }
  }
  return detail::log_gaussian_moment_quadrature(RadialProfile::gaussian_mixture(live), d, p, m);
}

/// (omega_{d-1} integral_0^inf r^{p w} F(r)^p r^{d-1} dr)^{1/p}.
inline double radial_weighted_norm(const RadialProfile& f, int d, double p, double weight_exponent,
                                   RadialMethod method = RadialMethod::automatic) {
  const double l = log_radial_power_moment(f, d, p, weight_exponent, method);
  return std::isinf(l) ? 0.0 : std::exp(l / p);
}

/// ln of Gamma((p+d)/2)^2 / (Gamma(d/2)^2 (pi p)^p).
inline double log_gaussian_uncertainty_product(int d, double p) {
  if (d < 1) throw domain_error("gaussian_uncertainty_product: d must be >= 1");
  if (!(p > 1.0)) throw domain_error("gaussian_uncertainty_product: p must be > 1");
  return 2.0 * (log_gamma(0.5 * (p + d)) - log_gamma(0.5 * d)) -
         p * std::log(std::numbers::pi * p);
}

/// V_p(g)/||g||_p^p * V_p(ghat)/||ghat||_p^p for the standard Gaussian.
inline double gaussian_uncertainty_product(int d, double p) {
  return std::exp(log_gaussian_uncertainty_product(d, p));
}

}  // namespace uplab
