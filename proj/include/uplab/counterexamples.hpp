#pragma once

// Function families that show the exponent conditions are necessary: the
// self-dual g_c family, the signed Rudin-Shapiro translates, and the closed
// form shell integrals of the endpoint case.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "uplab/errors.hpp"
#include "uplab/grid.hpp"
#include "uplab/params.hpp"
#include "uplab/radial.hpp"
#include "uplab/specialfn.hpp"

namespace uplab {

// ---- g_c ------------------------------------------------------------------

/// c^{-d/2} e^{-pi r^2/c^2} + c^{d/2} e^{-pi c^2 r^2}, its own transform.
inline RadialProfile gc_profile(double c, int d) {
  if (!(c > 0.0) || !std::isfinite(c)) throw domain_error("gc_profile: c must be positive");
  if (d < 1) throw domain_error("gc_profile: d must be >= 1");
  const double h = 0.5 * d;
  return RadialProfile::gaussian_mixture({{std::pow(c, -h), 1.0 / (c * c)}, {std::pow(c, h), c * c}});
}

/// Grid resolving both components of g_c: half-width max(6, 3c) in space and
/// at least 3c in frequency.
inline GridSpec gc_grid_spec(double c, int d) {
  const double scale = std::max(c, 1.0 / c);
  const double half_width = std::max(6.0, 3.0 * scale);
  int n = 16;
  while (n < 4.0 * half_width * 3.0 * scale) n *= 2;
  return make_grid_spec(d, n, half_width);
}

/// V_p(g_c) / ‖g_c‖_p^p, cross terms included.
inline double gc_uncertainty_ratio(double c, int d, double p) {
  if (!(p > 1.0)) throw domain_error("gc_uncertainty_ratio: p must be > 1");
  const auto g = gc_profile(c, d);
  return std::exp(log_radial_power_moment(g, d, p, 1.0) - log_radial_power_moment(g, d, p, 0.0));
}

namespace detail {

// ln(c^e + c^{-e})
inline double log_cosh_power(double log_c, double e) {
  const double x = std::abs(e * log_c);
  return x + std::log1p(std::exp(-2.0 * x));
}

inline void require_above_two(double p, const char* where) {
  if (!(p > 2.0)) throw domain_error(std::string(where) + ": degenerate exponent, need p > 2");
}

}  // namespace detail

/// (c^{e1} + c^{-e1}) / (c^{e2} + c^{-e2}) with e1 = d + p - dp/2, e2 = d - dp/2.
inline double h_bound(double c, int d, double p) {
  detail::require_above_two(p, "h_bound");
  if (!(c > 0.0)) throw domain_error("h_bound: c must be positive");
  const double log_c = std::log(c);
  const double e1 = d + p - 0.5 * d * p;
  const double e2 = d - 0.5 * d * p;
  return std::exp(detail::log_cosh_power(log_c, e1) - detail::log_cosh_power(log_c, e2));
}

/// |2(d + p - dp/2) / ((p - 2) d)|; below 1 exactly when h(c) decays.
inline double alpha_exponent(int d, double p) {
  detail::require_above_two(p, "alpha_exponent");
  if (d < 1) throw domain_error("alpha_exponent: d must be >= 1");
  return std::abs(2.0 * (d + p - 0.5 * d * p) / ((p - 2.0) * d));
}

/// Squared g_c uncertainty ratios along c_values (supercritical p only).
inline std::vector<double> gc_infimum_sweep(int d, double p, std::span<const double> c_values) {
  if (lp_regime(d, p) != LpRegime::supercritical) {
    throw regime_error("gc_infimum_sweep: p = " + detail::fmt(p) + " is " +
                       to_string(lp_regime(d, p)) + " for d = " + std::to_string(d) +
                       "; need p > 2d/(d-1)");
  }
  std::vector<double> out;
  out.reserve(c_values.size());
  double previous = 0.0;
  for (double c : c_values) {
    if (!(c >= 1.0)) throw domain_error("gc_infimum_sweep: c values must be >= 1");
    if (!out.empty() && !(c > previous)) throw domain_error("gc_infimum_sweep: c values must increase");
    previous = c;
    const double ratio = gc_uncertainty_ratio(c, d, p);
    out.push_back(ratio * ratio);
  }
  return out;
}

// ---- sign matrices --------------------------------------------------------

/// 2^d x 2^d matrix of +-1 with sum_i |sum_j e_ij a_j|^2 = 2^d sum_j |a_j|^2.
class SignMatrix {
 public:
  SignMatrix(int d, std::vector<std::int8_t> entries) : d_(d), entries_(std::move(entries)) {
    if (entries_.size() != size() * size()) throw size_error("SignMatrix: wrong entry count");
  }

  int dimension() const { return d_; }
  std::size_t size() const { return std::size_t{1} << d_; }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }

  std::vector<complex> apply(std::span<const complex> a) const {
    if (a.size() != size()) throw size_error("SignMatrix::apply: vector length must be 2^d");
    std::vector<complex> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
      complex sum{0.0, 0.0};
      for (std::size_t j = 0; j < size(); ++j) sum += static_cast<double>((*this)(i, j)) * a[j];
      out[i] = sum;
    }
    return out;
  }

  /// |sum_i |(Ea)_i|^2 - 2^d sum_j |a_j|^2| / (2^d sum_j |a_j|^2).
  double parallelogram_defect(std::span<const complex> a) const {
    double rhs = 0.0;
    for (const auto& v : a) rhs += std::norm(v);
    rhs *= static_cast<double>(size());
    double lhs = 0.0;
    for (const auto& v : apply(a)) lhs += std::norm(v);
    return rhs == 0.0 ? lhs : std::abs(lhs - rhs) / rhs;
  }

 private:
  int d_;
  std::vector<std::int8_t> entries_;
};

inline constexpr int max_sign_dimension = 12;

/// Doubling recursion: row i of level k yields row i (block added) and row
/// i + 2^k (block subtracted) of level k + 1. Column j stands for the translate
/// whose axis b is shifted when bit b of j is set.
inline SignMatrix sign_matrix(int d) {
  if (d < 1) throw domain_error("sign_matrix: d must be >= 1");
  if (d > max_sign_dimension) throw size_error("sign_matrix: d must be <= 12");
  std::vector<std::int8_t> level{1};
  std::size_t m = 1;
  for (int step = 0; step < d; ++step) {
    const std::size_t next = 2 * m;
    std::vector<std::int8_t> grown(next * next);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const auto e = level[i * m + j];
        grown[i * next + j] = e;
        grown[i * next + j + m] = e;
        grown[(i + m) * next + j] = e;
        grown[(i + m) * next + j + m] = static_cast<std::int8_t>(-e);
      }
    }
    level = std::move(grown);
    m = next;
  }
  return SignMatrix(d, std::move(level));
}

// ---- Rudin-Shapiro translates ----------------------------------------------

namespace detail {

// (1 - (2u - 1)^2)^4 with u = (t - 0.1)/0.8 on [0.1, 0.9], zero elsewhere.
inline double bump_1d(double t) {
  const double u = (t - 0.1) / 0.8;
  if (!(u > 0.0 && u < 1.0)) return 0.0;
  const double w = 2.0 * u - 1.0;
  const double b = 1.0 - w * w;
  return (b * b) * (b * b);
}

}  // namespace detail

inline constexpr int rs_max_level = 4;
inline constexpr int rs_cells_per_unit = 16;

/// Grid holding [0, 2^k_max]^d at spacing 1/16.
inline GridSpec rs_grid_spec(int d, int k_max) {
  if (d < 1 || d > 2) throw domain_error("rs_grid_spec: d must be 1 or 2");
  if (k_max < 0 || k_max > rs_max_level) throw size_error("rs_grid_spec: level must be in 0..4");
  const int half = std::max(1 << k_max, 1);
  return make_grid_spec(d, 2 * half * rs_cells_per_unit, half);
}

/// Tensor-product polynomial bump supported in [1/10, 9/10]^d with peak 1.
inline GridFunction standard_bump(const GridSpec& spec) {
  const int d = spec.d;
  return sample(
      [d](const Point& x) {
        double v = 1.0;
        for (int axis = 0; axis < d; ++axis) v *= detail::bump_1d(x[axis]);
        return v;
      },
      spec);
}

struct RSFamily {
  int d = 1;
  int k = 0;
  std::vector<GridFunction> members;  // f_{1,k}, ..., f_{2^d,k}
  double base_l2_sq = 0.0;
};

namespace detail {

inline bool is_integer(double x) { return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x)); }

inline void validate_rs_base(const GridFunction& base, int d) {
  const auto& spec = base.spec();
  if (spec.d != d) throw domain_error("rs_level: base grid dimension differs from d");
  if (d < 1 || d > 2) throw domain_error("rs_level: d must be 1 or 2");
  const double h = spec.spacing();
  if (!is_integer(1.0 / h) || !is_integer(spec.half_width / h)) {
    throw domain_error("rs_level: integer translates are not lattice-exact on this grid");
  }
  double peak = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double m = std::abs(base[i]);
    peak = std::max(peak, m);
    const auto x = base.point(i);
    bool inside = true;
    for (int axis = 0; axis < d; ++axis) inside = inside && x[axis] >= 0.1 && x[axis] <= 0.9;
    if (!inside && m > 1e-12) throw domain_error("rs_level: base is not supported in [1/10, 9/10]^d");
  }
  if (std::abs(peak - 1.0) > 1e-9) throw domain_error("rs_level: base must have sup-norm 1");
}

// g(x) = f(x - shift) with shift given in cells per axis; values shifted past
// the grid edge must vanish.
inline std::vector<complex> translate(const GridFunction& f, const std::array<int, 3>& cells) {
  const auto& spec = f.spec();
  std::vector<complex> out(f.size(), complex{0.0, 0.0});
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == complex{0.0, 0.0}) continue;
    auto k = f.index(i);
    std::size_t flat = 0;
    for (int axis = 0; axis < spec.d; ++axis) {
      const int moved = k[axis] + cells[axis];
      if (moved >= spec.n) throw size_error("rs_level: grid cannot hold the translated support");
      flat = flat * spec.n + moved;
    }
    out[flat] = f[i];
  }
  return out;
}

inline RSFamily rs_next(const RSFamily& current, const SignMatrix& signs) {
  const auto& spec = current.members.front().spec();
  const int shift = static_cast<int>(std::lround((1 << current.k) / spec.spacing()));
  const std::size_t m = signs.size();
  std::vector<std::vector<complex>> shifted;
  shifted.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::array<int, 3> cells{0, 0, 0};
    for (int axis = 0; axis < current.d; ++axis) {
      if (j & (std::size_t{1} << axis)) cells[axis] = shift;
    }
    shifted.push_back(translate(current.members[j], cells));
  }
  RSFamily next{current.d, current.k + 1, {}, current.base_l2_sq};
  next.members.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<complex> values(spec.size(), complex{0.0, 0.0});
    for (std::size_t j = 0; j < m; ++j) {
      const double e = signs(i, j);
      const auto& src = shifted[j];
      for (std::size_t t = 0; t < values.size(); ++t) values[t] += e * src[t];
    }
    next.members.emplace_back(spec, std::move(values));
  }
  return next;
}

inline void check_rs_capacity(const GridSpec& spec, int k) {
  if (k < 0) throw domain_error("rs_level: level must be >= 0");
  if (k > rs_max_level) throw size_error("rs_level: level must be <= 4");
  if (spec.half_width < (1 << k)) {
    throw size_error("rs_level: grid cannot hold [0, 2^" + std::to_string(k) + "]^d");
  }
}

}  // namespace detail

/// Levels 0..k_max of the signed translate recursion
/// f_{i,k+1}(x) = sum_j e_ij f_{j,k}(x - x_j), x_j in {0, 2^k}^d.
inline std::vector<RSFamily> rs_sequence(const GridFunction& base, int d, int k_max) {
  detail::validate_rs_base(base, d);
  detail::check_rs_capacity(base.spec(), k_max);
  const auto signs = sign_matrix(d);
  const double l2 = grid_weighted_norm(base, 2.0);
  std::vector<RSFamily> out;
  out.push_back({d, 0, std::vector<GridFunction>(signs.size(), base), l2 * l2});
  for (int k = 0; k < k_max; ++k) out.push_back(detail::rs_next(out.back(), signs));
  return out;
}

inline RSFamily rs_level(const GridFunction& base, int d, int k) {
  auto levels = rs_sequence(base, d, k);
  return std::move(levels.back());
}

struct RsGrowth {
  std::vector<int> levels;
  std::vector<double> ratios;  // ‖f_{1,k}‖₂² / (‖|x|^θ f_{1,k}‖_p 2^{d(k+1)/2})
  double fitted_slope = 0.0;   // least-squares slope of log2(ratio) against k
  double reduced_slope = 0.0;  // d/2 - d/p - theta
};

inline double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

/// Growth of the weighted quotient over levels k >= 1; the Fourier side is
/// replaced by its envelope 2^{d(k+1)/2} |fhat|, whose norm is k-independent.
inline RsGrowth rs_growth_ratio(std::span<const RSFamily> families, double p, double theta) {
  if (!(p > 1.0)) throw domain_error("rs_growth_ratio: p must be > 1");
  if (!(theta >= 0.0)) throw domain_error("rs_growth_ratio: theta must be >= 0");
  RsGrowth g;
  std::vector<double> ks;
  std::vector<double> logs;
  int d = 0;
  for (const auto& fam : families) {
    if (d == 0) d = fam.d;
    if (fam.d != d) throw domain_error("rs_growth_ratio: families must share d");
    if (fam.k < 1) continue;
    const auto& f = fam.members.front();
    const double l2 = grid_weighted_norm(f, 2.0);
    const double weighted = grid_weighted_norm(f, p, theta);
    const double ratio = l2 * l2 / (weighted * std::pow(2.0, 0.5 * d * (fam.k + 1)));
    g.levels.push_back(fam.k);
    g.ratios.push_back(ratio);
    ks.push_back(fam.k);
    logs.push_back(std::log2(ratio));
  }
  if (g.levels.size() < 3) throw domain_error("rs_growth_ratio: need at least 3 levels with k >= 1");
  g.fitted_slope = least_squares_slope(ks, logs);
  g.reduced_slope = 0.5 * d - d / p - theta;
  return g;
}

// ---- endpoint shell integrals ----------------------------------------------

/// omega_{d-1} [ln ln(1/delta) - ln ln 2] = integral over delta < |x| < 1/2 of
/// |x|^{-d} / ln(1/|x|).
inline double endpoint_tail_mass(double delta, int d) {
  if (!(delta > 0.0 && delta < 0.5)) throw domain_error("endpoint_tail_mass: need 0 < delta < 1/2");
  return dimension_constants(d).sphere_area() *
         (std::log(std::log(1.0 / delta)) - std::log(std::numbers::ln2));
}

/// omega_{d-1} ln(2)^{1-p/2} / (p/2 - 1) = integral over |x| < 1/2 of
/// |x|^{-d} ln^{-p/2}(1/|x|), at the endpoint theta = d/2 - d/p.
inline double endpoint_weighted_mass(int d, double p, double theta) {
  if (d < 1) throw domain_error("endpoint_weighted_mass: d must be >= 1");
  if (!(p > 2.0)) throw divergence_error("endpoint_weighted_mass: diverges for p <= 2");
  if (std::abs(theta - (0.5 * d - d / p)) > exponent_tolerance) {
    throw domain_error("endpoint_weighted_mass: theta must equal d/2 - d/p");
  }
  return dimension_constants(d).sphere_area() * std::pow(std::numbers::ln2, 1.0 - 0.5 * p) /
         (0.5 * p - 1.0);
}

}  // namespace uplab
