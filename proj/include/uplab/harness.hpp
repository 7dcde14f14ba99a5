#pragma once

// End-to-end experiments: dimension sweeps of the certified constants,
// link-by-link checks of the inequality chain on grid functions, and the
// Cowling-Price trichotomy.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "uplab/counterexamples.hpp"
#include "uplab/errors.hpp"
#include "uplab/grid.hpp"
#include "uplab/params.hpp"
#include "uplab/radial.hpp"

namespace uplab {

struct SweepRow {
  int d = 1;
  double p = 2.0;
  double method_log_bound = 0.0;
  double gaussian_log_product = 0.0;
  double claimed_floor_log = 0.0;
  double quotient_log = 0.0;  // ln (c_d/omega_{d-1})^{2/(d+1)} (L^2 sweep only)
  bool floor_ok = true;
  bool below_sharp = true;
  bool quotient_ok = true;

  bool all_ok() const { return floor_ok && below_sharp && quotient_ok; }
  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int d0 = 0;  // smallest d from which every row passes; d_max + 1 if none
  double method_slope = std::numeric_limits<double>::quiet_NaN();
  double gaussian_slope = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
};

inline constexpr int slope_window_start = 50;

namespace detail {

inline int first_passing_tail(const std::vector<SweepRow>& rows) {
  int d0 = rows.empty() ? 1 : rows.back().d + 1;
  for (auto it = rows.rbegin(); it != rows.rend() && it->all_ok(); ++it) d0 = it->d;
  return d0;
}

// Least-squares slope of ln(value) against ln d over d >= 50.
template <class Get>
double log_log_slope(const std::vector<SweepRow>& rows, Get get) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& r : rows) {
    if (r.d < slope_window_start) continue;
    x.push_back(std::log(static_cast<double>(r.d)));
    y.push_back(get(r));
  }
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return least_squares_slope(x, y);
}

inline void require_sweep_range(int d_max) {
  if (d_max < 1 || d_max > 1000) throw domain_error("sweep: d_max must be in 1..1000");
}

}  // namespace detail

/// L^2 constants for d = 1..d_max against d^2 1e-10, the sharp d^2/(16 pi^2)
/// and the quotient floor d/1e5.
inline SweepResult heisenberg_sweep(int d_max) {
  detail::require_sweep_range(d_max);
  SweepResult out;
  out.rows.reserve(d_max);
  for (int d = 1; d <= d_max; ++d) {
    const auto w = l2_params(d);
    const double log_d = std::log(static_cast<double>(d));
    SweepRow row;
    row.d = d;
    row.p = 2.0;
    row.method_log_bound = w.log_bound;
    row.gaussian_log_product = log_gaussian_uncertainty_product(d, 2.0);
    row.claimed_floor_log = 2.0 * log_d + std::log(1e-10);
    row.quotient_log = (2.0 / (d + 1.0)) * (w.log_c_d - dimension_constants(d).log_sphere_area);
    row.floor_ok = row.method_log_bound >= row.claimed_floor_log;
    row.below_sharp = row.method_log_bound <= row.gaussian_log_product;
    row.quotient_ok = row.quotient_log >= log_d - std::log(1e5);
    out.rows.push_back(row);
  }
  out.d0 = detail::first_passing_tail(out.rows);
  out.method_slope = detail::log_log_slope(out.rows, [](const SweepRow& r) { return r.method_log_bound; });
  out.gaussian_slope =
      detail::log_log_slope(out.rows, [](const SweepRow& r) { return r.gaussian_log_product; });
  out.pass = out.d0 <= 10 && (std::isnan(out.method_slope) || std::abs(out.method_slope - 2.0) <= 0.05);
  return out;
}

/// L^p constants for fixed p in (1, 2]. The floor C1(p) d^p is calibrated at
/// d = 50 and checked beyond it.
inline SweepResult lp_sweep(double p, int d_max) {
  if (!(p > 1.0 && p <= 2.0)) throw regime_error("lp_sweep: p must lie in (1, 2]");
  detail::require_sweep_range(d_max);
  const double log_c1 = (d_max >= slope_window_start)
                            ? lp_params(slope_window_start, p).log_bound -
                                  p * std::log(static_cast<double>(slope_window_start))
                            : -std::numeric_limits<double>::infinity();
  SweepResult out;
  out.rows.reserve(d_max);
  for (int d = 1; d <= d_max; ++d) {
    const auto w = lp_params(d, p);
    SweepRow row;
    row.d = d;
    row.p = p;
    row.method_log_bound = w.log_bound;
    row.gaussian_log_product = log_gaussian_uncertainty_product(d, p);
    row.claimed_floor_log = log_c1 + p * std::log(static_cast<double>(d));
    row.quotient_log = std::numeric_limits<double>::quiet_NaN();
    row.floor_ok = d <= slope_window_start || row.method_log_bound >= row.claimed_floor_log;
    row.below_sharp = row.method_log_bound <= row.gaussian_log_product;
    row.quotient_ok = true;
    out.rows.push_back(row);
  }
  out.d0 = detail::first_passing_tail(out.rows);
  out.method_slope = detail::log_log_slope(out.rows, [](const SweepRow& r) { return r.method_log_bound; });
  out.gaussian_slope =
      detail::log_log_slope(out.rows, [](const SweepRow& r) { return r.gaussian_log_product; });
  auto slope_ok = [p](double s) { return std::isnan(s) || std::abs(s - p) <= 0.05 * p; };
  bool rows_ok = true;
  for (const auto& r : out.rows) rows_ok = rows_ok && r.all_ok();
  out.pass = rows_ok && slope_ok(out.method_slope) && slope_ok(out.gaussian_slope);
  return out;
}

// ---- inequality chain on a grid function -----------------------------------

inline constexpr double chain_tolerance = 1e-6;

/// One inequality lhs >= rhs.
struct ChainLink {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs / rhs - 1
  bool pass = false;
};

struct ChainReport {
  WigdersonParams params;
  std::vector<ChainLink> links;
  bool pass = false;
};

namespace detail {

inline ChainLink make_link(std::string name, double lhs, double rhs) {
  ChainLink l{std::move(name), lhs, rhs, lhs / rhs - 1.0, false};
  l.pass = l.slack >= -chain_tolerance;
  return l;
}

// Links that only involve one side (f or fhat).
inline void one_side_links(const GridFunction& g, const WigdersonParams& w, const std::string& tag,
                           std::vector<ChainLink>& links, double& ratio_out, double& quotient_out) {
  const double norm_a = grid_weighted_norm(g, w.a);
  const double norm_p = grid_weighted_norm(g, w.p);
  const double moment = std::pow(grid_weighted_norm(g, w.p, 1.0), w.p);  // V_p
  const double threshold = compute_threshold(norm_a, norm_p, w);
  const double tail = grid_mass_outside(g, w.a, threshold);
  const double mass_a = std::pow(norm_a, w.a);
  const double omega = dimension_constants(w.d).sphere_area();

  links.push_back(make_link("half_mass" + tag, tail, 0.5 * mass_a));
  const double holder = std::pow(moment, w.a / w.p) *
                        std::pow(omega / (w.epsilon * std::pow(threshold, w.epsilon)), 1.0 / w.s);
  links.push_back(make_link("tail_holder" + tag, holder, tail));
  const double ratio = moment / std::pow(norm_p, w.p);
  const double single = std::exp(w.log_single_bound) * std::pow(norm_a / norm_p, w.kappa);
  links.push_back(make_link("single_function" + tag, ratio, single));
  ratio_out = ratio;
  quotient_out = norm_a / norm_p;
}

}  // namespace detail

/// Evaluates every link of the chain for f on its grid: mass split at T, the
/// Hölder tail bound, the one-function inequality for f and fhat, the primary
/// uncertainty quotient and the final product bound. p = 2 uses the L^2
/// parameter choice, other p the L^p one.
inline ChainReport function_chain_check(const GridFunction& f, int d, double p) {
  if (f.spec().d != d) throw domain_error("function_chain_check: grid dimension differs from d");
  require_nonzero(f, "function_chain_check");
  ChainReport report;
  report.params = (p == 2.0) ? l2_params(d) : lp_params(d, p);
  const auto& w = report.params;
  const auto fhat = fourier_transform(f);

  double ratio_f = 0.0;
  double ratio_fhat = 0.0;
  double q_f = 0.0;
  double q_fhat = 0.0;
  detail::one_side_links(f, w, "", report.links, ratio_f, q_f);
  detail::one_side_links(fhat, w, "_fourier", report.links, ratio_fhat, q_fhat);
  report.links.push_back(detail::make_link("primary_up", q_f * q_fhat, 1.0));
  report.links.push_back(detail::make_link("product_bound", ratio_f * ratio_fhat, w.bound));

  report.pass = true;
  for (const auto& l : report.links) report.pass = report.pass && l.pass;
  return report;
}

// ---- Cowling-Price trichotomy ------------------------------------------------

enum class CpClass { feasible, endpoint, violated };

inline const char* to_string(CpClass c) {
  switch (c) {
    case CpClass::feasible: return "feasible";
    case CpClass::endpoint: return "endpoint";
    case CpClass::violated: return "violated";
  }
  return "?";
}

inline CpClass classify(const CpExponents& e) {
  const double gap = cp_gap(e);
  if (std::abs(gap) <= exponent_tolerance) return CpClass::endpoint;
  return gap > 0.0 ? CpClass::feasible : CpClass::violated;
}

struct CpOptions {
  std::uint64_t seed = 1;
  int k_max = 4;
};

struct CpFunctionCheck {
  std::string name;
  double lhs = 0.0;  // || |x|^theta f ||_p || |xi|^phi fhat ||_q
  double rhs = 0.0;  // C ||f||_2^2
  double slack = 0.0;
  bool pass = false;
};

struct CpReport {
  CpExponents exponents;
  CpClass classification = CpClass::feasible;
  std::optional<CowlingPriceParams> params;
  std::vector<CpFunctionCheck> checks;
  std::optional<RsGrowth> growth;  // grid construction, d <= 2
  double reduced_slope = 0.0;
  std::vector<double> tail_deltas;
  std::vector<double> tail_masses;
  double weighted_mass = 0.0;
  bool pass = false;  // the inequality holds with the certified constant
};

namespace detail {

inline void validate_cp_exponents(const CpExponents& e) {
  if (e.d < 1) throw domain_error("cp_check: d must be >= 1");
  if (!(e.p > 1.0) || !(e.q > 1.0) || !std::isfinite(e.p) || !std::isfinite(e.q)) {
    throw domain_error("cp_check: p and q must lie in (1, inf)");
  }
  if (!(e.theta > 0.0) || !(e.phi > 0.0)) throw domain_error("cp_check: theta and phi must be positive");
  if (std::abs(homogeneity_defect(e)) > exponent_tolerance) {
    throw homogeneity_error("cp_check: 1/q + phi/d = " + fmt(1.0 / e.q + e.phi / e.d) +
                            " differs from 1/p + theta/d = " + fmt(1.0 / e.p + e.theta / e.d));
  }
}

inline CpFunctionCheck cp_function_check(std::string name, double lhs, double bound, double l2_sq) {
  CpFunctionCheck c{std::move(name), lhs, bound * l2_sq, 0.0, false};
  c.slack = c.lhs / c.rhs - 1.0;
  c.pass = c.slack >= -chain_tolerance;
  return c;
}

inline CpFunctionCheck cp_radial_check(const std::string& name, const RadialProfile& g,
                                       const CpExponents& e, double bound) {
  const double space = radial_weighted_norm(g, e.d, e.p, e.theta);
  const double freq = radial_weighted_norm(g, e.d, e.q, e.phi);
  const double l2 = radial_weighted_norm(g, e.d, 2.0, 0.0);
  return cp_function_check(name, space * freq, bound, l2 * l2);
}

}  // namespace detail

/// Classifies (d, p, q, theta, phi). Feasible tuples get the certified constant
/// and a check on the Gaussian, g_2, g_4 (self-dual, radial) and a random bump
/// (grid, d <= 3). Violated tuples get the Rudin-Shapiro growth slope. Endpoint
/// tuples get the diverging tail masses and the finite weighted mass.
inline CpReport cp_check(const CpExponents& e, const CpOptions& options = {}) {
  detail::validate_cp_exponents(e);
  CpReport report;
  report.exponents = e;
  report.classification = classify(e);
  report.reduced_slope = 0.5 * e.d - e.d / e.p - e.theta;

  switch (report.classification) {
    case CpClass::feasible: {
      report.params = cp_params(e);
      const double bound = std::exp(report.params->log_bound);
      report.checks.push_back(detail::cp_radial_check("gaussian", RadialProfile::gaussian(), e, bound));
      report.checks.push_back(detail::cp_radial_check("g_2", gc_profile(2.0, e.d), e, bound));
      report.checks.push_back(detail::cp_radial_check("g_4", gc_profile(4.0, e.d), e, bound));
      if (e.d <= 3) {
        const auto f = sample(RandomBump(e.d, options.seed), default_grid_spec(e.d));
        const auto fhat = fourier_transform(f);
        const double l2 = grid_weighted_norm(f, 2.0);
        report.checks.push_back(detail::cp_function_check(
            "random_bump", grid_weighted_norm(f, e.p, e.theta) * grid_weighted_norm(fhat, e.q, e.phi),
            bound, l2 * l2));
      }
      report.pass = true;
      for (const auto& c : report.checks) report.pass = report.pass && c.pass;
      break;
    }
    case CpClass::violated: {
      if (e.d <= 2) {
        const int k_max = std::clamp(options.k_max, 3, rs_max_level);
        const auto families = rs_sequence(standard_bump(rs_grid_spec(e.d, k_max)), e.d, k_max);
        report.growth = rs_growth_ratio(families, e.p, e.theta);
      }
      report.pass = false;
      break;
    }
    case CpClass::endpoint: {
      report.tail_deltas = {1e-3, 1e-6, 1e-12, 1e-24};
      for (double delta : report.tail_deltas) report.tail_masses.push_back(endpoint_tail_mass(delta, e.d));
      report.weighted_mass = endpoint_weighted_mass(e.d, e.p, 0.5 * e.d - e.d / e.p);
      report.pass = false;
      break;
    }
  }
  return report;
}

}  // namespace uplab
