#pragma once

// Command-line front end. Exit status: 0 when every checked inequality holds,
// 1 when one fails, 2 on usage errors.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uplab/counterexamples.hpp"
#include "uplab/harness.hpp"
#include "uplab/io.hpp"

namespace uplab::cli {

enum class Command { heisenberg, lp, sharpness, rudin_shapiro, cowling_price, gaussian, chain };
enum class Format { csv, json };

struct RunConfig {
  Command command = Command::heisenberg;
  int d = 2;
  int d_max = 500;
  double p = 2.0;
  double q = 2.0;
  double theta = 1.0;
  double phi = 1.0;
  std::vector<double> c_list{1, 2, 4, 8, 16, 32};
  int k_max = 4;
  std::optional<int> n;
  std::optional<double> half_width;
  std::string out;
  Format format = Format::csv;
  std::uint64_t seed = 1;
  std::string function = "gaussian";
  double c = 4.0;
};

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_usage = 2;

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = exit_pass;
};

inline std::string num(double x) { return io::format_double(x); }

inline ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out = std::cout,
                               std::ostream& err = std::cerr) {
  RunConfig cfg;
  std::string format = "csv";
  CLI::App app{"Numerical checks of Fourier uncertainty principles in R^d.", "uplab"};
  app.require_subcommand(1);

  auto seed_flag = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed of the random test bump")->capture_default_str();
  };
  auto output_flags = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output file (stdout when omitted)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };

  auto* heis = app.add_subcommand(
      "heisenberg",
      "Heisenberg uncertainty in R^d: V(f)V(fhat)/(|f|^2 |fhat|^2) >= C d^2. Sweeps the certified "
      "constant against the floor 1e-10 d^2 and the sharp Gaussian value d^2/(16 pi^2).");
  heis->add_option("--d-max", cfg.d_max, "Largest dimension (1..1000)")->capture_default_str();
  output_flags(heis);

  auto* lp = app.add_subcommand(
      "lp",
      "L^p uncertainty for fixed 1 < p <= 2: the certified constant grows like C1(p) d^p, the "
      "Gaussian product shows d^p is optimal.");
  lp->add_option("--p", cfg.p, "Exponent in (1, 2]")->required();
  lp->add_option("--d-max", cfg.d_max, "Largest dimension (1..1000)")->capture_default_str();
  output_flags(lp);

  auto* sharp = app.add_subcommand(
      "sharpness",
      "No L^p uncertainty principle for p > 2d/(d-1): the self-dual family g_c drives the product "
      "to 0.");
  sharp->add_option("--d", cfg.d, "Dimension (>= 2)")->required();
  sharp->add_option("--p", cfg.p, "Supercritical exponent")->required();
  sharp->add_option("--c-list", cfg.c_list, "Increasing scales c >= 1")->delimiter(',');
  output_flags(sharp);

  auto* rs = app.add_subcommand(
      "rudin-shapiro",
      "Signed translate recursion: L^2 mass 2^{dk}, flat Fourier envelope, and growth 2^{k(d/2 - d/p - "
      "theta)} of the weighted quotient when theta/d < 1/2 - 1/p.");
  rs->add_option("--d", cfg.d, "Dimension (1 or 2)")->capture_default_str();
  rs->add_option("--k-max", cfg.k_max, "Deepest level (3..4)")->capture_default_str();
  rs->add_option("--p", cfg.p, "Exponent of the weighted norm")->capture_default_str();
  rs->add_option("--theta", cfg.theta, "Weight exponent")->capture_default_str();
  rs->add_option("--out", cfg.out, "Prefix for per-member grid CSV files of the deepest level");

  auto* cp = app.add_subcommand(
      "cowling-price",
      "Weighted uncertainty || |x|^theta f ||_p || |xi|^phi fhat ||_q >= C ||f||_2^2 holds iff "
      "theta/d > 1/2 - 1/p, phi/d > 1/2 - 1/q (with 1/q + phi/d = 1/p + theta/d).");
  cp->add_option("--d", cfg.d, "Dimension")->required();
  cp->add_option("--p", cfg.p, "Space exponent")->required();
  cp->add_option("--q", cfg.q, "Frequency exponent")->required();
  cp->add_option("--theta", cfg.theta, "Space weight")->required();
  cp->add_option("--phi", cfg.phi, "Frequency weight")->required();
  cp->add_option("--k-max", cfg.k_max, "Deepest translate level for violated tuples (3..4)")->capture_default_str();
  seed_flag(cp);
  output_flags(cp);

  auto* gauss = app.add_subcommand(
      "gaussian",
      "Uncertainty product of the standard Gaussian, Gamma((p+d)/2)^2 / (Gamma(d/2)^2 (pi p)^p); "
      "equals d^2/(16 pi^2) at p = 2.");
  gauss->add_option("--d", cfg.d, "Dimension")->required();
  gauss->add_option("--p", cfg.p, "Exponent > 1")->capture_default_str();
  output_flags(gauss);

  auto* chain = app.add_subcommand(
      "chain",
      "Every step of the uncertainty proof on one grid function: half-mass split, Hölder tail bound, "
      "one-function inequality, primary uncertainty quotient, product bound.");
  chain->add_option("--d", cfg.d, "Dimension (1..3)")->required();
  chain->add_option("--p", cfg.p, "Exponent, 1 < p < 2d/(d-1)")->capture_default_str();
  chain->add_option("--function", cfg.function, "Test function")
      ->check(CLI::IsMember({"gaussian", "gc", "bump"}))
      ->capture_default_str();
  chain->add_option("--c", cfg.c, "Scale of g_c")->capture_default_str();
  chain->add_option("--n", cfg.n, "Samples per axis (power of two)");
  chain->add_option("--L", cfg.half_width, "Half-width of the grid");
  seed_flag(chain);
  output_flags(chain);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {std::nullopt, exit_pass};
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return {std::nullopt, exit_usage};
  }

  if (heis->parsed()) cfg.command = Command::heisenberg;
  else if (lp->parsed()) cfg.command = Command::lp;
  else if (sharp->parsed()) cfg.command = Command::sharpness;
  else if (rs->parsed()) cfg.command = Command::rudin_shapiro;
  else if (cp->parsed()) cfg.command = Command::cowling_price;
  else if (gauss->parsed()) cfg.command = Command::gaussian;
  else cfg.command = Command::chain;
  cfg.format = (format == "json") ? Format::json : Format::csv;
  return {cfg, exit_pass};
}

// ---- validation ---------------------------------------------------------------

inline GridSpec chain_grid(const RunConfig& cfg) {
  GridSpec spec = (cfg.function == "gc") ? gc_grid_spec(cfg.c, cfg.d) : default_grid_spec(cfg.d);
  if (cfg.n) spec.n = *cfg.n;
  if (cfg.half_width) spec.half_width = *cfg.half_width;
  return make_grid_spec(spec.d, spec.n, spec.half_width);
}

inline constexpr std::size_t max_grid_points = std::size_t{1} << 22;

inline void validate(const RunConfig& cfg) {
  auto fail = [](const std::string& m) { throw usage_error(m); };
  auto p_range_message = [&](const std::string& flag) {
    if (cfg.d == 1) return flag + " must satisfy p > 1 for d=1";
    return flag + " must satisfy 1 < p < 2d/(d-1) = " + num(2.0 * cfg.d / (cfg.d - 1.0)) +
           " for d=" + std::to_string(cfg.d);
  };
  switch (cfg.command) {
    case Command::heisenberg:
      if (cfg.d_max < 1 || cfg.d_max > 1000) fail("--d-max must satisfy 1 <= d-max <= 1000");
      break;
    case Command::lp:
      if (!(cfg.p > 1.0 && cfg.p <= 2.0)) fail("--p must satisfy 1 < p <= 2");
      if (cfg.d_max < 1 || cfg.d_max > 1000) fail("--d-max must satisfy 1 <= d-max <= 1000");
      break;
    case Command::sharpness:
      if (cfg.d < 2) fail("--d must satisfy d >= 2 (no supercritical range for d=1)");
      if (!(cfg.p > 1.0) || lp_regime(cfg.d, cfg.p) != LpRegime::supercritical) {
        fail("--p must satisfy p > 2d/(d-1) = " + num(2.0 * cfg.d / (cfg.d - 1.0)) + " for d=" +
             std::to_string(cfg.d));
      }
      if (cfg.c_list.empty()) fail("--c-list must not be empty");
      for (std::size_t i = 0; i < cfg.c_list.size(); ++i) {
        if (!(cfg.c_list[i] >= 1.0)) fail("--c-list entries must be >= 1");
        if (i > 0 && !(cfg.c_list[i] > cfg.c_list[i - 1])) fail("--c-list must be strictly increasing");
      }
      break;
    case Command::rudin_shapiro:
      if (cfg.d < 1 || cfg.d > 2) fail("--d must be 1 or 2 for the grid construction");
      if (cfg.k_max < 3 || cfg.k_max > rs_max_level) fail("--k-max must satisfy 3 <= k-max <= 4");
      if (!(cfg.p > 1.0)) fail("--p must satisfy p > 1");
      if (!(cfg.theta >= 0.0)) fail("--theta must satisfy theta >= 0");
      break;
    case Command::cowling_price: {
      if (cfg.d < 1) fail("--d must satisfy d >= 1");
      if (!(cfg.p > 1.0) || !std::isfinite(cfg.p)) fail("--p must satisfy 1 < p < inf");
      if (!(cfg.q > 1.0) || !std::isfinite(cfg.q)) fail("--q must satisfy 1 < q < inf");
      if (!(cfg.theta > 0.0)) fail("--theta must satisfy theta > 0");
      if (!(cfg.phi > 0.0)) fail("--phi must satisfy phi > 0");
      if (cfg.k_max < 3 || cfg.k_max > rs_max_level) fail("--k-max must satisfy 3 <= k-max <= 4");
      const CpExponents e{cfg.d, cfg.p, cfg.q, cfg.theta, cfg.phi};
      if (std::abs(homogeneity_defect(e)) > exponent_tolerance) {
        fail("--phi must satisfy 1/q + phi/d = 1/p + theta/d, i.e. phi = " +
             num(cfg.d * (1.0 / cfg.p + cfg.theta / cfg.d - 1.0 / cfg.q)) + " for the given d, p, q, theta");
      }
      break;
    }
    case Command::gaussian:
      if (cfg.d < 1) fail("--d must satisfy d >= 1");
      if (!(cfg.p > 1.0)) fail("--p must satisfy p > 1");
      break;
    case Command::chain: {
      if (cfg.d < 1 || cfg.d > 3) fail("--d must satisfy 1 <= d <= 3 for grid functions");
      if (!lp_in_range(cfg.d, cfg.p)) fail(p_range_message("p"));
      if (!(cfg.c > 0.0)) fail("--c must satisfy c > 0");
      if (cfg.n && (*cfg.n < 16 || (*cfg.n & (*cfg.n - 1)) != 0)) fail("--n must be a power of two >= 16");
      if (cfg.half_width && !(*cfg.half_width > 0.0)) fail("--L must satisfy L > 0");
      const auto spec = chain_grid(cfg);
      if (spec.size() > max_grid_points) {
        fail("grid of " + std::to_string(spec.n) + "^" + std::to_string(cfg.d) +
             " samples exceeds the 2^22 cap; lower --n or --c");
      }
      break;
    }
  }
}

// ---- commands -------------------------------------------------------------------

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw usage_error("--out: cannot open '" + path + "' for writing");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

inline int run_sweep(const RunConfig& cfg, const SweepResult& r, std::ostream& out) {
  Output dest(cfg.out, out);
  if (cfg.format == Format::json) {
    dest.stream() << io::sweep_summary(r).dump(2) << '\n';
  } else {
    io::write_sweep_csv(dest.stream(), r.rows);
  }
  if (dest.to_file() || cfg.format == Format::csv) {
    std::ostream& log = dest.to_file() ? out : std::cerr;
    log << "rows=" << r.rows.size() << " d0=" << r.d0 << " method_slope=" << num(r.method_slope)
        << " gaussian_slope=" << num(r.gaussian_slope) << " pass=" << (r.pass ? "true" : "false") << '\n';
  }
  return r.pass ? exit_pass : exit_fail;
}

inline int run_sharpness(const RunConfig& cfg, std::ostream& out) {
  const auto products = gc_infimum_sweep(cfg.d, cfg.p, cfg.c_list);
  bool decreasing = true;
  for (std::size_t i = 1; i < products.size(); ++i) decreasing = decreasing && products[i] < products[i - 1];
  const bool collapse = products.back() < 0.1 * products.front();
  const bool pass = decreasing && collapse;
  Output dest(cfg.out, out);
  if (cfg.format == Format::json) {
    nlohmann::json j;
    j["d"] = cfg.d;
    j["p"] = cfg.p;
    j["alpha"] = alpha_exponent(cfg.d, cfg.p);
    j["c"] = cfg.c_list;
    j["product"] = products;
    j["pass"] = pass;
    dest.stream() << j.dump(2) << '\n';
  } else {
    dest.stream() << "c,product,h_bound\n";
    for (std::size_t i = 0; i < products.size(); ++i) {
      dest.stream() << num(cfg.c_list[i]) << ',' << num(products[i]) << ','
                    << num(h_bound(cfg.c_list[i], cfg.d, cfg.p)) << '\n';
    }
  }
  if (dest.to_file() || cfg.format == Format::csv) {
    (dest.to_file() ? out : std::cerr) << "alpha=" << num(alpha_exponent(cfg.d, cfg.p))
                                       << " strictly_decreasing=" << decreasing
                                       << " final_over_first=" << num(products.back() / products.front())
                                       << '\n';
  }
  return pass ? exit_pass : exit_fail;
}

inline int run_rudin_shapiro(const RunConfig& cfg, std::ostream& out) {
  const auto families = rs_sequence(standard_bump(rs_grid_spec(cfg.d, cfg.k_max)), cfg.d, cfg.k_max);
  const double base = families.front().base_l2_sq;
  const double scale = std::pow(2.0, cfg.d);
  bool pass = true;
  out << "k,l2_sq_ratio,expected,fourier_identity_defect\n";
  const auto base_hat = fourier_transform(families.front().members.front());
  double envelope_peak = 0.0;
  for (const auto& v : base_hat.values()) envelope_peak = std::max(envelope_peak, std::norm(v));
  for (const auto& fam : families) {
    const double l2 = grid_weighted_norm(fam.members.front(), 2.0);
    const double ratio = l2 * l2 / base;
    const double expected = std::pow(scale, fam.k);
    const double factor = std::pow(scale, fam.k + 1);
    std::vector<double> sum(base_hat.size(), 0.0);
    for (const auto& m : fam.members) {
      const auto mh = fourier_transform(m);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += std::norm(mh[i]);
    }
    double defect = 0.0;
    for (std::size_t i = 0; i < sum.size(); ++i) {
      defect = std::max(defect, std::abs(sum[i] - factor * std::norm(base_hat[i])));
    }
    defect /= factor * envelope_peak;
    pass = pass && std::abs(ratio / expected - 1.0) <= 1e-6 && defect <= 1e-6;
    out << fam.k << ',' << num(ratio) << ',' << num(expected) << ',' << num(defect) << '\n';
  }
  const auto growth = rs_growth_ratio(families, cfg.p, cfg.theta);
  const double tol = 0.1 * std::max(std::abs(growth.reduced_slope), 1e-2);
  const bool slope_ok = std::abs(growth.fitted_slope - growth.reduced_slope) <= tol;
  out << "fitted_slope=" << num(growth.fitted_slope) << " reduced_slope=" << num(growth.reduced_slope)
      << " slope_ok=" << slope_ok << '\n';
  if (!cfg.out.empty()) {
    const auto& last = families.back();
    for (std::size_t i = 0; i < last.members.size(); ++i) {
      const std::string path = cfg.out + "_k" + std::to_string(last.k) + "_m" + std::to_string(i + 1) + ".csv";
      std::ofstream f(path);
      if (!f) throw usage_error("--out: cannot open '" + path + "'");
      io::write_grid_csv(f, last.members[i]);
    }
  }
  return (pass && slope_ok) ? exit_pass : exit_fail;
}

inline nlohmann::json cp_json(const CpReport& r) {
  nlohmann::json j;
  j["classification"] = to_string(r.classification);
  j["reduced_slope"] = r.reduced_slope;
  j["pass"] = r.pass;
  if (r.params) {
    j["delta"] = r.params->delta;
    j["epsilon"] = r.params->epsilon;
    j["epsilon_tilde"] = r.params->epsilon_tilde;
    j["a"] = r.params->a;
    j["log_bound"] = r.params->log_bound;
  }
  for (const auto& c : r.checks) j["checks"].push_back({{"function", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack}});
  if (r.growth) {
    j["fitted_slope"] = r.growth->fitted_slope;
    j["levels"] = r.growth->levels;
    j["ratios"] = r.growth->ratios;
  }
  if (!r.tail_deltas.empty()) {
    j["tail_deltas"] = r.tail_deltas;
    j["tail_masses"] = r.tail_masses;
    j["weighted_mass"] = r.weighted_mass;
  }
  return j;
}

inline int run_cowling_price(const RunConfig& cfg, std::ostream& out) {
  const auto r = cp_check({cfg.d, cfg.p, cfg.q, cfg.theta, cfg.phi}, {cfg.seed, cfg.k_max});
  Output dest(cfg.out, out);
  if (cfg.format == Format::json) {
    dest.stream() << cp_json(r).dump(2) << '\n';
  } else {
    auto& os = dest.stream();
    os << "classification=" << to_string(r.classification) << '\n';
    switch (r.classification) {
      case CpClass::feasible:
        os << "delta=" << num(r.params->delta) << " epsilon=" << num(r.params->epsilon)
           << " epsilon_tilde=" << num(r.params->epsilon_tilde) << " a=" << num(r.params->a)
           << " bound=" << num(std::exp(r.params->log_bound)) << '\n';
        os << "function,lhs,rhs,slack\n";
        for (const auto& c : r.checks) os << c.name << ',' << num(c.lhs) << ',' << num(c.rhs) << ',' << num(c.slack) << '\n';
        break;
      case CpClass::violated:
        os << "reduced_slope=" << num(r.reduced_slope) << '\n';
        if (r.growth) {
          os << "fitted_slope=" << num(r.growth->fitted_slope) << '\n' << "k,ratio\n";
          for (std::size_t i = 0; i < r.growth->levels.size(); ++i) {
            os << r.growth->levels[i] << ',' << num(r.growth->ratios[i]) << '\n';
          }
        }
        break;
      case CpClass::endpoint:
        os << "delta,tail_mass\n";
        for (std::size_t i = 0; i < r.tail_deltas.size(); ++i) {
          os << num(r.tail_deltas[i]) << ',' << num(r.tail_masses[i]) << '\n';
        }
        os << "weighted_mass=" << num(r.weighted_mass) << '\n';
        break;
    }
  }
  return r.pass ? exit_pass : exit_fail;
}

inline int run_gaussian(const RunConfig& cfg, std::ostream& out) {
  const double product = gaussian_uncertainty_product(cfg.d, cfg.p);
  Output dest(cfg.out, out);
  if (cfg.format == Format::json) {
    nlohmann::json j{{"d", cfg.d}, {"p", cfg.p}, {"product", product}};
    dest.stream() << j.dump(2) << '\n';
  } else {
    dest.stream() << "d,p,product\n" << cfg.d << ',' << num(cfg.p) << ',' << num(product) << '\n';
    if (cfg.p == 2.0) {
      dest.stream() << "# d^2/(16 pi^2) = " << cfg.d * cfg.d << "/(16 pi^2) = "
                    << num(cfg.d * cfg.d / (16.0 * std::numbers::pi * std::numbers::pi)) << '\n';
    }
  }
  return exit_pass;
}

inline int run_chain(const RunConfig& cfg, std::ostream& out) {
  const auto spec = chain_grid(cfg);
  GridFunction f = [&] {
    if (cfg.function == "gc") {
      const auto g = gc_profile(cfg.c, cfg.d);
      return sample([&](const Point& x) { return g(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])); }, spec);
    }
    if (cfg.function == "bump") return sample(RandomBump(cfg.d, cfg.seed), spec);
    return sample([](const Point& x) { return std::exp(-std::numbers::pi * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])); },
                  spec);
  }();
  const auto r = function_chain_check(f, cfg.d, cfg.p);
  Output dest(cfg.out, out);
  if (cfg.format == Format::json) {
    nlohmann::json j;
    j["pass"] = r.pass;
    for (const auto& l : r.links) j["links"].push_back({{"name", l.name}, {"lhs", l.lhs}, {"rhs", l.rhs}, {"slack", l.slack}});
    dest.stream() << j.dump(2) << '\n';
  } else {
    dest.stream() << "link,lhs,rhs,slack,pass\n";
    for (const auto& l : r.links) {
      dest.stream() << l.name << ',' << num(l.lhs) << ',' << num(l.rhs) << ',' << num(l.slack) << ',' << l.pass << '\n';
    }
  }
  return r.pass ? exit_pass : exit_fail;
}

/// Validates, runs one experiment and maps its outcome to an exit status.
inline int dispatch(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    validate(cfg);
    switch (cfg.command) {
      case Command::heisenberg: return run_sweep(cfg, heisenberg_sweep(cfg.d_max), out);
      case Command::lp: return run_sweep(cfg, lp_sweep(cfg.p, cfg.d_max), out);
      case Command::sharpness: return run_sharpness(cfg, out);
      case Command::rudin_shapiro: return run_rudin_shapiro(cfg, out);
      case Command::cowling_price: return run_cowling_price(cfg, out);
      case Command::gaussian: return run_gaussian(cfg, out);
      case Command::chain: return run_chain(cfg, out);
    }
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}

inline int main(int argc, const char* const* argv) {
  const auto parsed = parse_args(argc, argv);
  if (!parsed.config) return parsed.exit_code;
  return dispatch(*parsed.config);
}

}  // namespace uplab::cli
