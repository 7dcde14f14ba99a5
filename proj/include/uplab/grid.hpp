#pragma once

// Sampled functions on centered cubes [-L, L)^d, d <= 3, and a discrete
// approximation of the continuous transform fhat(xi) = int f(x) e^{-2 pi i x.xi} dx.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <fftw3.h>

#include "uplab/errors.hpp"
#include "uplab/params.hpp"

namespace uplab {

using complex = std::complex<double>;
using Point = std::array<double, 3>;

struct GridSpec {
  int d = 1;
  int n = 256;
  double half_width = 8.0;

  double spacing() const { return 2.0 * half_width / n; }
  std::size_t size() const {
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(n);
    return total;
  }
  double coordinate(int k) const { return -half_width + k * spacing(); }
  /// Frequency grid: spacing 1/(2L), half-width n/(4L).
  GridSpec dual() const { return {d, n, n / (4.0 * half_width)}; }
  double cell_volume() const { return std::pow(spacing(), d); }

  bool operator==(const GridSpec&) const = default;
};

inline GridSpec make_grid_spec(int d, int n, double half_width) {
  if (d < 1 || d > 3) throw domain_error("GridSpec: d must be 1, 2 or 3");
  if (n < 16 || (n & (n - 1)) != 0) throw domain_error("GridSpec: n must be a power of two >= 16");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw domain_error("GridSpec: half-width must be positive");
  }
  return {d, n, half_width};
}

/// Resolution at which the standard Gaussian is below 1e-12 at the boundary.
inline GridSpec default_grid_spec(int d) {
  switch (d) {
    case 1: return make_grid_spec(1, 256, 8.0);
    case 2: return make_grid_spec(2, 128, 6.0);
    case 3: return make_grid_spec(3, 64, 5.0);
    default: throw domain_error("default_grid_spec: d must be 1, 2 or 3");
  }
}

/// Immutable complex samples, row-major with axis 0 slowest; sample k sits at
/// -L + k * spacing on every axis.
class GridFunction {
 public:
  GridFunction(GridSpec spec, std::vector<complex> values)
      : spec_(spec), values_(std::move(values)) {
    if (values_.size() != spec_.size()) {
      throw size_error("GridFunction: expected " + std::to_string(spec_.size()) + " samples, got " +
                       std::to_string(values_.size()));
    }
    for (const auto& v : values_) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw domain_error("GridFunction: non-finite sample");
      }
    }
  }

  const GridSpec& spec() const { return spec_; }
  std::span<const complex> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const complex& operator[](std::size_t i) const { return values_[i]; }

  std::array<int, 3> index(std::size_t flat) const {
    std::array<int, 3> k{0, 0, 0};
    for (int axis = spec_.d - 1; axis >= 0; --axis) {
      k[axis] = static_cast<int>(flat % spec_.n);
      flat /= spec_.n;
    }
    return k;
  }

  Point point(std::size_t flat) const {
    const auto k = index(flat);
    Point x{0.0, 0.0, 0.0};
    for (int axis = 0; axis < spec_.d; ++axis) x[axis] = spec_.coordinate(k[axis]);
    return x;
  }

  double radius(std::size_t flat) const {
    const auto x = point(flat);
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  }

 private:
  GridSpec spec_;
  std::vector<complex> values_;
};

/// Samples a pointwise generator; coordinates beyond d are passed as 0.
template <class Generator>
GridFunction sample(Generator&& generator, const GridSpec& spec) {
  std::vector<complex> values(spec.size());
  std::array<int, 3> k{0, 0, 0};
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    Point x{0.0, 0.0, 0.0};
    for (int axis = 0; axis < spec.d; ++axis) x[axis] = spec.coordinate(k[axis]);
    values[flat] = complex(generator(x));
    for (int axis = spec.d - 1; axis >= 0; --axis) {
      if (++k[axis] < spec.n) break;
      k[axis] = 0;
    }
  }
  return GridFunction(spec, std::move(values));
}

/// Boundary diagnostics of the last transform.
struct TransformReport {
  double boundary_ratio = 0.0;          // max |f| on the outer sample layer / max |f|
  double boundary_mass_fraction = 0.0;  // share of sum |f|^2 on that layer
  bool warned = false;                  // boundary_ratio above 1e-12
};

namespace detail {

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

struct FftwPlanDestroy {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(p);
  }
};

inline bool on_boundary(const std::array<int, 3>& k, int d, int n) {
  for (int axis = 0; axis < d; ++axis) {
    if (k[axis] == 0 || k[axis] == n - 1) return true;
  }
  return false;
}

// (-1)^{k_0 + ... + k_{d-1}}
inline double checkerboard(std::size_t flat, int d, int n) {
  int parity = 0;
  for (int axis = 0; axis < d; ++axis) {
    parity += static_cast<int>(flat % n);
    flat /= n;
  }
  return (parity % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace detail

inline constexpr double boundary_warn_ratio = 1e-12;
inline constexpr double boundary_error_fraction = 1e-6;

inline TransformReport boundary_report(const GridFunction& f) {
  const auto& spec = f.spec();
  double peak = 0.0;
  double edge_peak = 0.0;
  double total = 0.0;
  double edge = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double m = std::abs(f[i]);
    peak = std::max(peak, m);
    total += m * m;
    if (detail::on_boundary(f.index(i), spec.d, spec.n)) {
      edge_peak = std::max(edge_peak, m);
      edge += m * m;
    }
  }
  TransformReport r;
  if (peak > 0.0) {
    r.boundary_ratio = edge_peak / peak;
    r.boundary_mass_fraction = edge / total;
  }
  r.warned = r.boundary_ratio > boundary_warn_ratio;
  return r;
}

/// Samples of the continuous transform on spec().dual(). Throws
/// transform_error when more than 1e-6 of the L^2 mass sits on the boundary.
inline GridFunction fourier_transform(const GridFunction& f, TransformReport* report = nullptr) {
  const auto check = boundary_report(f);
  if (report) *report = check;
  if (check.boundary_mass_fraction > boundary_error_fraction) {
    throw transform_error("fourier_transform: boundary carries " +
                          std::to_string(check.boundary_mass_fraction) +
                          " of the L2 mass; enlarge the domain");
  }
  const auto& spec = f.spec();
  const std::size_t total = f.size();
  std::unique_ptr<fftw_complex, detail::FftwFree> buffer(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total)));
  if (!buffer) throw std::bad_alloc();

  std::unique_ptr<fftw_plan_s, detail::FftwPlanDestroy> plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    std::array<int, 3> dims{spec.n, spec.n, spec.n};
    plan.reset(fftw_plan_dft(spec.d, dims.data(), buffer.get(), buffer.get(), FFTW_FORWARD,
                             FFTW_ESTIMATE));
  }
  if (!plan) throw transform_error("fourier_transform: FFTW plan creation failed");

  auto* data = reinterpret_cast<complex*>(buffer.get());
  for (std::size_t i = 0; i < total; ++i) data[i] = detail::checkerboard(i, spec.d, spec.n) * f[i];
  fftw_execute(plan.get());

  // n is a multiple of 4, so the constant phase e^{-2 pi i d n/4} is 1.
  const double scale = spec.cell_volume();
  std::vector<complex> out(total);
  for (std::size_t i = 0; i < total; ++i) out[i] = scale * detail::checkerboard(i, spec.d, spec.n) * data[i];
  return GridFunction(spec.dual(), std::move(out));
}

/// Sample-wise f(-x): index k -> (n - k) mod n on every axis.
inline GridFunction reflect(const GridFunction& f) {
  const auto& spec = f.spec();
  std::vector<complex> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto k = f.index(i);
    std::size_t flat = 0;
    for (int axis = 0; axis < spec.d; ++axis) flat = flat * spec.n + (spec.n - k[axis]) % spec.n;
    out[flat] = f[i];
  }
  return GridFunction(spec, std::move(out));
}

/// Riemann sum (sum |x_k|^{p w} |f_k|^p h^d)^{1/p}; p = inf gives max |x_k|^w |f_k|.
inline double grid_weighted_norm(const GridFunction& f, double p, double weight_exponent = 0.0) {
  if (!(p >= 1.0)) throw domain_error("grid_weighted_norm: need p >= 1");
  if (!(weight_exponent >= 0.0)) throw domain_error("grid_weighted_norm: weight must be >= 0");
  if (std::isinf(p)) {
    double peak = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      double v = std::abs(f[i]);
      if (weight_exponent != 0.0 && v != 0.0) v *= std::pow(f.radius(i), weight_exponent);
      peak = std::max(peak, v);
    }
    return peak;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double m = std::abs(f[i]);
    if (m == 0.0) continue;
    double term = (p == 2.0) ? m * m : std::pow(m, p);
    if (weight_exponent != 0.0) term *= std::pow(f.radius(i), p * weight_exponent);
    sum += term;
  }
  return std::pow(sum * f.spec().cell_volume(), 1.0 / p);
}

/// sum over |x_k| > radius of |f_k|^a h^d.
inline double grid_mass_outside(const GridFunction& f, double a, double radius) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.radius(i) > radius) sum += std::pow(std::abs(f[i]), a);
  }
  return sum * f.spec().cell_volume();
}

inline void require_nonzero(const GridFunction& f, const char* where) {
  for (const auto& v : f.values()) {
    if (v != complex(0.0, 0.0)) return;
  }
  throw domain_error(std::string(where) + ": zero function");
}

/// |‖f‖₂ - ‖fhat‖₂| / ‖f‖₂
inline double plancherel_defect(const GridFunction& f) {
  require_nonzero(f, "plancherel_defect");
  const double n = grid_weighted_norm(f, 2.0);
  const double nhat = grid_weighted_norm(fourier_transform(f), 2.0);
  return std::abs(n - nhat) / n;
}

/// ‖f‖_a ‖fhat‖_a / (‖f‖_p ‖fhat‖_p); at least 1 for admissible (a, p).
inline double primary_up_defect(const GridFunction& f, const GridFunction& fhat, double a, double p) {
  if (!primary_up_admissible(a, p)) {
    throw domain_error("primary_up_defect: (a, p) = (" + std::to_string(a) + ", " +
                       std::to_string(p) + ") is not admissible");
  }
  return grid_weighted_norm(f, a) * grid_weighted_norm(fhat, a) /
         (grid_weighted_norm(f, p) * grid_weighted_norm(fhat, p));
}

inline double primary_up_defect(const GridFunction& f, double a, double p) {
  if (!primary_up_admissible(a, p)) {
    throw domain_error("primary_up_defect: (a, p) is not admissible");
  }
  return primary_up_defect(f, fourier_transform(f), a, p);
}

/// ‖fhat‖_{a'} / ‖f‖_a for a in (1, 2]; at most 1 by Hausdorff-Young.
inline double hausdorff_young_ratio(const GridFunction& f, const GridFunction& fhat, double a) {
  if (!(a > 1.0 && a <= 2.0)) throw domain_error("hausdorff_young_ratio: need 1 < a <= 2");
  const double conjugate = a / (a - 1.0);
  return grid_weighted_norm(fhat, conjugate) / grid_weighted_norm(f, a);
}

/// Sum of three shifted Gaussians with random centers in [-1, 1]^d, rates in
/// [0.6, 1.6] and complex coefficients of modulus in [0.5, 1.5].
class RandomBump {
 public:
  struct Component {
    Point center{0.0, 0.0, 0.0};
    double rate = 1.0;
    complex coefficient{1.0, 0.0};
  };

  RandomBump(int d, std::uint64_t seed) : d_(d) {
    if (d < 1 || d > 3) throw domain_error("RandomBump: d must be 1, 2 or 3");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> rate(0.6, 1.6);
    std::uniform_real_distribution<double> modulus(0.5, 1.5);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (auto& c : components_) {
      for (int axis = 0; axis < d; ++axis) c.center[axis] = unit(rng);
      c.rate = rate(rng);
      c.coefficient = std::polar(modulus(rng), angle(rng));
    }
  }

  int dimension() const { return d_; }
  std::span<const Component> components() const { return components_; }

  complex operator()(const Point& x) const {
    complex sum{0.0, 0.0};
    for (const auto& c : components_) {
      double r2 = 0.0;
      for (int axis = 0; axis < d_; ++axis) r2 += (x[axis] - c.center[axis]) * (x[axis] - c.center[axis]);
      sum += c.coefficient * std::exp(-std::numbers::pi * c.rate * r2);
    }
    return sum;
  }

  /// Closed-form transform at frequency xi.
  complex transform(const Point& xi) const {
    complex sum{0.0, 0.0};
    for (const auto& c : components_) {
      double k2 = 0.0;
      double phase = 0.0;
      for (int axis = 0; axis < d_; ++axis) {
        k2 += xi[axis] * xi[axis];
        phase += c.center[axis] * xi[axis];
      }
      sum += c.coefficient * std::pow(c.rate, -0.5 * d_) * std::exp(-std::numbers::pi * k2 / c.rate) *
             std::polar(1.0, -2.0 * std::numbers::pi * phase);
    }
    return sum;
  }

 private:
  int d_;
  std::array<Component, 3> components_{};
};

}  // namespace uplab
