#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "uplab/counterexamples.hpp"
#include "uplab/grid.hpp"
#include "uplab/params.hpp"
#include "uplab/radial.hpp"

using namespace uplab;

namespace {

constexpr double pi = std::numbers::pi;

double r2(const Point& x) { return x[0] * x[0] + x[1] * x[1] + x[2] * x[2]; }

GridFunction standard_gaussian(const GridSpec& spec) {
  return sample([](const Point& x) { return std::exp(-pi * r2(x)); }, spec);
}

GridFunction gc_on_grid(double c, int d) {
  const auto g = gc_profile(c, d);
  return sample([&](const Point& x) { return g(std::sqrt(r2(x))); }, gc_grid_spec(c, d));
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

TEST(GridSpec, Validation) {
  EXPECT_THROW(make_grid_spec(4, 64, 1.0), domain_error);
  EXPECT_THROW(make_grid_spec(1, 8, 1.0), domain_error);
  EXPECT_THROW(make_grid_spec(1, 48, 1.0), domain_error);
  EXPECT_THROW(make_grid_spec(1, 64, 0.0), domain_error);
  const auto s = make_grid_spec(2, 64, 4.0);
  EXPECT_DOUBLE_EQ(s.spacing(), 0.125);
  EXPECT_DOUBLE_EQ(s.dual().spacing(), 1.0 / 8.0);
  EXPECT_DOUBLE_EQ(s.dual().half_width, 4.0);
  EXPECT_EQ(s.size(), 4096u);
}

TEST(GridFunction, RejectsBadSamples) {
  const auto s = make_grid_spec(1, 16, 1.0);
  EXPECT_THROW(GridFunction(s, std::vector<complex>(15)), size_error);
  std::vector<complex> v(16, 1.0);
  v[3] = complex(std::nan(""), 0.0);
  EXPECT_THROW(GridFunction(s, v), domain_error);
  EXPECT_THROW(sample([](const Point&) { return 1.0 / 0.0; }, s), domain_error);
}

TEST(Sample, ConstantAndOrigin) {
  const auto ones = sample([](const Point&) { return 1.0; }, make_grid_spec(1, 16, 1.0));
  for (const auto& v : ones.values()) EXPECT_EQ(v, complex(1.0, 0.0));
  const auto g = standard_gaussian(default_grid_spec(2));
  const std::size_t origin = 64 * 128 + 64;
  EXPECT_EQ(g.point(origin)[0], 0.0);
  EXPECT_EQ(g.point(origin)[1], 0.0);
  EXPECT_EQ(g[origin], complex(1.0, 0.0));
  EXPECT_DOUBLE_EQ(std::abs(g[origin + 3]), std::abs(g[origin + 3 * 128]));
}

TEST(Sample, LatticeTranslation) {
  const auto spec = make_grid_spec(2, 64, 2.0);  // spacing 1/16
  auto bump = [](const Point& x) { return std::exp(-8.0 * pi * r2(x)); };
  const auto f = sample(bump, spec);
  const auto g = sample([&](const Point& x) { return bump({x[0] - 1.0, x[1] + 0.5, 0.0}); }, spec);
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      const int si = i - 16;
      const int sj = j + 8;
      if (si < 0 || sj >= 64) continue;
      EXPECT_EQ(g[i * 64 + j], f[si * 64 + sj]);
    }
  }
}

TEST(FourierTransform, GaussianSelfDual) {
  const auto g = standard_gaussian(default_grid_spec(1));
  const auto gh = fourier_transform(g);
  EXPECT_EQ(gh.spec(), g.spec().dual());
  EXPECT_LE(sup_distance(g, gh), 1e-6);
  for (int d = 2; d <= 3; ++d) {
    const auto f = standard_gaussian(default_grid_spec(d));
    TransformReport report;
    const auto fh = fourier_transform(f, &report);
    EXPECT_FALSE(report.warned);
    EXPECT_LE(sup_distance(standard_gaussian(f.spec().dual()), fh), 1e-6);
  }
}

TEST(FourierTransform, MatchesClosedFormOfShiftedBumps) {
  for (int d = 1; d <= 3; ++d) {
    const RandomBump b(d, 99);
    const auto f = sample(b, default_grid_spec(d));
    const auto fh = fourier_transform(f);
    double err = 0.0;
    for (std::size_t i = 0; i < fh.size(); ++i) err = std::max(err, std::abs(fh[i] - b.transform(fh.point(i))));
    EXPECT_LE(err, 1e-8) << d;
  }
}

TEST(FourierTransform, GcIsSelfDual) {
  const auto g = gc_profile(2.0, 1);
  const auto fh = fourier_transform(gc_on_grid(2.0, 1));
  double err = 0.0;
  for (std::size_t i = 0; i < fh.size(); ++i) err = std::max(err, std::abs(fh[i] - g(std::abs(fh.point(i)[0]))));
  EXPECT_LE(err, 1e-6);
}

TEST(FourierTransform, RoundTripReflects) {
  for (int d = 1; d <= 3; ++d) {
    const auto f = sample(RandomBump(d, 5), default_grid_spec(d));
    const auto back = fourier_transform(fourier_transform(f));
    EXPECT_EQ(back.spec(), f.spec());
    EXPECT_LE(sup_distance(back, reflect(f)), 1e-6) << d;
  }
}

TEST(FourierTransform, BoundaryMassIsAnError) {
  const auto wide = sample([](const Point& x) { return std::exp(-0.05 * pi * r2(x)); }, make_grid_spec(1, 64, 4.0));
  EXPECT_THROW(fourier_transform(wide), transform_error);
  const auto edge = sample([](const Point& x) { return std::exp(-pi * 0.55 * r2(x)); }, make_grid_spec(1, 64, 3.0));
  TransformReport report;
  EXPECT_NO_THROW(fourier_transform(edge, &report));
  EXPECT_TRUE(report.warned);
}

TEST(WeightedNorm, RiemannSums) {
  const auto ones = sample([](const Point&) { return 1.0; }, make_grid_spec(1, 1024, 1.0));
  EXPECT_NEAR(grid_weighted_norm(ones, 1.0), 2.0, 1e-3);
  const auto g = standard_gaussian(default_grid_spec(1));
  EXPECT_NEAR(grid_weighted_norm(g, 2.0, 1.0), std::sqrt(1.0 / (4.0 * pi * std::sqrt(2.0))), 1e-10);
  EXPECT_DOUBLE_EQ(grid_weighted_norm(g, infinity), 1.0);
  for (int d = 1; d <= 3; ++d) {
    const auto f = standard_gaussian(default_grid_spec(d));
    // |x|^p is smooth only for p = 2; the kink at 0 costs accuracy otherwise.
    for (auto [p, tol] : {std::pair{1.2, 2e-3}, {2.0, 1e-8}, {3.0, 2e-5}}) {
      const double exact = radial_weighted_norm(RadialProfile::gaussian(), d, p, 1.0);
      EXPECT_NEAR(grid_weighted_norm(f, p, 1.0) / exact, 1.0, tol) << d << ' ' << p;
    }
  }
}

TEST(Plancherel, DefectIsTiny) {
  EXPECT_LE(plancherel_defect(standard_gaussian(default_grid_spec(2))), 1e-8);
  for (int seed = 1; seed <= 5; ++seed) {
    EXPECT_LE(plancherel_defect(sample(RandomBump(1 + seed % 3, seed), default_grid_spec(1 + seed % 3))), 1e-8);
  }
  const auto g3 = gc_on_grid(3.0, 1);
  EXPECT_LE(plancherel_defect(g3), 1e-6);
  const double exact = radial_weighted_norm(gc_profile(3.0, 1), 1, 2.0, 0.0);
  EXPECT_NEAR(grid_weighted_norm(g3, 2.0) / exact, 1.0, 1e-8);
  EXPECT_THROW(plancherel_defect(sample([](const Point&) { return 0.0; }, make_grid_spec(1, 16, 1.0))),
               domain_error);
}

TEST(PrimaryUp, GaussianQuotients) {
  const auto g = standard_gaussian(default_grid_spec(1));
  // ‖g‖_a = a^{-1/(2a)} and g is self-dual: quotient (‖g‖_a / ‖g‖_p)^2.
  const double a = 4.0 / 3.0;
  const double expected = std::pow(std::pow(a, -0.5 / a) / std::pow(2.0, -0.25), 2.0);
  const double q = primary_up_defect(g, a, 2.0);
  EXPECT_NEAR(q / expected, 1.0, 1e-9);
  EXPECT_GE(q, 1.0);
  EXPECT_NEAR(primary_up_defect(g, 1.999, 2.0), 1.0, 1e-3);
  EXPECT_THROW(primary_up_defect(g, 1.5, 4.0), domain_error);
}

TEST(PrimaryUp, GcAboveOne) {
  const auto f = gc_on_grid(4.0, 1);
  EXPECT_GE(primary_up_defect(f, 6.0 / 5.0, 2.0), 1.0 - 1e-6);
}

TEST(HausdorffYoung, RandomBumps) {
  for (int seed = 1; seed <= 6; ++seed) {
    const int d = 1 + seed % 3;
    const auto f = sample(RandomBump(d, seed), default_grid_spec(d));
    const auto fh = fourier_transform(f);
    for (double a : {1.1, 1.5, 2.0}) EXPECT_LE(hausdorff_young_ratio(f, fh, a), 1.0 + 1e-6);
    const double a = 2.0 * (d + 1.0) / (d + 3.0);
    if (a > 1.0) {
      EXPECT_GE(primary_up_defect(f, fh, a, 2.0), 1.0 - 1e-6);
    }
  }
}

TEST(MassSplit, HalfOfAMassLiesBeyondThreshold) {
  for (int d = 1; d <= 3; ++d) {
    const auto w = l2_params(d);
    for (int seed : {3, 4}) {
      const auto f = sample(RandomBump(d, seed), default_grid_spec(d));
      const double na = grid_weighted_norm(f, w.a);
      const double t = compute_threshold(na, grid_weighted_norm(f, 2.0), w);
      EXPECT_GE(grid_mass_outside(f, w.a, t), (0.5 - 1e-6) * std::pow(na, w.a));
    }
  }
}
