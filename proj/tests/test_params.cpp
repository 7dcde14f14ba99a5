#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "uplab/params.hpp"
#include "uplab/radial.hpp"

using namespace uplab;

namespace {

// Independent re-derivation of a feasible Cowling-Price tuple: draw d, p,
// theta above the threshold, then q and phi from homogeneity.
CpExponents random_feasible(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (true) {
    CpExponents e;
    e.d = dim(rng);
    e.p = 1.05 + 6.0 * unit(rng);
    e.q = 1.05 + 6.0 * unit(rng);
    const double floor_p = std::max(0.0, 0.5 - 1.0 / e.p) * e.d;
    e.theta = floor_p + 0.02 + 2.0 * unit(rng);
    e.phi = e.d * (1.0 / e.p + e.theta / e.d - 1.0 / e.q);
    if (e.phi > 0.0 && cp_feasible(e)) return e;
  }
}

}  // namespace

TEST(L2Params, OneDimensionalConstants) {
  const auto w = l2_params(1);
  EXPECT_EQ(w.a, 1.0);
  EXPECT_EQ(w.r, 2.0);
  EXPECT_EQ(w.s, 2.0);
  EXPECT_EQ(w.c_d, 0.125);
  EXPECT_EQ(w.bound, 1.0 / 4096.0);
  EXPECT_NEAR(w.log_bound, std::log(1.0 / 4096.0), 1e-13);
  EXPECT_NEAR(std::exp(w.log_single_bound), 1.0 / 64.0, 1e-16);
}

TEST(L2Params, ThreeDimensions) {
  const auto w = l2_params(3);
  EXPECT_DOUBLE_EQ(w.a, 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(w.r, 1.5);
  EXPECT_DOUBLE_EQ(w.s, 3.0);
  const double v3 = 4.0 * std::numbers::pi / 3.0;
  const double c3 = std::cbrt(0.125 / v3);
  EXPECT_NEAR(w.c_d / c3, 1.0, 1e-14);
  const double bound = std::pow(c3 / (4.0 * std::numbers::pi), 1.0) / 16.0;  // exponent 4/(d+1) = 1
  EXPECT_NEAR(w.bound / bound, 1.0, 1e-14);
}

TEST(L2Params, ExponentIdentities) {
  for (int d = 1; d <= 200; ++d) {
    const auto w = l2_params(d);
    EXPECT_NEAR(w.a * w.s, d + 1.0, 1e-13) << d;
    EXPECT_NEAR(w.a * w.r, 2.0, 1e-14) << d;
    EXPECT_NEAR(1.0 / w.r + 1.0 / w.s, 1.0, 1e-14) << d;
    const double half = std::exp((d * w.log_c_d + dimension_constants(d).log_ball_volume) / w.s);
    EXPECT_NEAR(half, 0.5, 1e-12) << d;
    EXPECT_NEAR(std::log(w.bound), w.log_bound, 1e-10 * std::max(1.0, std::abs(w.log_bound))) << d;
  }
}

TEST(LpEpsilon, Examples) {
  EXPECT_DOUBLE_EQ(lp_epsilon(2, 2.0), 2.0);
  EXPECT_DOUBLE_EQ(lp_epsilon(3, 2.5), 1.0);
  EXPECT_DOUBLE_EQ(lp_epsilon(1, 1.5), 3.0);
  EXPECT_THROW(lp_epsilon(3, 3.0), infeasible_error);
  EXPECT_THROW(lp_epsilon(2, 4.5), infeasible_error);
  EXPECT_THROW(lp_epsilon(2, 1.0), domain_error);
}

TEST(LpEpsilon, SatisfiesBothConstraints) {
  for (int d = 1; d <= 20; ++d) {
    const double top = (d == 1) ? 12.0 : 2.0 * d / (d - 1.0);
    for (double p = 1.05; p < top - 1e-3; p += 0.05) {
      const double e = lp_epsilon(d, p);
      EXPECT_GT(e, 0.0);
      EXPECT_GT((d + e) * p / (d + e + p), 1.0) << d << ' ' << p;
      EXPECT_LE(p, 2.0 * (d + e) / (d - 1.0 + e) * (1.0 + 1e-14)) << d << ' ' << p;
    }
  }
}

TEST(LpParams, OneDimensionalL2Instance) {
  const auto w = lp_params(1, 2.0);
  EXPECT_DOUBLE_EQ(w.epsilon, 2.0);
  EXPECT_DOUBLE_EQ(w.a, 6.0 / 5.0);
  EXPECT_DOUBLE_EQ(w.r, 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(w.s, 5.0 / 2.0);
}

TEST(LpParams, AdmissibleAndBelowGaussian) {
  for (int d = 1; d <= 12; ++d) {
    const double top = (d == 1) ? 8.0 : 2.0 * d / (d - 1.0);
    for (double p = 1.1; p < top; p += 0.1) {
      const auto w = lp_params(d, p);
      EXPECT_TRUE(primary_up_admissible(w.a, w.p)) << d << ' ' << p;
      EXPECT_NEAR(w.a * w.r, p, 1e-13);
      EXPECT_NEAR(1.0 / w.r + 1.0 / w.s, 1.0, 1e-14);
      EXPECT_NEAR(std::exp((d * w.log_c_d + dimension_constants(d).log_ball_volume) / w.s), 0.5, 1e-12);
      EXPECT_LT(w.log_bound, log_gaussian_uncertainty_product(d, p)) << d << ' ' << p;
    }
  }
  const auto w = lp_params(2, 2.0);
  EXPECT_GT(w.bound, 0.0);
  EXPECT_LT(w.bound, 1.0 / std::pow(2.0 * std::numbers::pi, 2.0));
}

TEST(LpParams, BothL2ChoicesBelowSharp) {
  for (int d = 1; d <= 200; ++d) {
    const double sharp = log_gaussian_uncertainty_product(d, 2.0);
    EXPECT_LT(l2_params(d).log_bound, sharp) << d;
    EXPECT_LT(lp_params(d, 2.0).log_bound, sharp) << d;
  }
}

TEST(PrimaryAdmissible, Examples) {
  EXPECT_TRUE(primary_up_admissible(4.0 / 3.0, 2.0));
  EXPECT_FALSE(primary_up_admissible(1.0, 2.0));
  EXPECT_FALSE(primary_up_admissible(1.5, 4.0));
  EXPECT_TRUE(primary_up_admissible(4.0 / 3.0, 4.0));  // 1/a + 1/p = 1 exactly
  EXPECT_FALSE(primary_up_admissible(2.0, 2.0));
}

TEST(LpRegime, Classification) {
  EXPECT_EQ(lp_regime(3, 2.0), LpRegime::subcritical);
  EXPECT_EQ(lp_regime(3, 3.0), LpRegime::critical);
  EXPECT_EQ(lp_regime(2, 5.0), LpRegime::supercritical);
  EXPECT_EQ(lp_regime(1, 100.0), LpRegime::subcritical);
  EXPECT_EQ(lp_regime(2, 4.0), LpRegime::critical);
}

TEST(CpFeasible, Examples) {
  EXPECT_TRUE(cp_feasible({1, 2.0, 2.0, 1.0, 1.0}));
  EXPECT_FALSE(cp_feasible({2, 4.0, 4.0, 0.5, 0.5}));
  EXPECT_FALSE(cp_feasible({2, 2.0, 2.0, 1.0, 2.0}));
}

TEST(CpDelta, HeisenbergWindow) {
  const CpExponents e{1, 2.0, 2.0, 1.0, 1.0};
  const auto w = cp_delta_window(e);
  EXPECT_DOUBLE_EQ(w.lower, 0.75);
  EXPECT_DOUBLE_EQ(w.upper, 1.5);
  EXPECT_DOUBLE_EQ(cp_delta(e), 9.0 / 8.0);
}

TEST(CpDelta, WindowMatchesBruteForceScan) {
  // d = 2, p = 3, theta = phi: homogeneity forces q = p.
  const CpExponents e{2, 3.0, 3.0, 0.8, 0.8};
  ASSERT_TRUE(cp_feasible(e));
  const double d = e.d;
  auto inside = [&](double delta) {
    const double base = 1.0 + d / (e.phi * e.q);
    const double lower = base - (1.0 - 1.0 / e.p) * base * d / e.theta;
    const double third = base - (0.5 - 1.0 / e.p) * base * d / e.theta;
    return delta > 0.0 && delta > lower && delta < base && delta < 1.0 + d / (e.theta * e.p) &&
           delta < third;
  };
  double first = -1.0;
  double last = -1.0;
  for (int i = 1; i < 400000; ++i) {
    const double delta = i * 1e-5;
    if (inside(delta)) {
      if (first < 0.0) first = delta;
      last = delta;
    }
  }
  const auto w = cp_delta_window(e);
  EXPECT_NEAR(first, w.lower, 1.1e-5);
  EXPECT_NEAR(last, w.upper, 1.1e-5);
  EXPECT_TRUE(inside(cp_delta(e)));
}

TEST(CpParams, HeisenbergSpecialization) {
  const auto c = cp_params({1, 2.0, 2.0, 1.0, 1.0});
  EXPECT_NEAR(c.epsilon, 3.0, 1e-14);
  EXPECT_NEAR(c.epsilon_tilde, 3.0, 1e-14);
  EXPECT_NEAR(c.a, 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.a_tilde, 4.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(c.s1, c.s1_tilde);
}

TEST(CpParams, SymmetricInputs) {
  for (int d = 1; d <= 5; ++d) {
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
      const double theta = std::max(0.0, 0.5 - 1.0 / p) * d + 0.3;
      const auto c = cp_params({d, p, p, theta, theta});
      EXPECT_DOUBLE_EQ(c.epsilon, c.epsilon_tilde);
      EXPECT_DOUBLE_EQ(c.s1, c.s1_tilde);
    }
  }
}

TEST(CpParams, IdentitiesOnRandomFeasibleTuples) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const auto e = random_feasible(rng);
    const auto c = cp_params(e);
    const double d = e.d;
    EXPECT_NEAR(c.a, c.a_tilde, 1e-12);
    EXPECT_NEAR(c.b * c.s1, d + c.epsilon, 1e-12 * (d + c.epsilon));
    EXPECT_NEAR(c.b_tilde * c.s1_tilde, d + c.epsilon_tilde, 1e-12 * (d + c.epsilon_tilde));
    EXPECT_NEAR(c.epsilon * e.theta / (d + c.epsilon), c.epsilon_tilde * e.phi / (d + c.epsilon_tilde), 1e-12);
    EXPECT_NEAR(c.b, c.a * e.theta, 1e-12);
    EXPECT_NEAR(c.b_tilde, c.a * e.phi, 1e-12);
    const auto w = cp_delta_window(e);
    EXPECT_GT(c.delta, w.lower);
    EXPECT_LT(c.delta, w.upper);
    EXPECT_LT(c.delta, 1.0 + d / (e.phi * e.q));
    EXPECT_GT(c.a, 1.0);
    EXPECT_LT(c.a, 2.0);
  }
}

TEST(CpParams, RejectsInfeasible) {
  EXPECT_THROW(cp_params({2, 8.0, 8.0, 0.1, 0.1}), infeasible_error);
  EXPECT_THROW(cp_delta({2, 8.0, 8.0, 0.1, 0.1}), infeasible_error);
}

TEST(Threshold, OneDimensionalFormula) {
  const auto w = l2_params(1);
  EXPECT_DOUBLE_EQ(compute_threshold(3.0, 2.0, w), 0.125 * 2.25);
  EXPECT_DOUBLE_EQ(compute_threshold(1.0, 1.0, w), w.c_d);
  EXPECT_THROW(compute_threshold(0.0, 1.0, w), domain_error);
}

TEST(Threshold, GaussianHalfMassOutside) {
  // d = 2, p = 2, standard Gaussian: ||g||_a^a = a^{-1}, mass of e^{-pi a r^2}
  // outside radius T is e^{-pi a T^2} / a.
  for (const auto& w : {l2_params(2), lp_params(2, 2.0)}) {
    const double norm_a = std::pow(w.a, -1.0 / w.a);
    const double norm_2 = std::pow(2.0, -0.5);
    const double t = compute_threshold(norm_a, norm_2, w);
    const auto outside = radial_integral(RadialProfile::gaussian(w.a), 2, t, infinity);
    EXPECT_GE(outside, 0.5 / w.a);
  }
}
