#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nlslab/error.hpp"
#include "nlslab/functionals.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace nlslab;
using testing_support::corpus;
using testing_support::default_grid;
using testing_support::ground_state;
using testing_support::rel;

namespace {
const double kPi = std::numbers::pi;
}

TEST(Snapshot, GaussianWithPotential) {
  const RadialGrid g(12.0, 2048);
  const auto u = RadialField::sample(g, [](double r) { return cplx(std::exp(-r * r)); });
  const double A = 0.7, s = 1.3;
  const auto s0 = snapshot(u, PotentialSpec::gaussian(A, s), 3.0, 0.25);
  EXPECT_EQ(s0.t, 0.25);
  EXPECT_LT(rel(s0.mass, oracle::kGaussMass), 1e-8);
  EXPECT_LT(rel(s0.grad_sq, oracle::kGaussGradSq), 1e-6);
  EXPECT_LT(rel(s0.lp1, oracle::kGaussLp1P3), 1e-8);
  EXPECT_LT(rel(s0.pot_term, A * std::pow(kPi / (2.0 + 1.0 / (s * s)), 1.5)), 1e-8);
  EXPECT_DOUBLE_EQ(s0.h_half_sq, s0.grad_sq + s0.pot_term);
  EXPECT_NEAR(s0.energy_v, 0.5 * s0.grad_sq + 0.5 * s0.pot_term - s0.lp1 / 4.0, 1e-13);
  EXPECT_NEAR(s0.k_functional, s0.grad_sq - 0.75 * s0.lp1 + s0.pot_term, 1e-13);
}

TEST(Snapshot, RejectsForeignSamples) {
  const RadialGrid g(12.0, 256);
  const auto u = RadialField::zeros(g);
  EXPECT_THROW(snapshot(u, sample(PotentialSpec::zero(), RadialGrid(12.0, 128)), 3.0), ValidationError);
}

TEST(ThresholdProducts, CurveOfLambdaQ) {
  const GroundState& gs = ground_state(3.0);
  for (const auto& pt : oracle::kThresholdCurve) {
    const auto s = snapshot(gs.profile.scaled(pt.lambda), PotentialSpec::zero(), 3.0);
    const auto r = threshold_products(s, gs);
    EXPECT_NEAR(r.me_ratio, pt.me_ratio, 1e-4) << pt.lambda;
    EXPECT_NEAR(r.grad_ratio, pt.grad_ratio, 1e-6) << pt.lambda;
    EXPECT_DOUBLE_EQ(r.h_ratio, r.grad_ratio);
    EXPECT_FALSE(r.negative_energy);
  }
}

TEST(ThresholdProducts, NegativeEnergyFlag) {
  const GroundState& gs = ground_state(3.0);
  const auto s = snapshot(gs.profile.scaled(1.5), PotentialSpec::zero(), 3.0);
  const auto r = threshold_products(s, gs);
  EXPECT_TRUE(r.negative_energy);
  EXPECT_LT(r.me_ratio, 0.0);
}

TEST(ThresholdProducts, MassCriticalUsesPlainQuotients) {
  const GroundState& gs = ground_state(7.0 / 3.0);
  const auto s = snapshot(gs.profile.scaled(0.9), PotentialSpec::zero(), 7.0 / 3.0);
  const auto r = threshold_products(s, gs);
  EXPECT_NEAR(r.grad_ratio, std::sqrt(s.grad_sq / gs.grad_sq), 1e-12);
  EXPECT_GT(r.me_ratio, 0.0);
}

TEST(Coercivity, Landmarks) {
  for (double p : {2.5, 3.0, 3.5, 4.0, 4.5}) {
    EXPECT_NEAR(coercivity_g(0.0, p), 0.0, 1e-12);
    EXPECT_NEAR(coercivity_g(1.0, p), 1.0, 1e-12);
    const double y_max = std::pow(3.0 * (p - 1.0) / 4.0, 2.0 / (3.0 * p - 7.0));
    EXPECT_NEAR(coercivity_g(y_max, p), 0.0, 1e-12) << p;
  }
  for (double y : {0.3, 0.9, 1.2}) EXPECT_NEAR(coercivity_g(y, 3.0), 3.0 * y * y - 2.0 * y * y * y, 1e-12);
  EXPECT_NEAR(std::pow(3.0 * 3.0 / 4.0, 2.0 / 5.0), oracle::kCoercivityYmaxP4, 1e-14);
  EXPECT_THROW(coercivity_g(0.5, 7.0 / 3.0), ValidationError);
}

TEST(Coercivity, GapRootsAtCubic) {
  const auto above = coercivity_gap(3.0 * std::pow(1.1, 4) - 2.0 * std::pow(1.1, 6), 3.0, Side::Above);
  EXPECT_NEAR(above.y, oracle::kCoercivityAboveY, 1e-10);
  EXPECT_NEAR(above.delta_prime, 0.1, 1e-10);
  const auto below = coercivity_gap(3.0 * std::pow(0.9, 4) - 2.0 * std::pow(0.9, 6), 3.0, Side::Below);
  EXPECT_NEAR(below.y, oracle::kCoercivityBelowY, 1e-10);
  EXPECT_NEAR(below.delta_prime, 0.095, 1e-10);
  EXPECT_NEAR(coercivity_gap(0.5, 4.0, Side::Below).y, oracle::kCoercivityHalfP4, 1e-10);
}

TEST(Coercivity, GapRejectsThresholdAndAbove) {
  EXPECT_THROW(coercivity_gap(1.0, 3.0, Side::Below), ValidationError);
  EXPECT_THROW(coercivity_gap(0.5, 7.0 / 3.0, Side::Below), ValidationError);
}

TEST(Coercivity, ConstantAndTheta) {
  EXPECT_NEAR(coercivity_constant(0.1, 3.0), 6.0 * 0.1 / (4.0 * 0.8), 1e-15);
  EXPECT_NEAR(theta_q(3.0, 3.0), 2.0 * (3.0 - 4.0) / (4.0 * 1.0), 1e-15);
  EXPECT_NEAR(theta_q(4.0, 3.0), 0.0, 1e-15);
}

TEST(KFunctional, SignsOnEitherSide) {
  const GroundState& gs = ground_state(3.0);
  const auto below = snapshot(gs.profile.scaled(0.9), PotentialSpec::zero(), 3.0);
  EXPECT_GT(below.k_functional, 0.0);
  // For lambda Q at p = 3: k = lambda^2 (1 - lambda^2) ||grad Q||^2.
  EXPECT_LT(rel(below.k_functional, 0.81 * 0.19 * gs.grad_sq), 1e-6);
  const auto above = snapshot(gs.profile.scaled(1.1), PotentialSpec::zero(), 3.0);
  const double delta = k_functional_margin(above, gs);
  EXPECT_GT(delta, 0.0);
  EXPECT_LT(above.k_functional, -delta);
}

TEST(KFunctional, NonnegativeForCorpusBelowThreshold) {
  const GroundState& gs = ground_state(3.0);
  int checked = 0;
  for (const auto& f : corpus()) {
    const auto s = snapshot(f.field, PotentialSpec::zero(), 3.0);
    const auto r = threshold_products(s, gs);
    if (r.me_ratio < 1.0 && r.grad_ratio < 1.0 && !r.negative_energy) {
      EXPECT_GE(s.k_functional, 0.0) << f.name;
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(SharpGN, StrictOnCorpus) {
  const auto fields = corpus();
  ASSERT_EQ(fields.size(), 20u);
  for (double p : {7.0 / 3.0, 3.0, 4.0}) {
    const GroundState& gs = ground_state(p);
    for (const auto& f : fields) {
      const auto s = snapshot(f.field, PotentialSpec::zero(), p);
      EXPECT_LE(gn_quotient(s.lp1, s.mass, s.grad_sq, p), 0.99 * gs.cgn) << f.name << " p = " << p;
    }
  }
}

TEST(Hardy, HoldsOnCorpus) {
  for (const auto& f : corpus()) {
    for (double q : {0.0, 1.0, 2.0}) {
      const auto h = hardy_check(f.field, q);
      EXPECT_TRUE(h.pass) << f.name << " q = " << q;
      EXPECT_GE(h.rhs - h.lhs, -1e-8 * h.rhs) << f.name << " q = " << q;
    }
  }
}

TEST(Hardy, GaussianBreaksTheBoundAtHalf) {
  // The constant (2/(3-q))^q is below 1 for q < 1 and too small there; the
  // Hoelder interpolation of the q = 0 and q = 2 cases gives 2^q instead.
  const auto u = RadialField::sample(default_grid(), [](double r) { return cplx(std::exp(-r * r)); });
  const auto h = hardy_check(u, 0.5);
  EXPECT_FALSE(h.pass);
  EXPECT_LT(rel(h.lhs, oracle::kHardyGaussLhsHalf), 1e-6);  // r^{-1/2} weight at the origin
  EXPECT_LT(rel(h.rhs, oracle::kHardyGaussRhsHalf), 1e-8);
  for (const auto& f : corpus()) {
    const auto w = hardy_check(f.field, 0.5);
    EXPECT_LE(w.lhs, std::sqrt(2.0 / 0.8) * w.rhs * (1.0 + 1e-8)) << f.name;  // 2^q over (2/(3-q))^q
  }
}

TEST(Hardy, MassIdentityAtZero) {
  const auto h = hardy_check(corpus()[0].field, 0.0);
  EXPECT_NEAR(h.lhs, h.rhs, 1e-12 * h.rhs);
  EXPECT_THROW(hardy_check(corpus()[0].field, 2.5), ValidationError);
}

TEST(RadialSobolev, BoundedByStraussConstant) {
  for (double p : {3.0, 4.0}) {
    const double bound = std::pow(2.0 * kPi, -(p - 1.0) / 2.0);
    for (const auto& f : corpus()) {
      for (double R : {0.5, 2.0}) {
        const auto res = radial_sobolev_check(f.field, R, p);
        ASSERT_FALSE(res.zero_over_zero) << f.name;
        EXPECT_LE(res.quotient, bound * (1.0 + 1e-6)) << f.name << " R = " << R;
      }
    }
  }
}

TEST(RadialSobolev, DegenerateCases) {
  const RadialGrid g = default_grid();
  EXPECT_TRUE(radial_sobolev_check(RadialField::zeros(g), 2.0, 3.0).zero_over_zero);
  EXPECT_THROW(radial_sobolev_check(RadialField::zeros(g), 20.0, 3.0), ValidationError);
}
