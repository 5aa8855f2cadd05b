#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nlslab/error.hpp"
#include "nlslab/evolution.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace nlslab;
using testing_support::ground_state;
using testing_support::rel;

namespace {

// 32 / 4096 spacing with a power-of-two transform.
RadialGrid fast_grid() { return RadialGrid(32.0, 4095); }

cplx free_gaussian(double r, double t) {
  const cplx z(1.0, 4.0 * t);
  return std::pow(1.0 / z, 1.5) * std::exp(-r * r / z);
}

double sup_abs(const RadialField& u) {
  double m = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) m = std::max(m, std::abs(u[j]));
  return m;
}

}  // namespace

TEST(FreeEvolution, OracleMatchesClosedForm) {
  EXPECT_NEAR(free_gaussian(0.5, 1.0).real(), oracle::kFreeGaussRe, 1e-14);
  EXPECT_NEAR(free_gaussian(0.5, 1.0).imag(), oracle::kFreeGaussIm, 1e-14);
}

TEST(FreeEvolution, GaussianMatchesClosedFormInL2) {
  const RadialGrid g = testing_support::default_grid();
  const auto u0 = RadialField::sample(g, [](double r) { return cplx(std::exp(-r * r)); });
  EvolveConfig cfg;
  cfg.coupling = 0.0;
  cfg.dt0 = 0.01;
  cfg.t_end = 1.0;
  cfg.keep_fields = true;
  const auto tr = evolve(u0, PotentialSpec::zero(), 3.0, cfg);
  ASSERT_EQ(tr.terminal, Terminal::CompletedHorizon);
  EXPECT_NEAR(tr.terminal_time, 1.0, 1e-12);
  const RadialField& u = tr.fields.back();
  std::vector<double> err(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) err[j] = std::norm(u[j] - free_gaussian(g.node(j), 1.0));
  EXPECT_LE(std::sqrt(integrate3d(g, err)), 1e-4);
}

TEST(Soliton, StationaryModulus) {
  const RadialGrid g = fast_grid();
  const GroundState& gs = ground_state(3.0, g);
  // The standing wave is linearly unstable (rate about 5.5), so the O(dt^2)
  // splitting defect grows by e^11 before t = 2; dt = 1e-5 keeps it under 5e-4.
  EvolveConfig cfg;
  cfg.t_end = 2.0;
  cfg.dt0 = 1e-5;
  cfg.store_every = 4000;
  cfg.keep_fields = true;
  const auto tr = evolve(gs.profile, PotentialSpec::zero(), 3.0, cfg);
  ASSERT_EQ(tr.terminal, Terminal::CompletedHorizon);
  const double a0 = sup_abs(gs.profile);
  for (const auto& f : tr.fields) EXPECT_LT(std::abs(sup_abs(f) - a0) / a0, 5e-4);
  for (const auto& s : tr.snapshots) EXPECT_LT(rel(s.grad_sq, gs.grad_sq), 1e-3);
  // The phase rotates as e^{it}.
  const cplx z = tr.fields.back()[0] / gs.profile[0];
  EXPECT_NEAR(std::arg(z), std::remainder(2.0, 2.0 * std::numbers::pi), 1e-3);
}

TEST(Strang, SecondOrderInTime) {
  const RadialGrid g(16.0, 1023);
  const auto u0 = RadialField::sample(g, [](double r) { return cplx(std::exp(-r * r / 2.0)); });
  const auto V = PotentialSpec::gaussian(0.5, 1.0);
  auto run = [&](double dt) {
    RadialField u = u0;
    const int n = static_cast<int>(std::lround(0.5 / dt));
    for (int k = 0; k < n; ++k) u = step(u, V, 3.0, dt);
    return u;
  };
  const RadialField ref = run(1e-3 / 16.0);
  auto err = [&](const RadialField& u) {
    std::vector<double> d(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) d[j] = std::norm(u[j] - ref[j]);
    return std::sqrt(integrate3d(g, d));
  };
  const double e1 = err(run(4e-3)), e2 = err(run(2e-3));
  EXPECT_GE(e1 / e2, 3.5);
}

TEST(Conservation, MassAndEnergy) {
  const RadialGrid g = fast_grid();
  const GroundState& gs = ground_state(3.0, g);
  EvolveConfig cfg;
  cfg.t_end = 0.5;
  cfg.dt0 = 5e-4;
  const auto tr = evolve(gs.profile.scaled(0.9), PotentialSpec::gaussian(0.3, 2.0), 3.0, cfg);
  ASSERT_EQ(tr.terminal, Terminal::CompletedHorizon);
  EXPECT_LE(tr.max_mass_drift, 1e-10);
  EXPECT_LE(tr.max_energy_drift, 1e-4);
  EXPECT_EQ(tr.steps, 1000);
  EXPECT_EQ(tr.snapshots.size(), 101u);
}

TEST(Evolve, BlowUpDetected) {
  const RadialGrid g = fast_grid();
  const GroundState& gs = ground_state(3.0, g);
  EvolveConfig cfg;
  cfg.t_end = 2.0;
  const auto tr = evolve(gs.profile.scaled(1.1), PotentialSpec::zero(), 3.0, cfg);
  EXPECT_EQ(tr.terminal, Terminal::BlowUpDetected);
  EXPECT_GT(tr.terminal_time, 0.1);
  EXPECT_LT(tr.terminal_time, 0.3);
  EXPECT_FALSE(tr.blowup_rule.empty());
  EXPECT_GE(tr.snapshots.back().grad_sq, 4.0 * tr.snapshots.front().grad_sq);
  // The step halves as the gradient grows.
  EXPECT_LT(tr.dt.back(), cfg.dt0);
  const auto d = scattering_diagnostic(tr, 10.0, 1.0);
  EXPECT_EQ(d.verdict, DiagnosticVerdict::Inconclusive);
}

TEST(Evolve, RejectsBadConfig) {
  const RadialGrid g(8.0, 63);
  const auto u0 = RadialField::sample(g, [](double r) { return cplx(std::exp(-r * r)); });
  EvolveConfig cfg;
  cfg.dt_floor = 1e-2;
  try {
    evolve(u0, PotentialSpec::zero(), 3.0, cfg);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("dt0 > dt_floor > 0"), std::string::npos);
  }
  cfg = EvolveConfig{};
  cfg.store_every = 0;
  EXPECT_THROW(evolve(u0, PotentialSpec::zero(), 3.0, cfg), ValidationError);
  cfg = EvolveConfig{};
  cfg.blowup_factor = 1.0;
  EXPECT_THROW(evolve(u0, PotentialSpec::zero(), 3.0, cfg), ValidationError);
  EXPECT_THROW(evolve(u0, PotentialSpec::zero(), 5.5, EvolveConfig{}), ValidationError);
}

TEST(Evolve, SnapshotCallbackAndLadders) {
  const RadialGrid g(16.0, 1023);
  const auto u0 = RadialField::sample(g, [](double r) { return cplx(std::exp(-r * r)); });
  EvolveConfig cfg;
  cfg.t_end = 0.1;
  cfg.dt0 = 0.01;
  cfg.store_every = 2;
  int calls = 0;
  cfg.on_snapshot = [&](const FunctionalSnapshot&, const RadialField&) { ++calls; };
  const auto tr = evolve(u0, PotentialSpec::zero(), 3.0, cfg);
  EXPECT_EQ(calls, static_cast<int>(tr.snapshots.size()));
  EXPECT_EQ(tr.snapshots.size(), 6u);
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    EXPECT_NEAR(tr.mass_within(i, g.r_max()), tr.snapshots[i].mass, 1e-6 * tr.snapshots[i].mass);
    EXPECT_NEAR(tr.mass_within(i, 10.0), tr.localized_mass[i], 1e-8);
    EXPECT_LE(tr.mass_within(i, 1.0), tr.mass_within(i, 2.0));
  }
  EXPECT_EQ(tr.lp1_radius.front(), 0.0);
  EXPECT_EQ(tr.localized_lp1.front(), 0.0);
  EXPECT_FALSE(tr.wall_contamination_time.has_value());
}

TEST(ScatteringDiagnostic, LinearGaussianEvacuates) {
  const RadialGrid g = fast_grid();
  const auto u0 = RadialField::sample(g, [](double r) { return cplx(std::exp(-r * r)); });
  EvolveConfig cfg;
  cfg.coupling = 0.0;
  cfg.dt0 = 0.01;
  cfg.store_every = 2;
  cfg.t_end = 2.0;
  const auto tr = evolve(u0, PotentialSpec::zero(), 3.0, cfg);
  const auto d = scattering_diagnostic(tr, 2.0, std::sqrt(0.1 * tr.snapshots.front().mass));
  EXPECT_EQ(d.verdict, DiagnosticVerdict::Pass) << d.reason;
}

TEST(ScatteringDiagnostic, SolitonStaysPut) {
  const RadialGrid g = fast_grid();
  const GroundState& gs = ground_state(3.0, g);
  EvolveConfig cfg;
  cfg.t_end = 1.0;
  cfg.store_every = 20;
  const auto tr = evolve(gs.profile, PotentialSpec::zero(), 3.0, cfg);
  const auto d = scattering_diagnostic(tr, 10.0, std::sqrt(0.1 * gs.mass));
  EXPECT_EQ(d.verdict, DiagnosticVerdict::Fail);
  EXPECT_GT(d.min_localized_mass, 0.99 * gs.mass);
}
