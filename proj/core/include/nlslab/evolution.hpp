#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlslab/functionals.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/potentials.hpp"
#include "nlslab/sine_transform.hpp"
#include "nlslab/weights.hpp"

namespace nlslab {

struct EvolveConfig {
  double dt0 = 1e-3;
  double t_end = 10.0;
  int store_every = 10;  // steps between snapshots
  double blowup_factor = 1e3;
  double dt_floor = 1e-10;
  double R_probe = 10.0;
  double coupling = 1.0;  // 0 switches the nonlinearity off
  double ladder_spacing = 0.25;  // radii of the cumulative profiles
  std::vector<Weight> weights;   // virial series recorded along the run
  bool keep_fields = false;
  // Called at every stored snapshot with the field at that time.
  std::function<void(const FunctionalSnapshot&, const RadialField&)> on_snapshot;

  void validate() const;
};

enum class Terminal { CompletedHorizon, BlowUpDetected, Underresolved };
const char* to_string(Terminal t);

struct VirialSeries {
  Weight weight;
  std::vector<double> t, I, I1, I2, scale1, scale2;
};

struct EvolutionTrace {
  double p = 3.0;
  EvolveConfig config;
  PotentialSpec potential;
  std::vector<FunctionalSnapshot> snapshots;
  std::vector<double> dt;              // step size in force at each snapshot
  std::vector<double> localized_mass;  // int_{|x| <= R_probe} |u|^2
  std::vector<double> lp1_radius;      // R_n = t_n^{1/3} / 2
  std::vector<double> localized_lp1;   // int_{|x| <= R_n} |u|^{p+1}
  std::vector<double> wall_mass;       // int_{|x| >= 0.9 r_max} |u|^2
  // Cumulative mass and L^{p+1} mass inside radius k * ladder_spacing.
  std::vector<std::vector<double>> mass_ladder, lp1_ladder;
  std::vector<VirialSeries> virial;
  std::vector<RadialField> fields;
  Terminal terminal = Terminal::CompletedHorizon;
  double terminal_time = 0.0;
  std::string blowup_rule;
  std::optional<double> wall_contamination_time;
  double max_mass_drift = 0.0;    // relative to M[u0]
  double max_energy_drift = 0.0;  // relative to |E_V[u0]| (or grad_sq if E_V = 0)
  long steps = 0;

  // Quantity inside radius R at snapshot i, interpolated on the ladder.
  double mass_within(std::size_t i, double R) const;
  double lp1_within(std::size_t i, double R) const;
};

// Split-step integrator on w = r u with Dirichlet ends:
// half phase flow, exact linear flow in the sine basis, half phase flow.
class Integrator {
 public:
  Integrator(const RadialGrid& grid, const PotentialSpec& v, double p, double coupling = 1.0);

  // Advances w = r u in place by dt.
  void step(std::vector<cplx>& w, double dt);

  const PotentialSamples& potential() const { return v_; }

 private:
  void phase(std::vector<cplx>& w, double tau) const;

  RadialGrid grid_;
  SineTransform dst_;
  PotentialSamples v_;
  double p_;
  double coupling_;
  double cached_dt_ = -1.0;
  std::vector<cplx> multiplier_;
};

// One Strang step. Throws NumericalError on non-finite output.
RadialField step(const RadialField& u, const PotentialSpec& v, double p, double dt, double coupling = 1.0);

EvolutionTrace evolve(const RadialField& u0, const PotentialSpec& v, double p, const EvolveConfig& cfg);

enum class DiagnosticVerdict { Pass, Fail, Inconclusive };
const char* to_string(DiagnosticVerdict d);

struct ScatteringDiagnostic {
  DiagnosticVerdict verdict = DiagnosticVerdict::Inconclusive;
  double min_localized_mass = 0.0;  // over the last half of the snapshots
  double eps_sq = 0.0;
  double min_lp1_fraction = 0.0;    // localized_lp1 / lp1 at t = 0
  std::string reason;
};

// Local mass evacuation: min over the last half of the snapshots of the mass
// inside R is at most eps^2, and the L^{p+1} mass inside t^{1/3}/2 drops to
// 10% of the total L^{p+1} mass at t = 0.
ScatteringDiagnostic scattering_diagnostic(const EvolutionTrace& trace, double R, double eps);

}  // namespace nlslab
