#include "nlslab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nlslab/error.hpp"

namespace nlslab {
namespace {

// Trapezoid prefix integrals of 4 pi f r^2 on the cell boundaries k h,
// k = 0..n+1, so that the integral up to any radius is one lookup plus a
// partial cell.
struct Cumulative {
  std::vector<double> prefix;
  std::vector<double> g;  // 4 pi f r^2 at k h
  double h;

  Cumulative(const RadialGrid& grid, const std::vector<double>& f) : prefix(grid.size() + 2), g(grid.size() + 2), h(grid.h()) {
    for (std::size_t k = 1; k <= grid.size(); ++k) {
      const double r = static_cast<double>(k) * h;
      g[k] = 4.0 * std::numbers::pi * f[k - 1] * r * r;
    }
    for (std::size_t k = 1; k < g.size(); ++k) prefix[k] = prefix[k - 1] + 0.5 * h * (g[k - 1] + g[k]);
  }

  double upto(double R) const {
    if (R <= 0.0) return 0.0;
    const double s = R / h;
    const auto k = static_cast<std::size_t>(std::floor(s));
    if (k + 1 >= g.size()) return prefix.back();
    const double t = s - static_cast<double>(k);
    const double gR = g[k] + t * (g[k + 1] - g[k]);
    return prefix[k] + 0.5 * t * h * (g[k] + gR);
  }
};

double ladder_lookup(const std::vector<double>& ladder, double spacing, double R) {
  if (R <= 0.0) return 0.0;
  const double s = R / spacing;
  const auto k = static_cast<std::size_t>(std::floor(s));
  if (k + 1 >= ladder.size()) return ladder.back();
  const double t = s - static_cast<double>(k);
  return ladder[k] + t * (ladder[k + 1] - ladder[k]);
}

}  // namespace

void EvolveConfig::validate() const {
  if (!(dt_floor > 0.0)) throw ValidationError("evolve: dt_floor must be positive");
  if (!(dt0 > dt_floor)) throw ValidationError("evolve: invariant dt0 > dt_floor > 0 violated");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ValidationError("evolve: t_end must be positive");
  if (store_every < 1) throw ValidationError("evolve: store_every must be at least 1");
  if (!(blowup_factor > 1.0)) throw ValidationError("evolve: blowup_factor must exceed 1");
  if (!(R_probe > 0.0)) throw ValidationError("evolve: R_probe must be positive");
  if (!(ladder_spacing > 0.0)) throw ValidationError("evolve: ladder_spacing must be positive");
}

const char* to_string(Terminal t) {
  switch (t) {
    case Terminal::CompletedHorizon: return "CompletedHorizon";
    case Terminal::BlowUpDetected: return "BlowUpDetected";
    case Terminal::Underresolved: return "Underresolved";
  }
  return "Underresolved";
}

const char* to_string(DiagnosticVerdict d) {
  switch (d) {
    case DiagnosticVerdict::Pass: return "pass";
    case DiagnosticVerdict::Fail: return "fail";
    case DiagnosticVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double EvolutionTrace::mass_within(std::size_t i, double R) const {
  return ladder_lookup(mass_ladder.at(i), config.ladder_spacing, R);
}

double EvolutionTrace::lp1_within(std::size_t i, double R) const {
  return ladder_lookup(lp1_ladder.at(i), config.ladder_spacing, R);
}

Integrator::Integrator(const RadialGrid& grid, const PotentialSpec& v, double p, double coupling)
    : grid_(grid), dst_(grid.size()), v_(sample(v, grid)), p_(p), coupling_(coupling), multiplier_(grid.size()) {}

void Integrator::phase(std::vector<cplx>& w, double tau) const {
  const std::size_t n = w.size();
  const bool cubic = p_ == 3.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = grid_.node(j);
    const double a2 = std::norm(w[j]) / (r * r);
    const double nl = cubic ? a2 : std::pow(a2, 0.5 * (p_ - 1.0));
    const double theta = tau * (coupling_ * nl - (v_.zero ? 0.0 : v_.v[j]));
    w[j] *= cplx(std::cos(theta), std::sin(theta));
  }
}

void Integrator::step(std::vector<cplx>& w, double dt) {
  if (!(dt > 0.0)) throw ValidationError("step: dt must be positive");
  if (w.size() != grid_.size()) throw ValidationError("step: field on a different grid");
  if (dt != cached_dt_) {
    const double kscale = std::numbers::pi / grid_.r_max();
    for (std::size_t k = 0; k < multiplier_.size(); ++k) {
      const double lam = kscale * static_cast<double>(k + 1);
      multiplier_[k] = std::polar(1.0, -dt * lam * lam);
    }
    cached_dt_ = dt;
  }
  phase(w, 0.5 * dt);
  dst_.forward(w);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] *= multiplier_[k];
  dst_.inverse(w);
  phase(w, 0.5 * dt);
}

RadialField step(const RadialField& u, const PotentialSpec& v, double p, double dt, double coupling) {
  const RadialGrid& grid = u.grid();
  Integrator integ(grid, v, p, coupling);
  std::vector<cplx> w(u.values().begin(), u.values().end());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] *= grid.node(j);
  integ.step(w, dt);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!std::isfinite(w[j].real()) || !std::isfinite(w[j].imag())) throw NumericalError("step: non-finite values (underresolved)");
    w[j] /= grid.node(j);
  }
  return RadialField(grid, std::move(w));
}

EvolutionTrace evolve(const RadialField& u0, const PotentialSpec& v, double p, const EvolveConfig& cfg) {
  cfg.validate();
  require_exponent(p);
  const RadialGrid& grid = u0.grid();
  Integrator integ(grid, v, p, cfg.coupling);
  const PotentialSamples& vs = integ.potential();

  EvolutionTrace tr;
  tr.p = p;
  tr.config = cfg;
  tr.potential = v;
  tr.config.on_snapshot = nullptr;
  for (const auto& w : cfg.weights) tr.virial.push_back(VirialSeries{w, {}, {}, {}, {}, {}, {}});
  {
    std::ostringstream os;
    os << "grad_sq >= " << cfg.blowup_factor << " x initial, or dt < " << cfg.dt_floor;
    tr.blowup_rule = os.str();
  }

  const double r_wall = 0.9 * grid.r_max();
  const auto ladder_n = static_cast<std::size_t>(std::floor(grid.r_max() / cfg.ladder_spacing)) + 1;

  double m0 = 0.0, e0 = 0.0, escale = 1.0;
  auto record = [&](const RadialField& u, double t, double dt) {
    // Snapshots always report the focusing functionals, whatever the coupling.
    const FunctionalSnapshot s = snapshot(u, vs, p, t);
    if (tr.snapshots.empty()) {
      m0 = s.mass;
      e0 = s.energy_v;
      escale = std::abs(e0) > 1e-3 * s.grad_sq ? std::abs(e0) : std::max(s.grad_sq, 1e-300);
    }
    tr.snapshots.push_back(s);
    tr.dt.push_back(dt);
    const Cumulative cm(grid, u.abs_sq());
    const Cumulative cl(grid, u.abs_pow(p + 1.0));
    std::vector<double> ml(ladder_n), ll(ladder_n);
    for (std::size_t k = 0; k < ladder_n; ++k) {
      const double R = static_cast<double>(k) * cfg.ladder_spacing;
      ml[k] = cm.upto(R);
      ll[k] = cl.upto(R);
    }
    tr.mass_ladder.push_back(std::move(ml));
    tr.lp1_ladder.push_back(std::move(ll));
    tr.localized_mass.push_back(cm.upto(cfg.R_probe));
    const double Rn = 0.5 * std::cbrt(t);
    tr.lp1_radius.push_back(Rn);
    tr.localized_lp1.push_back(cl.upto(Rn));
    const double wall = cm.upto(grid.r_max()) - cm.upto(r_wall);
    tr.wall_mass.push_back(wall);
    if (!tr.wall_contamination_time && m0 > 0.0 && wall > 0.01 * m0) tr.wall_contamination_time = t;
    if (m0 > 0.0) tr.max_mass_drift = std::max(tr.max_mass_drift, std::abs(s.mass - m0) / m0);
    tr.max_energy_drift = std::max(tr.max_energy_drift, std::abs(s.energy_v - e0) / escale);
    for (auto& series : tr.virial) {
      const auto vv = virial_eval(u, vs, p, series.weight, cfg.coupling);
      series.t.push_back(t);
      series.I.push_back(vv.I);
      series.I1.push_back(vv.I1);
      series.I2.push_back(vv.I2);
      series.scale1.push_back(vv.scale1);
      series.scale2.push_back(vv.scale2);
    }
    if (cfg.keep_fields) tr.fields.push_back(u);
    if (cfg.on_snapshot) cfg.on_snapshot(s, u);
  };

  record(u0, 0.0, cfg.dt0);
  const double grad0 = tr.snapshots.front().grad_sq;

  std::vector<cplx> w(u0.values().begin(), u0.values().end());
  for (std::size_t j = 0; j < w.size(); ++j) w[j] *= grid.node(j);
  auto field = [&] {
    std::vector<cplx> u(w);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] /= grid.node(j);
    return RadialField(grid, std::move(u));
  };

  double t = 0.0, dt = cfg.dt0;
  double grad_ref = grad0;
  long since_store = 0;
  const double t_stop = cfg.t_end * (1.0 - 1e-12);
  tr.terminal = Terminal::CompletedHorizon;
  while (t < t_stop) {
    const double h = std::min(dt, cfg.t_end - t);
    integ.step(w, h);
    t += h;
    ++tr.steps;
    ++since_store;
    bool finite = true;
    for (const auto& z : w) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        finite = false;
        break;
      }
    }
    if (!finite) {
      tr.terminal = Terminal::Underresolved;
      tr.terminal_time = t;
      return tr;
    }
    const RadialField u = field();
    const double g = gradient_sq_norm(u);
    bool stop = false;
    if (g >= cfg.blowup_factor * grad0) stop = true;
    while (!stop && g >= 4.0 * grad_ref) {
      dt *= 0.5;
      grad_ref *= 4.0;
      if (dt < cfg.dt_floor) stop = true;
    }
    if (stop) {
      record(u, t, dt);
      tr.terminal = Terminal::BlowUpDetected;
      tr.terminal_time = t;
      return tr;
    }
    if (since_store >= cfg.store_every || t >= t_stop) {
      record(u, t, dt);
      since_store = 0;
    }
  }
  tr.terminal_time = t;
  return tr;
}

ScatteringDiagnostic scattering_diagnostic(const EvolutionTrace& trace, double R, double eps) {
  ScatteringDiagnostic d;
  d.eps_sq = eps * eps;
  if (trace.terminal != Terminal::CompletedHorizon) {
    d.reason = "trace did not complete its horizon";
    return d;
  }
  const std::size_t n = trace.snapshots.size();
  const std::size_t first = n / 2;
  if (n - first < 16) {
    d.reason = "fewer than 16 snapshots in the last half";
    return d;
  }
  const double lp1_0 = trace.snapshots.front().lp1;
  d.min_localized_mass = kInf;
  d.min_lp1_fraction = kInf;
  for (std::size_t i = first; i < n; ++i) {
    d.min_localized_mass = std::min(d.min_localized_mass, trace.mass_within(i, R));
    if (lp1_0 > 0.0) d.min_lp1_fraction = std::min(d.min_lp1_fraction, trace.localized_lp1[i] / lp1_0);
  }
  const bool mass_ok = d.min_localized_mass <= d.eps_sq;
  const bool lp1_ok = d.min_lp1_fraction <= 0.1;
  d.verdict = mass_ok && lp1_ok ? DiagnosticVerdict::Pass : DiagnosticVerdict::Fail;
  std::ostringstream os;
  os << "min mass in R = " << R << ": " << d.min_localized_mass << " vs eps^2 = " << d.eps_sq
     << "; min localized L^{p+1} fraction " << d.min_lp1_fraction;
  d.reason = os.str();
  return d;
}

}  // namespace nlslab
