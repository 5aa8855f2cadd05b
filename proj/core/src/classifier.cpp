#include "nlslab/classifier.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "nlslab/error.hpp"

namespace nlslab {
namespace {

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

constexpr double kResolutionDefect = 1e-4;

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Scatters: return "Scatters";
    case Verdict::GlobalBounded: return "GlobalBounded";
    case Verdict::BlowUpOrGrowUp: return "BlowUpOrGrowUp";
    case Verdict::BlowUp: return "BlowUp";
    case Verdict::NegativeEnergyBlowUpOrGrowUp: return "NegativeEnergyBlowUpOrGrowUp";
    case Verdict::NegativeEnergyBlowUp: return "NegativeEnergyBlowUp";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::Scatters, Verdict::GlobalBounded, Verdict::BlowUpOrGrowUp, Verdict::BlowUp,
                    Verdict::NegativeEnergyBlowUpOrGrowUp, Verdict::NegativeEnergyBlowUp, Verdict::Indeterminate}) {
    if (s == to_string(v)) return v;
  }
  throw ValidationError("unknown verdict '" + s + "'");
}

bool finite_variance(const RadialField& u) {
  const RadialGrid& grid = u.grid();
  const auto dens = u.abs_sq();
  std::vector<double> f(dens.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double r = grid.node(j);
    f[j] = dens[j] * r * r;
  }
  std::vector<double> shells;
  double total = integrate3d_shell(grid, f, 0.0, 1.0);
  for (double lo = 1.0; lo < grid.r_max(); lo *= 2.0) {
    shells.push_back(integrate3d_shell(grid, f, lo, std::min(2.0 * lo, grid.r_max())));
    total += shells.back();
  }
  if (shells.size() < 2 || total <= 0.0) return true;
  const double last = shells.back(), prev = shells[shells.size() - 2];
  return !(last > 1e-3 * total && last >= 0.5 * prev);
}

double mass_resolution_defect(const RadialField& u) {
  const RadialGrid& grid = u.grid();
  const auto dens = u.abs_sq();
  const std::size_t n = grid.size();
  const double h = grid.h();
  auto g = [&](std::size_t k) {
    if (k == 0 || k == n + 1) return 0.0;
    const double r = static_cast<double>(k) * h;
    return dens[k - 1] * r * r;
  };
  double fine = 0.0;
  for (std::size_t k = 1; k <= n; ++k) fine += g(k);
  fine *= h;
  // Coarse rule on nodes 0, 2, 4, ... plus r_max.
  double coarse = 0.0;
  std::size_t k = 0;
  while (k + 2 <= n + 1) {
    coarse += h * (g(k) + g(k + 2));
    k += 2;
  }
  if (k < n + 1) coarse += 0.5 * h * (g(k) + g(n + 1));
  if (fine == 0.0) return 0.0;
  return std::abs(coarse - fine) / std::abs(fine);
}

ThresholdReport classify(const RadialField& u0, const PotentialSpec& v, double p, const GroundState& gs, double sigma) {
  require_exponent(p);
  if (std::abs(gs.p - p) > 1e-12) throw ValidationError("classify: ground state computed for a different p");
  if (!(gs.profile.grid() == u0.grid())) throw ValidationError("classify: ground state and data on different grids");
  const RadialGrid& grid = u0.grid();

  ThresholdReport rep;
  rep.snapshot = snapshot(u0, v, p, 0.0);
  if (!(rep.snapshot.mass > 0.0)) throw ValidationError("classify: initial data is zero");
  const double defect = mass_resolution_defect(u0);
  if (defect > kResolutionDefect) {
    std::ostringstream os;
    os << "classify: initial data underresolved (mass changes by " << defect << " under coarsening)";
    throw NumericalError(os.str());
  }
  rep.potential = analyze(v, grid, sigma);
  rep.ratios = threshold_products(rep.snapshot, gs);
  rep.finite_variance = finite_variance(u0);
  const auto& pot = rep.potential;
  const auto& ra = rep.ratios;

  if (pot.nonneg && ra.h_ratio < ra.grad_ratio * (1.0 - 1e-12)) {
    throw NumericalError("classify: h_ratio < grad_ratio although V >= 0");
  }

  const bool v_nonneg = pot.nonneg;
  const bool xg_l32 = std::isfinite(pot.xgradV_l32);
  const bool v_k0_l32 = pot.in_K0 && std::isfinite(pot.l32_norm);
  const bool v_lsigma = std::isfinite(pot.lsigma_norm);
  const bool v_class = v_k0_l32 || v_lsigma;
  const std::string sigma_name = "V in L^" + num(pot.sigma);

  auto add = [&](std::string c, std::string val, bool ok) { rep.hypothesis_trace.push_back({std::move(c), std::move(val), ok}); };
  auto all = [&] {
    for (const auto& h : rep.hypothesis_trace) {
      if (!h.satisfied) return false;
    }
    return true;
  };
  auto add_common = [&] {
    add("V >= 0", yes_no(v_nonneg), v_nonneg);
    add("x.grad V in L^3/2", num(pot.xgradV_l32), xg_l32);
  };
  auto add_blowup_class = [&] {
    add("V in K0 and L^3/2, or " + sigma_name, "kato=" + num(pot.kato_norm) + " l32=" + num(pot.l32_norm) +
        " lsigma=" + num(pot.lsigma_norm), v_class);
    add("2V + x.grad V >= 0", yes_no(pot.condition_2V), pot.condition_2V);
  };
  auto add_upgrade = [&] {
    const bool i = rep.data_radial && v_lsigma;
    const bool ii = rep.finite_variance && v_class;
    add("x.grad V >= 0", yes_no(pot.xgradV_nonneg), pot.xgradV_nonneg);
    add("(i) radial data and potential with " + sigma_name, yes_no(i), i);
    add("(ii) x u0 in L^2 with the V class", "finite_variance=" + yes_no(rep.finite_variance), ii);
    return pot.xgradV_nonneg && (i || ii);
  };
  auto qualify = [&] {
    if (pot.signs_window_only) rep.qualifier = "numerically verified on [0, " + num(pot.truncation_radius) + "]";
  };

  if (is_mass_critical(p)) {
    rep.branch = "mass-critical";
    add("E_V[u0] < 0", num(rep.snapshot.energy_v), rep.snapshot.energy_v < 0.0);
    add_common();
    add_blowup_class();
    add("h_ratio > 1", num(ra.h_ratio), ra.h_ratio > 1.0);
    if (!all()) {
      rep.verdict = Verdict::Indeterminate;
      return rep;
    }
    qualify();
    rep.verdict = Verdict::NegativeEnergyBlowUpOrGrowUp;
    const std::size_t base = rep.hypothesis_trace.size();
    if (add_upgrade()) {
      rep.verdict = Verdict::NegativeEnergyBlowUp;
    } else {
      for (std::size_t k = base; k < rep.hypothesis_trace.size(); ++k) rep.hypothesis_trace[k].condition += " [upgrade]";
    }
    return rep;
  }

  const bool below = ra.me_ratio < 1.0;
  const std::string me_val = ra.negative_energy ? "below (negative energy)" : num(ra.me_ratio);

  // (1) scattering side.
  if (below && ra.grad_ratio < 1.0) {
    rep.branch = "scattering";
    add("me_ratio < 1", me_val, true);
    add("grad_ratio < 1", num(ra.grad_ratio), true);
    add_common();
    add("V in K0", num(pot.kato_norm), pot.in_K0);
    add("V in L^3/2", num(pot.l32_norm), std::isfinite(pot.l32_norm));
    add("x.grad V <= 0", yes_no(pot.xgradV_nonpos), pot.xgradV_nonpos);
    if (all()) {
      rep.verdict = Verdict::Scatters;
      qualify();
    } else if (v_nonneg) {
      rep.verdict = Verdict::GlobalBounded;
      qualify();
    } else {
      rep.verdict = Verdict::Indeterminate;
    }
    return rep;
  }

  // (2) blow-up side.
  if (below && ra.h_ratio > 1.0) {
    rep.branch = "blow-up";
    add("me_ratio < 1", me_val, true);
    add("h_ratio > 1", num(ra.h_ratio), true);
    add_common();
    add_blowup_class();
    if (!all()) {
      rep.verdict = Verdict::Indeterminate;
      return rep;
    }
    qualify();
    rep.verdict = Verdict::BlowUpOrGrowUp;
    const std::size_t base = rep.hypothesis_trace.size();
    if (add_upgrade()) {
      rep.verdict = Verdict::BlowUp;
    } else {
      for (std::size_t k = base; k < rep.hypothesis_trace.size(); ++k) rep.hypothesis_trace[k].condition += " [upgrade]";
    }
    return rep;
  }

  rep.branch = "none";
  add("me_ratio < 1", me_val, below);
  add("grad_ratio < 1", num(ra.grad_ratio), ra.grad_ratio < 1.0);
  add("h_ratio > 1", num(ra.h_ratio), ra.h_ratio > 1.0);
  rep.verdict = Verdict::Indeterminate;
  return rep;
}

}  // namespace nlslab
