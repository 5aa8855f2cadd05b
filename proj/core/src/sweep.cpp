#include "nlslab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <optional>
#include <thread>

#include "nlslab/classifier.hpp"
#include "nlslab/error.hpp"
#include "nlslab/groundstate.hpp"
#include "nlslab/initial_data.hpp"

namespace nlslab {

void SweepPlan::validate() const {
  if (p.empty()) throw ValidationError("sweep: p list is empty");
  if (lambdas.empty()) throw ValidationError("sweep: lambda grid is empty");
  for (double x : p) require_exponent(x);
  for (double l : lambdas)
    if (!(l > 0.0) || !std::isfinite(l)) throw ValidationError("sweep: lambda must be positive");
  if (!(R > 0.0)) throw ValidationError("sweep: R must be positive");
  if (!(eps_frac > 0.0)) throw ValidationError("sweep: eps_frac must be positive");
  config.validate();
  (void)grid.make();
}

json to_json(const SweepPlan& plan) {
  json pots = json::array();
  for (const auto& v : plan.potentials) pots.push_back({{"id", v.id}, {"potential", to_json(v.spec)}});
  return {{"p", plan.p},
          {"lambda", plan.lambdas},
          {"potentials", pots},
          {"grid", to_json(plan.grid)},
          {"evolve", to_json(plan.config)},
          {"R", plan.R},
          {"eps_frac", plan.eps_frac},
          {"output_dir", plan.output_dir},
          {"threads", plan.threads}};
}

SweepPlan sweep_plan_from_json(const json& j) {
  SweepPlan plan;
  if (!j.contains("p") || !j.contains("lambda")) throw ValidationError("sweep plan: needs \"p\" and \"lambda\"");
  for (const auto& x : j.at("p")) plan.p.push_back(number_from_json(x));
  for (const auto& x : j.at("lambda")) plan.lambdas.push_back(number_from_json(x));
  if (j.contains("potentials")) {
    std::size_t k = 0;
    for (const auto& v : j.at("potentials")) {
      if (v.contains("potential")) {
        plan.potentials.push_back({v.value("id", "V" + std::to_string(k)), potential_from_json(v.at("potential"))});
      } else {
        plan.potentials.push_back({"V" + std::to_string(k), potential_from_json(v)});
      }
      ++k;
    }
  }
  if (j.contains("grid")) plan.grid = grid_from_json(j.at("grid"));
  if (j.contains("evolve")) plan.config = evolve_config_from_json(j.at("evolve"));
  if (j.contains("R")) plan.R = number_from_json(j.at("R"));
  if (j.contains("eps_frac")) plan.eps_frac = number_from_json(j.at("eps_frac"));
  plan.output_dir = j.value("output_dir", "");
  plan.threads = j.value("threads", 0u);
  plan.validate();
  return plan;
}

namespace {

std::string agreement_of(const SweepRow& row) {
  if (row.verdict.empty() || row.terminal.empty()) return "n/a";
  const Verdict v = verdict_from_string(row.verdict);
  if (row.terminal == "Underresolved" || v == Verdict::Indeterminate) return "n/a";
  const bool blew_up = row.terminal == "BlowUpDetected";
  switch (v) {
    case Verdict::Scatters: return !blew_up && row.evac == "pass" ? "agree" : "disagree";
    case Verdict::GlobalBounded: return blew_up ? "disagree" : "agree";
    default: return blew_up ? "agree" : "disagree";
  }
}

SweepRow run_cell(double p, double lambda, const NamedPotential& v, const GroundState& gs, const SweepPlan& plan) {
  SweepRow row;
  row.p = p;
  row.lambda = lambda;
  row.potential_id = v.id;
  InitialData d;
  d.lambda = lambda;
  const RadialField u0 = make_initial_data(d, gs.profile.grid(), &gs);
  const ThresholdReport report = classify(u0, v.spec, p, gs);
  row.me_ratio = report.ratios.me_ratio;
  row.grad_ratio = report.ratios.grad_ratio;
  row.h_ratio = report.ratios.h_ratio;
  row.near_threshold = std::abs(report.ratios.me_ratio - 1.0) < 0.05;
  row.verdict = to_string(report.verdict);

  EvolveConfig cfg = plan.config;
  cfg.keep_fields = false;
  cfg.on_snapshot = nullptr;
  const EvolutionTrace tr = evolve(u0, v.spec, p, cfg);
  row.terminal = to_string(tr.terminal);
  row.terminal_time = tr.terminal_time;
  if (tr.terminal == Terminal::CompletedHorizon) {
    const double eps = std::sqrt(plan.eps_frac * tr.snapshots.front().mass);
    row.evac = to_string(scattering_diagnostic(tr, plan.R, eps).verdict);
  } else {
    row.evac = "n/a";
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepPlan& plan) {
  plan.validate();
  const RadialGrid grid = plan.grid.make();
  std::vector<NamedPotential> pots = plan.potentials;
  if (pots.empty()) pots.push_back({"zero", PotentialSpec::zero()});

  // Ground states are shared read-only by every cell with the same p.
  std::vector<std::optional<GroundState>> states(plan.p.size());
  std::vector<std::string> state_errors(plan.p.size());
  for (std::size_t i = 0; i < plan.p.size(); ++i) {
    try {
      states[i].emplace(solve_ground_state(grid, plan.p[i]));
    } catch (const std::exception& e) {
      state_errors[i] = std::string("ground state: ") + e.what();
    }
  }

  const std::size_t per_p = plan.lambdas.size() * pots.size();
  const std::size_t cells = plan.p.size() * per_p;
  std::vector<SweepRow> rows(cells);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t c = next++; c < cells; c = next++) {
      const std::size_t ip = c / per_p;
      const std::size_t il = (c % per_p) / pots.size();
      const std::size_t iv = c % pots.size();
      SweepRow& row = rows[c];
      try {
        if (!states[ip]) throw NumericalError(state_errors[ip]);
        row = run_cell(plan.p[ip], plan.lambdas[il], pots[iv], *states[ip], plan);
      } catch (const std::exception& e) {
        row.p = plan.p[ip];
        row.lambda = plan.lambdas[il];
        row.potential_id = pots[iv].id;
        row.error = e.what();
      }
      row.agreement = agreement_of(row);
    }
  };

  unsigned threads = plan.threads ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

CsvTable agreement_table(const std::vector<SweepRow>& rows) {
  CsvTable t;
  t.header = {"p",       "lambda",   "potential_id",   "me_ratio",  "grad_ratio",    "h_ratio", "verdict",
              "terminal", "evac_pass", "near_threshold", "agreement", "terminal_time", "error"};
  for (const auto& r : rows) {
    t.rows.push_back({format_double(r.p), format_double(r.lambda), r.potential_id, format_double(r.me_ratio),
                      format_double(r.grad_ratio), format_double(r.h_ratio), r.verdict, r.terminal, r.evac,
                      r.near_threshold ? "true" : "false", r.agreement, format_double(r.terminal_time), r.error});
  }
  return t;
}

}  // namespace nlslab
