#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "manifest.hpp"
#include "nlslab/classifier.hpp"
#include "nlslab/error.hpp"
#include "nlslab/evolution.hpp"
#include "nlslab/groundstate.hpp"
#include "nlslab/initial_data.hpp"
#include "nlslab/io.hpp"
#include "nlslab/potentials.hpp"
#include "nlslab/sweep.hpp"
#include "nlslab/virial.hpp"

namespace fs = std::filesystem;
using namespace nlslab;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUsage = 64;

void add_grid(CLI::App* sub, GridSpec& g) {
  sub->add_option("--r-max", g.r_max, "Radius of the computational ball")->capture_default_str();
  sub->add_option("--n", g.n, "Number of interior grid nodes")->capture_default_str();
}

json echo(const CLI::App* sub) {
  json j = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_expected_max() == 0) j[name] = true;
      else if (res.size() == 1) j[name] = res.front();
      else j[name] = res;
    } else if (!opt->get_default_str().empty()) {
      j[name] = opt->get_default_str();
    }
  }
  return j;
}

fs::path with_suffix(const fs::path& p, const std::string& suffix) {
  fs::path out = p;
  out.replace_extension(suffix);
  return out;
}

void ensure_parent(const fs::path& p) {
  const auto parent = fs::absolute(p).parent_path();
  if (!fs::exists(parent)) fs::create_directories(parent);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

PotentialSpec load_potential(const std::string& path) {
  return path.empty() ? PotentialSpec::zero() : potential_from_json(read_json_file(path));
}

std::optional<GroundState> ground_state_if_needed(const InitialData& d, const RadialGrid& grid, double p) {
  if (d.kind != InitialData::Kind::LambdaQ) return std::nullopt;
  return solve_ground_state(grid, p);
}

Weight parse_weight(const std::string& s) {
  const auto colon = s.find(':');
  const WeightKind kind = weight_kind_from_string(s.substr(0, colon));
  const double R = colon == std::string::npos ? 1.0 : std::stod(s.substr(colon + 1));
  return Weight(kind, R);
}

// ---- subcommands ----------------------------------------------------------

struct GroundstateArgs {
  double p = 3.0;
  double tol = 1e-10;
  std::string out = "q.csv";
  GridSpec grid;
};

int run_groundstate(const GroundstateArgs& a, const CLI::App* sub) {
  cli::Manifest manifest("groundstate", echo(sub));
  manifest.set_grid(a.grid);
  const GroundState gs = solve_ground_state(a.grid.make(), a.p, a.tol);
  std::ostringstream csv;
  csv << "r,Q\n";
  for (std::size_t j = 0; j < gs.profile.size(); ++j)
    csv << format_double(gs.profile.grid().node(j)) << ',' << format_double(gs.profile[j].real()) << '\n';
  const fs::path out(a.out);
  const fs::path side = with_suffix(out, ".json");
  const json summary = to_json(summarize(gs));
  ensure_parent(out);
  write_file_atomic(out, csv.str());
  write_file_atomic(side, dump(summary));
  manifest.add_output(out);
  manifest.add_output(side);
  manifest.write();
  std::cout << dump(summary);
  return 0;
}

struct KatoArgs {
  std::string potential;
  double sigma = 2.0;
  std::string out;
  GridSpec grid;
};

int run_kato(const KatoArgs& a, const CLI::App* sub) {
  cli::Manifest manifest("kato", echo(sub));
  manifest.set_grid(a.grid);
  const RadialGrid grid = a.grid.make();
  const PotentialSpec v = load_potential(a.potential);
  const PotentialReport rep = analyze(v, grid, a.sigma);
  json j = to_json(rep);
  if (rep.nonneg && rep.condition_2V) {
    const Remark14Result r = remark14_check(v, grid);
    j["remark14"] = {{"pass", r.pass}, {"first_violation", r.first_violation ? json(*r.first_violation) : json(nullptr)}};
  }
  if (!a.out.empty()) {
    ensure_parent(a.out);
    write_file_atomic(a.out, dump(j));
    manifest.add_output(a.out);
    manifest.write();
  }
  std::cout << dump(j);
  return 0;
}

struct ClassifyArgs {
  std::string data;
  std::string potential;
  double p = 3.0;
  double sigma = 2.0;
  std::string out;
  GridSpec grid;
};

int run_classify(const ClassifyArgs& a, const CLI::App* sub) {
  cli::Manifest manifest("classify", echo(sub));
  manifest.set_grid(a.grid);
  require_exponent(a.p);
  const RadialGrid grid = a.grid.make();
  const InitialData d = initial_data_from_json(read_json_file(a.data));
  const PotentialSpec v = load_potential(a.potential);
  const GroundState gs = solve_ground_state(grid, a.p);
  const RadialField u0 = make_initial_data(d, grid, &gs);
  const json j = to_json(classify(u0, v, a.p, gs, a.sigma));
  if (!a.out.empty()) {
    ensure_parent(a.out);
    write_file_atomic(a.out, dump(j));
    manifest.add_output(a.out);
    manifest.write();
  }
  std::cout << dump(j);
  return 0;
}

struct EvolveArgs {
  std::string data;
  std::string potential;
  double p = 3.0;
  std::string out = "trace.csv";
  EvolveConfig cfg;
  std::vector<std::string> weights;
  double R = 10.0;
  double eps = 0.0;  // 0: eps^2 = 10% of the initial mass
  bool fields = false;
  GridSpec grid;
};

int run_evolve(EvolveArgs a, const CLI::App* sub) {
  cli::Manifest manifest("evolve", echo(sub));
  manifest.set_grid(a.grid);
  for (const auto& w : a.weights) a.cfg.weights.push_back(parse_weight(w));
  a.cfg.keep_fields = a.fields;
  a.cfg.validate();
  require_exponent(a.p);
  const RadialGrid grid = a.grid.make();
  const InitialData d = initial_data_from_json(read_json_file(a.data));
  const PotentialSpec v = load_potential(a.potential);
  const auto gs = ground_state_if_needed(d, grid, a.p);
  const RadialField u0 = make_initial_data(d, grid, gs ? &*gs : nullptr);

  const EvolutionTrace tr = evolve(u0, v, a.p, a.cfg);

  json side = trace_summary(tr, a.grid);
  side["data"] = to_json(d);
  if (tr.terminal == Terminal::CompletedHorizon) {
    const double eps = a.eps > 0.0 ? a.eps : std::sqrt(0.1 * tr.snapshots.front().mass);
    json diag = to_json(scattering_diagnostic(tr, a.R, eps));
    diag["R"] = a.R;
    side["scattering_diagnostic"] = diag;
  }
  const fs::path out(a.out);
  const fs::path side_path = with_suffix(out, ".json");
  ensure_parent(out);
  std::ostringstream csv;
  write_trace_csv(csv, tr);
  write_file_atomic(out, csv.str());
  write_file_atomic(side_path, dump(side));
  manifest.add_output(out);
  manifest.add_output(side_path);
  if (a.fields) {
    std::vector<double> times;
    for (const auto& s : tr.snapshots) times.push_back(s.t);
    std::ostringstream bin;
    write_fields(bin, times, tr.fields);
    const fs::path fpath = with_suffix(out, ".fields.bin");
    write_file_atomic(fpath, bin.str());
    manifest.add_output(fpath);
  }
  manifest.write();
  std::cout << dump(side);
  if (tr.terminal == Terminal::Underresolved) {
    std::cerr << "evolve: underresolved at t = " << tr.terminal_time << "\n";
    return kExitNumerical;
  }
  return 0;
}

struct VirialArgs {
  std::string trace;
  std::string weight = "psi";
  double R = 8.0;
  std::string out = "virial.csv";
};

int run_virial(const VirialArgs& a, const CLI::App* sub) {
  cli::Manifest manifest("virial", echo(sub));
  const fs::path trace_path(a.trace);
  const json side = read_json_file(with_suffix(trace_path, ".json"));
  const GridSpec gspec = grid_from_json(side.at("grid"));
  manifest.set_grid(gspec);
  const RadialGrid grid = gspec.make();
  const double p = number_from_json(side.at("p"));
  const PotentialSpec v = potential_from_json(side.at("potential"));
  EvolveConfig cfg = evolve_config_from_json(side.at("config"));
  const Weight w(weight_kind_from_string(a.weight), a.R);

  CsvTable table;
  {
    std::ifstream in(trace_path);
    if (!in) throw ValidationError("cannot open " + trace_path.string());
    table = read_csv(in);
  }
  const std::vector<double> times = table.numeric("t");

  const fs::path fpath = with_suffix(trace_path, ".fields.bin");
  const VirialSeries series = [&] {
    if (fs::exists(fpath)) {
      std::ifstream in(fpath, std::ios::binary);
      const FieldSeries fields = read_fields(in);
      return virial_series(fields.times, fields.fields, v, p, w, cfg.coupling);
    }
    // The run is deterministic, so replaying it with the weight attached
    // reproduces the stored trace.
    const InitialData d = initial_data_from_json(side.at("data"));
    const auto gs = ground_state_if_needed(d, grid, p);
    cfg.weights = {w};
    cfg.keep_fields = false;
    return evolve(make_initial_data(d, grid, gs ? &*gs : nullptr), v, p, cfg).virial.front();
  }();
  if (series.t.size() != times.size()) throw ValidationError("virial: sidecar does not reproduce " + a.trace);
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::abs(series.t[i] - times[i]) > 1e-12 * (1.0 + std::abs(times[i])))
      throw ValidationError("virial: snapshot times differ from " + a.trace);

  const VirialConsistency c = virial_consistency(series);
  CsvTable outt;
  outt.header = {"t", "I", "I1", "I2", "fd_resid"};
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    const double resid = i < c.fd_resid.size() ? c.fd_resid[i] : std::nan("");
    outt.rows.push_back({format_double(series.t[i]), format_double(series.I[i]), format_double(series.I1[i]),
                         format_double(series.I2[i]), format_double(resid)});
  }
  std::ostringstream csv;
  write_csv(csv, outt);
  ensure_parent(a.out);
  write_file_atomic(a.out, csv.str());
  manifest.add_output(a.out);
  manifest.write();
  std::cout << dump({{"weight", w.name()},
                     {"conclusive", c.conclusive},
                     {"max_rel_err_I1", number_to_json(c.max_rel_err_I1)},
                     {"max_rel_err_I2", number_to_json(c.max_rel_err_I2)}});
  return 0;
}

struct SweepArgs {
  std::string plan;
  std::string out;
};

unsigned thread_cap(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NLS_LAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1) throw ValidationError("NLS_LAB_THREADS must be a positive integer");
    n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

int run_sweep_cmd(const SweepArgs& a, const CLI::App* sub) {
  cli::Manifest manifest("sweep", echo(sub));
  SweepPlan plan = sweep_plan_from_json(read_json_file(a.plan));
  plan.output_dir = a.out;
  plan.threads = thread_cap(plan.threads);
  manifest.set_grid(plan.grid);
  const auto rows = run_sweep(plan);
  const fs::path dir(a.out);
  fs::create_directories(dir);
  std::ostringstream csv;
  write_csv(csv, agreement_table(rows));
  write_file_atomic(dir / "agreement.csv", csv.str());
  write_file_atomic(dir / "plan.json", dump(to_json(plan)));
  manifest.add_output(dir / "agreement.csv");
  manifest.add_output(dir / "plan.json");
  manifest.write();
  std::cout << csv.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial focusing NLS with potential: ground states, threshold classification, evolution"};
  app.set_version_flag("--version", std::string(NLSLAB_VERSION));
  app.require_subcommand(1);

  GroundstateArgs gsa;
  auto* gs = app.add_subcommand("groundstate", "Solve for the ground state Q and write q.csv plus a JSON sidecar");
  gs->add_option("--p", gsa.p, "Nonlinearity exponent, 7/3 <= p < 5")->required();
  gs->add_option("--tol", gsa.tol, "Shooting bracket tolerance")->capture_default_str();
  gs->add_option("--out", gsa.out, "Profile CSV (r, Q)")->capture_default_str();
  add_grid(gs, gsa.grid);

  KatoArgs ka;
  auto* kato = app.add_subcommand("kato", "Analyze a potential and print its report as JSON");
  kato->add_option("--potential", ka.potential, "Potential spec JSON")->required();
  kato->add_option("--sigma", ka.sigma, "Exponent of the L^sigma norm")->capture_default_str();
  kato->add_option("--out", ka.out, "Also write the report here");
  add_grid(kato, ka.grid);

  ClassifyArgs ca;
  auto* cls = app.add_subcommand("classify", "Threshold classification of initial data");
  cls->add_option("--data", ca.data, "Initial data JSON")->required();
  cls->add_option("--potential", ca.potential, "Potential spec JSON (default V = 0)");
  cls->add_option("--p", ca.p, "Nonlinearity exponent")->required();
  cls->add_option("--sigma", ca.sigma, "Exponent of the L^sigma norm")->capture_default_str();
  cls->add_option("--out", ca.out, "Also write the report here");
  add_grid(cls, ca.grid);

  EvolveArgs ea;
  auto* ev = app.add_subcommand("evolve", "Split-step evolution with trace CSV and JSON sidecar");
  ev->add_option("--data", ea.data, "Initial data JSON")->required();
  ev->add_option("--potential", ea.potential, "Potential spec JSON (default V = 0)");
  ev->add_option("--p", ea.p, "Nonlinearity exponent")->required();
  ev->add_option("--t-end", ea.cfg.t_end, "Horizon")->capture_default_str();
  ev->add_option("--dt", ea.cfg.dt0, "Initial time step")->capture_default_str();
  ev->add_option("--store-every", ea.cfg.store_every, "Steps between snapshots")->capture_default_str();
  ev->add_option("--blowup-factor", ea.cfg.blowup_factor, "Gradient growth declaring blow-up")->capture_default_str();
  ev->add_option("--dt-floor", ea.cfg.dt_floor, "Smallest step before declaring blow-up")->capture_default_str();
  ev->add_option("--R-probe", ea.cfg.R_probe, "Radius of the localized mass column")->capture_default_str();
  ev->add_option("--coupling", ea.cfg.coupling, "Nonlinear coupling (0 = linear)")->capture_default_str();
  ev->add_option("--weight", ea.weights, "Virial weight to record, name[:R], repeatable");
  ev->add_option("--R", ea.R, "Evacuation radius for the scattering diagnostic")->capture_default_str();
  ev->add_option("--eps", ea.eps, "Evacuation level eps (default: eps^2 = 10% of the mass)");
  ev->add_flag("--fields", ea.fields, "Write snapshot fields to <out>.fields.bin");
  ev->add_option("--out", ea.out, "Trace CSV")->capture_default_str();
  add_grid(ev, ea.grid);

  VirialArgs va;
  auto* vir = app.add_subcommand("virial", "Virial series of an evolve trace, with finite-difference residuals");
  vir->add_option("--trace", va.trace, "trace.csv written by evolve")->required();
  vir->add_option("--weight", va.weight, "unweighted, chi, w, psi or f")->capture_default_str();
  vir->add_option("--R", va.R, "Weight scale")->capture_default_str();
  vir->add_option("--out", va.out, "Series CSV (t, I, I1, I2, fd_resid)")->capture_default_str();

  SweepArgs sa;
  auto* sw = app.add_subcommand("sweep", "Classify and evolve every cell of a plan; write agreement.csv");
  sw->add_option("--plan", sa.plan, "Sweep plan JSON")->required();
  sw->add_option("--out", sa.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gs->parsed()) return run_groundstate(gsa, gs);
    if (kato->parsed()) return run_kato(ka, kato);
    if (cls->parsed()) return run_classify(ca, cls);
    if (ev->parsed()) return run_evolve(ea, ev);
    if (vir->parsed()) return run_virial(va, vir);
    if (sw->parsed()) return run_sweep_cmd(sa, sw);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
