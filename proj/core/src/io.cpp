#include "nlslab/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "nlslab/error.hpp"

namespace nlslab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& member(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string(what) + ": missing \"" + key + "\"");
  return j.at(key);
}

double num(const json& j, const char* key, const char* what) { return number_from_json(member(j, key, what)); }

double num_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number_from_json(j.at(key)) : fallback;
}

std::vector<double> num_array(const json& j, const char* key, const char* what) {
  const json& a = member(j, key, what);
  if (!a.is_array()) throw ValidationError(std::string(what) + ": \"" + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(number_from_json(x));
  return out;
}

json num_array_to_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number_to_json(x));
  return a;
}

}  // namespace

json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw ValidationError("expected a number, got " + j.dump());
}

// ---- potentials -----------------------------------------------------------

json to_json(const PotentialSpec& v) {
  return std::visit(
      overloaded{
          [](const ZeroPotential&) { return json{{"family", "zero"}}; },
          [](const GaussianBump& g) {
            return json{{"family", "gaussian"}, {"params", {{"A", g.amplitude}, {"sigma", g.sigma}}}};
          },
          [](const InverseSquare& s) {
            json params{{"A", s.amplitude}, {"r0", s.core}};
            if (std::isfinite(s.cutoff)) params["r_cut"] = s.cutoff;
            return json{{"family", "truncated-inverse-square"}, {"params", params}};
          },
          [](const TablePotential& t) {
            json j{{"family", "table"}, {"r", num_array_to_json(t.r)}, {"v", num_array_to_json(t.v)}};
            if (t.tail == TablePotential::Tail::Constant) j["tail"] = "constant";
            return j;
          },
          [](const PotentialSum& s) {
            json terms = json::array();
            for (std::size_t k = 0; k < s.terms.size(); ++k)
              terms.push_back({{"coef", s.coefficients[k]}, {"potential", to_json(s.terms[k])}});
            return json{{"family", "sum"}, {"terms", terms}};
          },
      },
      v.family());
}

PotentialSpec potential_from_json(const json& j) {
  const char* what = "potential spec";
  const std::string family = member(j, "family", what).get<std::string>();
  if (family == "zero") return PotentialSpec::zero();
  if (family == "gaussian" || family == "gaussian-bump") {
    const json& p = member(j, "params", what);
    return PotentialSpec::gaussian(num(p, "A", what), num(p, "sigma", what));
  }
  if (family == "truncated-inverse-square" || family == "inverse-square") {
    const json& p = member(j, "params", what);
    return PotentialSpec::inverse_square(num(p, "A", what), num(p, "r0", what), num_or(p, "r_cut", kInf));
  }
  if (family == "table") {
    auto tail = TablePotential::Tail::Zero;
    if (j.contains("tail")) {
      const std::string t = j.at("tail").get<std::string>();
      if (t == "constant") tail = TablePotential::Tail::Constant;
      else if (t != "zero") throw ValidationError("potential spec: tail must be \"zero\" or \"constant\"");
    }
    return PotentialSpec::table(num_array(j, "r", what), num_array(j, "v", what), tail);
  }
  if (family == "sum") {
    const json& terms = member(j, "terms", what);
    std::vector<std::pair<double, PotentialSpec>> parts;
    for (const auto& t : terms) parts.emplace_back(num(t, "coef", what), potential_from_json(member(t, "potential", what)));
    return PotentialSpec::sum(std::move(parts));
  }
  throw ValidationError("potential spec: unknown family '" + family + "'");
}

// ---- initial data ---------------------------------------------------------

json to_json(const InitialData& d) {
  switch (d.kind) {
    case InitialData::Kind::LambdaQ: return {{"kind", "lambdaQ"}, {"lambda", d.lambda}};
    case InitialData::Kind::Gaussian: return {{"kind", "gaussian"}, {"amp", d.amp}, {"width", d.width}};
    case InitialData::Kind::Table:
      return {{"kind", "table"}, {"r", num_array_to_json(d.r)}, {"re", num_array_to_json(d.re)}, {"im", num_array_to_json(d.im)}};
  }
  return {};
}

InitialData initial_data_from_json(const json& j) {
  const char* what = "initial data";
  const std::string kind = member(j, "kind", what).get<std::string>();
  InitialData d;
  if (kind == "lambdaQ") {
    d.kind = InitialData::Kind::LambdaQ;
    d.lambda = num(j, "lambda", what);
  } else if (kind == "gaussian") {
    d.kind = InitialData::Kind::Gaussian;
    d.amp = num(j, "amp", what);
    d.width = num(j, "width", what);
  } else if (kind == "table") {
    d.kind = InitialData::Kind::Table;
    d.r = num_array(j, "r", what);
    d.re = num_array(j, "re", what);
    d.im = j.contains("im") ? num_array(j, "im", what) : std::vector<double>(d.r.size(), 0.0);
  } else {
    throw ValidationError("initial data: unknown kind '" + kind + "'");
  }
  return d;
}

// ---- grid / config --------------------------------------------------------

json to_json(const GridSpec& g) { return {{"r_max", g.r_max}, {"n", g.n}, {"h", g.r_max / static_cast<double>(g.n + 1)}}; }

GridSpec grid_from_json(const json& j) {
  GridSpec g;
  g.r_max = num_or(j, "r_max", g.r_max);
  if (j.contains("n")) g.n = j.at("n").get<std::size_t>();
  return g;
}

json to_json(const EvolveConfig& c) {
  json weights = json::array();
  for (const auto& w : c.weights) weights.push_back({{"weight", to_string(w.kind())}, {"R", w.R()}});
  return {{"dt0", c.dt0},
          {"t_end", c.t_end},
          {"store_every", c.store_every},
          {"blowup_factor", c.blowup_factor},
          {"dt_floor", c.dt_floor},
          {"R_probe", c.R_probe},
          {"coupling", c.coupling},
          {"ladder_spacing", c.ladder_spacing},
          {"weights", weights},
          {"keep_fields", c.keep_fields}};
}

EvolveConfig evolve_config_from_json(const json& j) {
  EvolveConfig c;
  c.dt0 = num_or(j, "dt0", c.dt0);
  c.t_end = num_or(j, "t_end", c.t_end);
  if (j.contains("store_every")) c.store_every = j.at("store_every").get<int>();
  c.blowup_factor = num_or(j, "blowup_factor", c.blowup_factor);
  c.dt_floor = num_or(j, "dt_floor", c.dt_floor);
  c.R_probe = num_or(j, "R_probe", c.R_probe);
  c.coupling = num_or(j, "coupling", c.coupling);
  c.ladder_spacing = num_or(j, "ladder_spacing", c.ladder_spacing);
  if (j.contains("weights")) {
    for (const auto& w : j.at("weights"))
      c.weights.emplace_back(weight_kind_from_string(w.at("weight").get<std::string>()), num_or(w, "R", 1.0));
  }
  if (j.contains("keep_fields")) c.keep_fields = j.at("keep_fields").get<bool>();
  c.validate();
  return c;
}

// ---- ground state ---------------------------------------------------------

GroundStateSummary summarize(const GroundState& gs) {
  GroundStateSummary s;
  s.p = gs.p;
  s.amplitude = gs.amplitude;
  s.mass = gs.mass;
  s.grad_sq = gs.grad_sq;
  s.lp1 = gs.lp1;
  s.energy0 = gs.energy0;
  s.cgn = gs.cgn;
  s.s_c = gs.s_c;
  s.threshold_me = gs.threshold_me;
  s.threshold_grad = gs.threshold_grad;
  s.pohozaev_mass_residual = gs.pohozaev_mass_residual;
  s.pohozaev_grad_residual = gs.pohozaev_grad_residual;
  s.energy_identity_residual = gs.energy_identity_residual;
  s.grid = {gs.profile.grid().r_max(), gs.profile.grid().size()};
  return s;
}

json to_json(const GroundStateSummary& s) {
  return {{"p", s.p},
          {"amplitude", s.amplitude},
          {"mass", s.mass},
          {"grad_sq", s.grad_sq},
          {"lp1", s.lp1},
          {"energy0", s.energy0},
          {"cgn", s.cgn},
          {"s_c", s.s_c},
          {"thresholds", {{"me", s.threshold_me}, {"grad", s.threshold_grad}}},
          {"residuals",
           {{"pohozaev_mass", s.pohozaev_mass_residual},
            {"pohozaev_grad", s.pohozaev_grad_residual},
            {"energy_identity", s.energy_identity_residual}}},
          {"grid", to_json(s.grid)}};
}

GroundStateSummary ground_state_summary_from_json(const json& j) {
  const char* what = "ground state";
  GroundStateSummary s;
  s.p = num(j, "p", what);
  s.amplitude = num(j, "amplitude", what);
  s.mass = num(j, "mass", what);
  s.grad_sq = num(j, "grad_sq", what);
  s.lp1 = num(j, "lp1", what);
  s.energy0 = num(j, "energy0", what);
  s.cgn = num(j, "cgn", what);
  s.s_c = num(j, "s_c", what);
  const json& th = member(j, "thresholds", what);
  s.threshold_me = num(th, "me", what);
  s.threshold_grad = num(th, "grad", what);
  const json& res = member(j, "residuals", what);
  s.pohozaev_mass_residual = num(res, "pohozaev_mass", what);
  s.pohozaev_grad_residual = num(res, "pohozaev_grad", what);
  s.energy_identity_residual = num(res, "energy_identity", what);
  s.grid = grid_from_json(member(j, "grid", what));
  return s;
}

// ---- reports --------------------------------------------------------------

json to_json(const PotentialReport& r) {
  return {{"kato_norm", number_to_json(r.kato_norm)},
          {"kato_neg", number_to_json(r.kato_neg)},
          {"in_K0", r.in_K0},
          {"l32_norm", number_to_json(r.l32_norm)},
          {"sigma", r.sigma},
          {"lsigma_norm", number_to_json(r.lsigma_norm)},
          {"nonneg", r.nonneg},
          {"xgradV_nonpos", r.xgradV_nonpos},
          {"xgradV_nonneg", r.xgradV_nonneg},
          {"condition_2V", r.condition_2V},
          {"xgradV_l32", number_to_json(r.xgradV_l32)},
          {"kato_small", r.kato_small},
          {"truncation_radius", r.truncation_radius},
          {"support_radius", number_to_json(r.support_radius)},
          {"signs_window_only", r.signs_window_only},
          {"warnings", r.warnings}};
}

PotentialReport potential_report_from_json(const json& j) {
  const char* what = "potential report";
  PotentialReport r;
  r.kato_norm = num(j, "kato_norm", what);
  r.kato_neg = num(j, "kato_neg", what);
  r.in_K0 = member(j, "in_K0", what).get<bool>();
  r.l32_norm = num(j, "l32_norm", what);
  r.sigma = num(j, "sigma", what);
  r.lsigma_norm = num(j, "lsigma_norm", what);
  r.nonneg = member(j, "nonneg", what).get<bool>();
  r.xgradV_nonpos = member(j, "xgradV_nonpos", what).get<bool>();
  r.xgradV_nonneg = member(j, "xgradV_nonneg", what).get<bool>();
  r.condition_2V = member(j, "condition_2V", what).get<bool>();
  r.xgradV_l32 = num(j, "xgradV_l32", what);
  r.kato_small = member(j, "kato_small", what).get<bool>();
  r.truncation_radius = num(j, "truncation_radius", what);
  r.support_radius = num(j, "support_radius", what);
  r.signs_window_only = member(j, "signs_window_only", what).get<bool>();
  r.warnings = member(j, "warnings", what).get<std::vector<std::string>>();
  return r;
}

json to_json(const FunctionalSnapshot& s) {
  return {{"t", s.t},
          {"mass", number_to_json(s.mass)},
          {"grad_sq", number_to_json(s.grad_sq)},
          {"pot_term", number_to_json(s.pot_term)},
          {"h_half_sq", number_to_json(s.h_half_sq)},
          {"lp1", number_to_json(s.lp1)},
          {"energy_v", number_to_json(s.energy_v)},
          {"k_functional", number_to_json(s.k_functional)}};
}

FunctionalSnapshot snapshot_from_json(const json& j) {
  const char* what = "snapshot";
  FunctionalSnapshot s;
  s.t = num(j, "t", what);
  s.mass = num(j, "mass", what);
  s.grad_sq = num(j, "grad_sq", what);
  s.pot_term = num(j, "pot_term", what);
  s.h_half_sq = num(j, "h_half_sq", what);
  s.lp1 = num(j, "lp1", what);
  s.energy_v = num(j, "energy_v", what);
  s.k_functional = num(j, "k_functional", what);
  return s;
}

json to_json(const ThresholdReport& r) {
  json trace = json::array();
  for (const auto& h : r.hypothesis_trace)
    trace.push_back({{"condition", h.condition}, {"value", h.value}, {"satisfied", h.satisfied}});
  return {{"verdict", to_string(r.verdict)},
          {"branch", r.branch},
          {"qualifier", r.qualifier},
          {"ratios",
           {{"me_ratio", number_to_json(r.ratios.me_ratio)},
            {"grad_ratio", number_to_json(r.ratios.grad_ratio)},
            {"h_ratio", number_to_json(r.ratios.h_ratio)},
            {"negative_energy", r.ratios.negative_energy}}},
          {"snapshot", to_json(r.snapshot)},
          {"potential", to_json(r.potential)},
          {"data_radial", r.data_radial},
          {"finite_variance", r.finite_variance},
          {"hypothesis_trace", trace}};
}

ThresholdReport threshold_report_from_json(const json& j) {
  const char* what = "threshold report";
  ThresholdReport r;
  r.verdict = verdict_from_string(member(j, "verdict", what).get<std::string>());
  r.branch = member(j, "branch", what).get<std::string>();
  r.qualifier = member(j, "qualifier", what).get<std::string>();
  const json& ratios = member(j, "ratios", what);
  r.ratios.me_ratio = num(ratios, "me_ratio", what);
  r.ratios.grad_ratio = num(ratios, "grad_ratio", what);
  r.ratios.h_ratio = num(ratios, "h_ratio", what);
  r.ratios.negative_energy = member(ratios, "negative_energy", what).get<bool>();
  r.snapshot = snapshot_from_json(member(j, "snapshot", what));
  r.potential = potential_report_from_json(member(j, "potential", what));
  r.data_radial = member(j, "data_radial", what).get<bool>();
  r.finite_variance = member(j, "finite_variance", what).get<bool>();
  for (const auto& h : member(j, "hypothesis_trace", what))
    r.hypothesis_trace.push_back({h.at("condition").get<std::string>(), h.at("value").get<std::string>(),
                                  h.at("satisfied").get<bool>()});
  return r;
}

json to_json(const ScatteringDiagnostic& d) {
  return {{"verdict", to_string(d.verdict)},
          {"min_localized_mass", number_to_json(d.min_localized_mass)},
          {"eps_sq", d.eps_sq},
          {"min_lp1_fraction", number_to_json(d.min_lp1_fraction)},
          {"reason", d.reason}};
}

ScatteringDiagnostic scattering_diagnostic_from_json(const json& j) {
  const char* what = "scattering diagnostic";
  ScatteringDiagnostic d;
  const std::string v = member(j, "verdict", what).get<std::string>();
  if (v == "pass") d.verdict = DiagnosticVerdict::Pass;
  else if (v == "fail") d.verdict = DiagnosticVerdict::Fail;
  else if (v == "inconclusive") d.verdict = DiagnosticVerdict::Inconclusive;
  else throw ValidationError("scattering diagnostic: unknown verdict '" + v + "'");
  d.min_localized_mass = num(j, "min_localized_mass", what);
  d.eps_sq = num(j, "eps_sq", what);
  d.min_lp1_fraction = num(j, "min_lp1_fraction", what);
  d.reason = member(j, "reason", what).get<std::string>();
  return d;
}

json trace_summary(const EvolutionTrace& tr, const GridSpec& grid) {
  json j{{"p", tr.p},
         {"grid", to_json(grid)},
         {"potential", to_json(tr.potential)},
         {"config", to_json(tr.config)},
         {"terminal", to_string(tr.terminal)},
         {"terminal_time", tr.terminal_time},
         {"blowup_rule", tr.blowup_rule},
         {"steps", tr.steps},
         {"snapshots", tr.snapshots.size()},
         {"max_mass_drift", number_to_json(tr.max_mass_drift)},
         {"max_energy_drift", number_to_json(tr.max_energy_drift)}};
  j["wall_contamination_time"] = tr.wall_contamination_time ? json(*tr.wall_contamination_time) : json(nullptr);
  return j;
}

// ---- CSV ------------------------------------------------------------------

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& os, const EvolutionTrace& tr) {
  os << "t,mass,grad_sq,pot_term,lp1,energy_v,k_functional,localized_mass,dt\n";
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    const auto& s = tr.snapshots[i];
    os << format_double(s.t) << ',' << format_double(s.mass) << ',' << format_double(s.grad_sq) << ','
       << format_double(s.pot_term) << ',' << format_double(s.lp1) << ',' << format_double(s.energy_v) << ','
       << format_double(s.k_functional) << ',' << format_double(tr.localized_mass[i]) << ','
       << format_double(tr.dt[i]) << '\n';
  }
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return k;
  throw ValidationError("csv: no column '" + name + "'");
}

std::vector<double> CsvTable::numeric(const std::string& name) const {
  const std::size_t k = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const std::string& cell = row.at(k);
    if (cell == "inf") out.push_back(kInf);
    else if (cell == "-inf") out.push_back(-kInf);
    else if (cell == "nan" || cell.empty()) out.push_back(std::nan(""));
    else {
      double x = 0.0;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw ValidationError("csv: non-numeric cell '" + cell + "' in column " + name);
      out.push_back(x);
    }
  }
  return out;
}

namespace {
std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}
}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("csv: empty input");
  t.header = split_line(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != t.header.size()) throw ValidationError("csv: ragged row");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

void write_csv(std::ostream& os, const CsvTable& t) {
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << quote(cells[k]);
    os << '\n';
  };
  emit(t.header);
  for (const auto& row : t.rows) emit(row);
}

// ---- binary fields --------------------------------------------------------

namespace {
constexpr char kMagic[4] = {'N', 'L', 'S', 'F'};
constexpr std::uint32_t kFieldsVersion = 1;

template <class T>
void put(std::ostream& os, const T& x) {
  os.write(reinterpret_cast<const char*>(&x), sizeof x);
}
template <class T>
T get(std::istream& is) {
  T x{};
  if (!is.read(reinterpret_cast<char*>(&x), sizeof x)) throw ValidationError("fields: truncated file");
  return x;
}
}  // namespace

void write_fields(std::ostream& os, const std::vector<double>& times, const std::vector<RadialField>& fields) {
  if (times.size() != fields.size()) throw ValidationError("fields: times and fields differ in length");
  os.write(kMagic, 4);
  put(os, kFieldsVersion);
  const RadialGrid grid = fields.empty() ? RadialGrid(1.0, RadialGrid::kMinNodes) : fields.front().grid();
  put(os, grid.r_max());
  put(os, static_cast<std::uint64_t>(grid.size()));
  put(os, static_cast<std::uint64_t>(fields.size()));
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (!(fields[i].grid() == grid)) throw ValidationError("fields: mixed grids");
    put(os, times[i]);
    os.write(reinterpret_cast<const char*>(fields[i].values().data()),
             static_cast<std::streamsize>(grid.size() * sizeof(cplx)));
  }
}

FieldSeries read_fields(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::string(magic, 4) != std::string(kMagic, 4)) throw ValidationError("fields: bad magic");
  if (get<std::uint32_t>(is) != kFieldsVersion) throw ValidationError("fields: unsupported version");
  const double r_max = get<double>(is);
  const auto n = get<std::uint64_t>(is);
  const auto count = get<std::uint64_t>(is);
  const RadialGrid grid(r_max, n);
  FieldSeries out;
  for (std::uint64_t i = 0; i < count; ++i) {
    out.times.push_back(get<double>(is));
    std::vector<cplx> v(n);
    if (!is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(cplx))))
      throw ValidationError("fields: truncated file");
    out.fields.emplace_back(grid, std::move(v));
  }
  return out;
}

// ---- files ----------------------------------------------------------------

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw ValidationError("write failed for " + path.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace nlslab
