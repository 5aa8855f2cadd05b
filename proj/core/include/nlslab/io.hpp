#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlslab/classifier.hpp"
#include "nlslab/evolution.hpp"
#include "nlslab/groundstate.hpp"
#include "nlslab/initial_data.hpp"
#include "nlslab/potentials.hpp"

namespace nlslab {

using json = nlohmann::json;

// Non-finite doubles are written as the strings "inf", "-inf" and "nan".
json number_to_json(double x);
double number_from_json(const json& j);

// {"family": "...", "params": {...}}; tables use top-level "r", "v" and an
// optional "tail" ("zero" or "constant"); sums carry
// "terms": [{"coef": c, "potential": {...}}, ...].
json to_json(const PotentialSpec& v);
PotentialSpec potential_from_json(const json& j);

// {"kind": "lambdaQ", "lambda": ...} | {"kind": "gaussian", "amp", "width"}
// | {"kind": "table", "r", "re", "im"}.
json to_json(const InitialData& d);
InitialData initial_data_from_json(const json& j);

struct GridSpec {
  double r_max = 32.0;
  std::size_t n = 4096;
  RadialGrid make() const { return RadialGrid(r_max, n); }
};
json to_json(const GridSpec& g);
GridSpec grid_from_json(const json& j);

// Numeric fields only; weights are listed by name and R.
json to_json(const EvolveConfig& c);
EvolveConfig evolve_config_from_json(const json& j);

// Scalars of a ground state, without the profile.
struct GroundStateSummary {
  double p = 3.0;
  double amplitude = 0.0, mass = 0.0, grad_sq = 0.0, lp1 = 0.0, energy0 = 0.0, cgn = 0.0, s_c = 0.0;
  double threshold_me = 0.0, threshold_grad = 0.0;
  double pohozaev_mass_residual = 0.0, pohozaev_grad_residual = 0.0, energy_identity_residual = 0.0;
  GridSpec grid;
};
GroundStateSummary summarize(const GroundState& gs);
json to_json(const GroundStateSummary& s);
GroundStateSummary ground_state_summary_from_json(const json& j);

json to_json(const PotentialReport& r);
PotentialReport potential_report_from_json(const json& j);

json to_json(const FunctionalSnapshot& s);
FunctionalSnapshot snapshot_from_json(const json& j);

json to_json(const ThresholdReport& r);
ThresholdReport threshold_report_from_json(const json& j);

json to_json(const ScatteringDiagnostic& d);
ScatteringDiagnostic scattering_diagnostic_from_json(const json& j);

// Everything about a trace except the series: p, grid, potential, config,
// terminal, drifts, wall time.
json trace_summary(const EvolutionTrace& tr, const GridSpec& grid);

// Columns t, mass, grad_sq, pot_term, lp1, energy_v, k_functional,
// localized_mass, dt.
void write_trace_csv(std::ostream& os, const EvolutionTrace& tr);

// Generic CSV table: header names and numeric or text cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws if absent
  std::vector<double> numeric(const std::string& name) const;
};
CsvTable read_csv(std::istream& is);
void write_csv(std::ostream& os, const CsvTable& t);
std::string format_double(double x);  // shortest round-trip form

// Binary snapshot fields: "NLSF" magic, version, r_max, n, count, then per
// snapshot its time and 2n doubles (re, im interleaved).
void write_fields(std::ostream& os, const std::vector<double>& times, const std::vector<RadialField>& fields);
struct FieldSeries {
  std::vector<double> times;
  std::vector<RadialField> fields;
};
FieldSeries read_fields(std::istream& is);

json read_json_file(const std::filesystem::path& path);
// Writes to a sibling temporary and renames it into place, so a failure
// never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace nlslab
