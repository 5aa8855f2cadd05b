#pragma once

#include <string>
#include <vector>

#include "nlslab/evolution.hpp"
#include "nlslab/io.hpp"

namespace nlslab {

struct NamedPotential {
  std::string id;
  PotentialSpec spec;
};

// Cells are p x lambda x potential, initial data lambda Q_p.
struct SweepPlan {
  std::vector<double> p;
  std::vector<double> lambdas;
  std::vector<NamedPotential> potentials;  // empty means V = 0 only
  GridSpec grid;
  EvolveConfig config;
  double R = 10.0;         // evacuation radius
  double eps_frac = 0.1;   // eps^2 = eps_frac * M[u0]
  std::string output_dir;
  unsigned threads = 0;    // 0 picks the machine parallelism

  void validate() const;
};

json to_json(const SweepPlan& plan);
SweepPlan sweep_plan_from_json(const json& j);

struct SweepRow {
  double p = 0.0;
  double lambda = 0.0;
  std::string potential_id;
  double me_ratio = 0.0;
  double grad_ratio = 0.0;
  double h_ratio = 0.0;
  std::string verdict;   // empty when the cell failed before classification
  std::string terminal;  // empty when the cell failed before evolution
  double terminal_time = 0.0;
  std::string evac;      // pass, fail, inconclusive, or n/a after blow-up
  bool near_threshold = false;  // |me_ratio - 1| < 0.05
  std::string agreement;        // agree, disagree or n/a
  std::string error;
};

// Rows in plan order (p outermost, then lambda, then potential).
std::vector<SweepRow> run_sweep(const SweepPlan& plan);

// Classification and outcome columns, then near_threshold, agreement, terminal_time, error.
CsvTable agreement_table(const std::vector<SweepRow>& rows);

}  // namespace nlslab
