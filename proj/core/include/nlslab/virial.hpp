#pragma once

#include <vector>

#include "nlslab/evolution.hpp"
#include "nlslab/weights.hpp"

namespace nlslab {

struct VirialConsistency {
  bool conclusive = false;
  double max_rel_err_I1 = 0.0;  // |dI/dt - I1| / scale1
  double max_rel_err_I2 = 0.0;  // |dI1/dt - I2| / scale2
  // Per snapshot, the larger of the two residuals; NaN at the end points.
  std::vector<double> fd_resid;
};

// Three-point finite differences on the (possibly nonuniform) snapshot
// times, compared with the identities at the interior snapshots. Needs at
// least 64 snapshots.
VirialConsistency virial_consistency(const VirialSeries& series);

// Series for w over a sequence of fields at the given times.
VirialSeries virial_series(const std::vector<double>& times, const std::vector<RadialField>& fields,
                           const PotentialSpec& v, double p, const Weight& w, double coupling = 1.0);

// Looks up the series recorded for w, or recomputes it from stored fields.
VirialSeries virial_series(const EvolutionTrace& trace, const Weight& w);
VirialConsistency virial_consistency(const EvolutionTrace& trace, const Weight& w);

// (1/T) int_0^T int_{|x| <= R/2} |u|^{p+1} dx dt, trapezoid over snapshots.
double morawetz_average(const EvolutionTrace& trace, double R, double T);

}  // namespace nlslab
