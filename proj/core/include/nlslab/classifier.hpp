#pragma once

#include <string>
#include <vector>

#include "nlslab/functionals.hpp"
#include "nlslab/groundstate.hpp"
#include "nlslab/potentials.hpp"

namespace nlslab {

enum class Verdict {
  Scatters,
  GlobalBounded,  // below both thresholds with V >= 0, other V conditions fail
  BlowUpOrGrowUp,
  BlowUp,
  NegativeEnergyBlowUpOrGrowUp,  // p = 7/3, E_V < 0
  NegativeEnergyBlowUp,
  Indeterminate,
};

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct HypothesisCheck {
  std::string condition;
  std::string value;
  bool satisfied;
};

struct ThresholdReport {
  FunctionalSnapshot snapshot;
  ThresholdRatios ratios;
  PotentialReport potential;
  bool data_radial = true;
  bool finite_variance = false;
  Verdict verdict = Verdict::Indeterminate;
  std::string branch;     // "scattering", "blow-up", "mass-critical", or "none"
  std::string qualifier;  // nonempty when a sign condition is verified on the window only
  std::vector<HypothesisCheck> hypothesis_trace;
};

// Finite-variance probe: integral of r^4 |u|^2 dr over dyadic shells must
// shrink at the outer edge of the grid.
bool finite_variance(const RadialField& u);

// Relative change of the mass when the every-other-node trapezoid rule
// replaces the full one; large values mean the data is not resolved.
double mass_resolution_defect(const RadialField& u);

ThresholdReport classify(const RadialField& u0, const PotentialSpec& v, double p, const GroundState& gs,
                         double sigma = 2.0);

}  // namespace nlslab
