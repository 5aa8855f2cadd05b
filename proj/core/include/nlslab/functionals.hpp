#pragma once

#include <optional>

#include "nlslab/grid.hpp"
#include "nlslab/groundstate.hpp"
#include "nlslab/potentials.hpp"

namespace nlslab {

struct FunctionalSnapshot {
  double t = 0.0;
  double mass = 0.0;
  double grad_sq = 0.0;
  double pot_term = 0.0;   // integral of V |u|^2
  double h_half_sq = 0.0;  // grad_sq + pot_term
  double lp1 = 0.0;        // ||u||_{p+1}^{p+1}
  double energy_v = 0.0;
  double k_functional = 0.0;  // grad_sq - 3(p-1)/(2(p+1)) lp1 + pot_term
};

FunctionalSnapshot snapshot(const RadialField& u, const PotentialSamples& v, double p, double t = 0.0);
FunctionalSnapshot snapshot(const RadialField& u, const PotentialSpec& v, double p, double t = 0.0);

// Threshold ratios against the ground state. For 7/3 < p < 5 they are the
// 1/s_c-th powers of the quotients of M^{1-s_c} E^{s_c} and
// ||u||^{1-s_c} ||grad u||^{s_c} by their ground state values:
//   me_ratio   = M^{(1-s_c)/s_c} E_V / (M_Q^{(1-s_c)/s_c} E0[Q])
//   grad_ratio = (M / M_Q)^{(1-s_c)/(2 s_c)} (grad_sq / grad_sq_Q)^{1/2}
// and h_ratio as grad_ratio with h_half_sq. Comparisons with 1 are
// unchanged and for u = lambda Q at p = 3 they read 3 lambda^4 - 2 lambda^6
// and lambda^2. At p = 7/3 (s_c = 0) the plain quotients are returned.
// me_ratio is negative exactly when E_V < 0; negative_energy flags that.
struct ThresholdRatios {
  double me_ratio = 0.0;
  double grad_ratio = 0.0;
  double h_ratio = 0.0;
  bool negative_energy = false;
};
ThresholdRatios threshold_products(const FunctionalSnapshot& s, const GroundState& gs);

// g(y) = 3(p-1)/(3p-7) y^2 - 4/(3p-7) y^{3(p-1)/2}; g(0) = 0, g(1) = 1.
double coercivity_g(double y, double p);

enum class Side { Below, Above };
struct CoercivityGap {
  double y;            // root of g(y) = me_ratio on the requested side
  double delta_prime;  // margin away from the ground state level
};
// Below: y in (0, 1], y = (1 - 2 delta')^{2/(3p-7)}.
// Above: y in [1, y_max), y = (1 + delta')^{2(p-1)/(3p-7)}, where
// g(y_max) = 0.
CoercivityGap coercivity_gap(double me_ratio, double p, Side side);

// Lower-bound constant c in grad_sq - 3(p-1)/(2(p+1)) lp1 >= c lp1 for
// below-threshold data: 3(p-1) delta' / ((p+1)(1 - 2 delta')).
double coercivity_constant(double delta_prime, double p);

// delta = 3(p-1)/2 eps_1 with
// eps_1 = ((M_Q/M)^{(1-s_c)/s_c} E0[Q] - E_V) / 2; the k functional of a
// solution above the gradient threshold stays below -delta.
double k_functional_margin(const FunctionalSnapshot& s0, const GroundState& gs);

// theta_q = 2(q - (p+1)) / ((p+1)(q-2)).
double theta_q(double q, double p);

struct HardyResult {
  double lhs;
  double rhs;
  bool pass;
};
// integral |u|^2 / |x|^q vs (2/(3-q))^q ||u||^{2-q} ||grad u||^q.
HardyResult hardy_check(const RadialField& u, double q);

struct RadialSobolevResult {
  double quotient;  // NaN when zero_over_zero
  bool zero_over_zero;
  double numerator;
  double denominator;
};
// Exterior quotient on r >= R:
// ||u||_{p+1}^{p+1} / (R^{-(p-1)} ||u||_2^{(p+3)/2} ||grad u||_2^{(p-1)/2}).
RadialSobolevResult radial_sobolev_check(const RadialField& u, double R, double p);

}  // namespace nlslab
