#pragma once

#include "nlslab/grid.hpp"

namespace nlslab {

// Exponent range handled here: 7/3 <= p < 5.
inline constexpr double kMassCriticalP = 7.0 / 3.0;
bool is_mass_critical(double p);
void require_exponent(double p);

// s_c = 3/2 - 2/(p - 1); zero at the mass-critical exponent.
double criticality_index(double p);

struct GroundState {
  double p;
  RadialField profile;
  double amplitude;  // Q(0) found by shooting
  double mass;
  double grad_sq;
  double lp1;
  double energy0;
  double cgn;
  double s_c;
  double threshold_me;    // M^(1 - s_c) E0^(s_c)
  double threshold_grad;  // ||Q||^(1 - s_c) ||grad Q||^(s_c)
  double pohozaev_mass_residual;
  double pohozaev_grad_residual;
  double energy_identity_residual;
};

struct ShootingOptions {
  double tol = 1e-10;       // bracket width relative to the amplitude
  double scan_start = 1.0;  // first amplitude of the bracket scan
  double scan_factor = 1.5;
  int substeps = 8;         // RK4 steps per grid interval
};

// Positive radial solution of Q'' + (2/r) Q' - Q + Q^p = 0 by shooting on
// Q(0). Throws NumericalError("no ground state bracket") or
// NumericalError("profile rejected: ...") when the self-checks fail.
GroundState solve_ground_state(const RadialGrid& grid, double p, const ShootingOptions& opts);
GroundState solve_ground_state(const RadialGrid& grid, double p, double tol = 1e-10);

// ||f||_{p+1}^{p+1} / (||f||_2^{(5-p)/2} ||grad f||_2^{3(p-1)/2}), from
// mass = ||f||_2^2 and grad_sq = ||grad f||_2^2.
double gn_quotient(double lp1, double mass, double grad_sq, double p);

// Sharp constant from the ground state norms; cross-checked against the GN
// quotient of Q itself.
double sharp_gn_constant(const GroundState& gs);

// lambda^{2/(p-1)} u(lambda r) resampled on u's grid by cubic interpolation
// of w = r u. Values past r_max are zero.
RadialField rescale(const RadialField& u, double lambda, double p);

}  // namespace nlslab
