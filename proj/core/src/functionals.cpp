#include "nlslab/functionals.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nlslab/error.hpp"

namespace nlslab {

FunctionalSnapshot snapshot(const RadialField& u, const PotentialSamples& v, double p, double t) {
  const RadialGrid& grid = u.grid();
  if (v.v.size() != grid.size()) throw ValidationError("snapshot: potential sampled on a different grid");
  FunctionalSnapshot s;
  s.t = t;
  const auto dens = u.abs_sq();
  s.mass = integrate3d(grid, dens);
  s.grad_sq = gradient_sq_norm(u);
  if (!v.zero) {
    std::vector<double> vd(dens.size());
    for (std::size_t j = 0; j < vd.size(); ++j) vd[j] = v.v[j] * dens[j];
    s.pot_term = integrate3d(grid, vd);
  }
  s.h_half_sq = s.grad_sq + s.pot_term;
  s.lp1 = integrate3d(grid, u.abs_pow(p + 1.0));
  s.energy_v = s.h_half_sq / 2.0 - s.lp1 / (p + 1.0);
  s.k_functional = s.grad_sq - 3.0 * (p - 1.0) / (2.0 * (p + 1.0)) * s.lp1 + s.pot_term;
  return s;
}

FunctionalSnapshot snapshot(const RadialField& u, const PotentialSpec& v, double p, double t) {
  return snapshot(u, sample(v, u.grid()), p, t);
}

ThresholdRatios threshold_products(const FunctionalSnapshot& s, const GroundState& gs) {
  ThresholdRatios r;
  r.negative_energy = s.energy_v < 0.0;
  const double sc = gs.s_c;
  if (sc == 0.0) {
    r.me_ratio = s.mass / gs.mass;
    r.grad_ratio = std::sqrt(s.mass / gs.mass);
    r.h_ratio = r.grad_ratio;
    return r;
  }
  const double mpow = std::pow(s.mass / gs.mass, (1.0 - sc) / sc);
  r.me_ratio = mpow * s.energy_v / gs.energy0;
  r.grad_ratio = std::sqrt(mpow * s.grad_sq / gs.grad_sq);
  r.h_ratio = s.h_half_sq >= 0.0 ? std::sqrt(mpow * s.h_half_sq / gs.grad_sq) : -1.0;
  return r;
}

double coercivity_g(double y, double p) {
  if (is_mass_critical(p)) throw ValidationError("coercivity function undefined at p = 7/3");
  const double d = 3.0 * p - 7.0;
  return 3.0 * (p - 1.0) / d * y * y - 4.0 / d * std::pow(y, 1.5 * (p - 1.0));
}

CoercivityGap coercivity_gap(double me_ratio, double p, Side side) {
  require_exponent(p);
  if (is_mass_critical(p)) throw ValidationError("coercivity gap undefined at p = 7/3");
  if (!(me_ratio < 1.0)) throw ValidationError("not below threshold: me_ratio >= 1");
  const double d = 3.0 * p - 7.0;
  double lo, hi;
  if (side == Side::Below) {
    lo = 0.0;
    hi = 1.0;
  } else {
    lo = 1.0;
    hi = std::pow(3.0 * (p - 1.0) / 4.0, 2.0 / d);
  }
  // g increases on (0, 1) and decreases on (1, y_max) with g(y_max) = 0.
  const double f_lo = coercivity_g(lo, p) - me_ratio;
  const double f_hi = coercivity_g(hi, p) - me_ratio;
  if (f_lo * f_hi > 0.0) {
    std::ostringstream os;
    os << "coercivity gap: no root of g(y) = " << me_ratio << " on the " << (side == Side::Below ? "below" : "above")
       << " side";
    throw NumericalError(os.str());
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f = coercivity_g(mid, p) - me_ratio;
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  CoercivityGap gap{0.5 * (lo + hi), 0.0};
  if (side == Side::Below) {
    gap.delta_prime = 0.5 * (1.0 - std::pow(gap.y, d / 2.0));
  } else {
    gap.delta_prime = std::pow(gap.y, d / (2.0 * (p - 1.0))) - 1.0;
  }
  return gap;
}

double coercivity_constant(double delta_prime, double p) {
  return 3.0 * (p - 1.0) * delta_prime / ((p + 1.0) * (1.0 - 2.0 * delta_prime));
}

double k_functional_margin(const FunctionalSnapshot& s0, const GroundState& gs) {
  const double sc = gs.s_c;
  if (sc == 0.0) throw ValidationError("k functional margin undefined at p = 7/3");
  const double eps1 = 0.5 * (std::pow(gs.mass / s0.mass, (1.0 - sc) / sc) * gs.energy0 - s0.energy_v);
  return 1.5 * (gs.p - 1.0) * eps1;
}

double theta_q(double q, double p) { return 2.0 * (q - (p + 1.0)) / ((p + 1.0) * (q - 2.0)); }

HardyResult hardy_check(const RadialField& u, double q) {
  if (!(q >= 0.0 && q <= 2.0)) throw ValidationError("hardy_check: q must lie in [0, 2]");
  const RadialGrid& grid = u.grid();
  const auto dens = u.abs_sq();
  std::vector<double> g(dens.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = dens[j] * std::pow(grid.node(j), 2.0 - q);
  HardyResult res;
  res.lhs = 4.0 * std::numbers::pi * integrate_radial(grid, g);
  const double m = integrate3d(grid, dens);
  const double gs = q == 0.0 ? 1.0 : std::pow(gradient_sq_norm(u), q / 2.0);
  res.rhs = std::pow(2.0 / (3.0 - q), q) * std::pow(m, (2.0 - q) / 2.0) * gs;
  res.pass = res.lhs <= res.rhs * (1.0 + 1e-8);
  return res;
}

RadialSobolevResult radial_sobolev_check(const RadialField& u, double R, double p) {
  const RadialGrid& grid = u.grid();
  if (!(R > 0.0 && R < grid.r_max() / 2.0)) throw ValidationError("radial_sobolev_check: R must lie in (0, r_max/2)");
  const double rmax = grid.r_max();
  const double num = integrate3d_shell(grid, u.abs_pow(p + 1.0), R, rmax);
  const double m = integrate3d_shell(grid, u.abs_sq(), R, rmax);
  const auto du = derivative(u);
  std::vector<double> g(du.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = std::norm(du[j]);
  const double gr = integrate3d_shell(grid, g, R, rmax);
  RadialSobolevResult res;
  res.numerator = num;
  res.denominator = std::pow(R, -(p - 1.0)) * std::pow(m, (p + 3.0) / 4.0) * std::pow(gr, (p - 1.0) / 4.0);
  res.zero_over_zero = res.denominator == 0.0;
  res.quotient = res.zero_over_zero ? std::numeric_limits<double>::quiet_NaN() : num / res.denominator;
  return res;
}

}  // namespace nlslab
