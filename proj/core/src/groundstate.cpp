#include "nlslab/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "nlslab/error.hpp"

namespace nlslab {

bool is_mass_critical(double p) { return std::abs(p - kMassCriticalP) < 1e-12; }

void require_exponent(double p) {
  if (!std::isfinite(p) || (p < kMassCriticalP && !is_mass_critical(p)) || p >= 5.0) {
    std::ostringstream os;
    os << "exponent p = " << p << " outside [7/3, 5)";
    throw ValidationError(os.str());
  }
}

double criticality_index(double p) {
  if (is_mass_critical(p)) return 0.0;
  return 1.5 - 2.0 / (p - 1.0);
}

namespace {

enum class ShotKind { TooLarge, TooSmall };

struct Shot {
  std::vector<double> q;  // Q at grid nodes, up to (not including) the event
  ShotKind kind;
};

// One shot from Q(0) = a. Stops at the first node where Q < 0 (amplitude too
// large) or Q' > 0 with Q > 0 (amplitude too small). A shot that reaches
// r_max without either event never crossed zero and counts as too small.
Shot shoot(const RadialGrid& grid, double p, double a, int substeps) {
  const double h = grid.h();
  const double c2 = (a - std::pow(a, p)) / 6.0;
  const double c4 = (1.0 - p * std::pow(a, p - 1.0)) * c2 / 20.0;
  double Q = a + c2 * h * h + c4 * h * h * h * h;
  double P = 2.0 * c2 * h + 4.0 * c4 * h * h * h;

  auto accel = [p](double r, double q, double dq) {
    return q - q * std::pow(std::abs(q), p - 1.0) - 2.0 * dq / r;
  };

  Shot shot{{}, ShotKind::TooSmall};
  shot.q.reserve(grid.size());
  const double dr = h / substeps;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (j > 0) {
      double r = grid.node(j - 1);
      for (int s = 0; s < substeps; ++s) {
        const double k1q = P, k1p = accel(r, Q, P);
        const double k2q = P + 0.5 * dr * k1p, k2p = accel(r + 0.5 * dr, Q + 0.5 * dr * k1q, k2q);
        const double k3q = P + 0.5 * dr * k2p, k3p = accel(r + 0.5 * dr, Q + 0.5 * dr * k2q, k3q);
        const double k4q = P + dr * k3p, k4p = accel(r + dr, Q + dr * k3q, k4q);
        Q += dr / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        P += dr / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        r += dr;
      }
    }
    if (!std::isfinite(Q) || Q < 0.0) {
      shot.kind = ShotKind::TooLarge;
      return shot;
    }
    if (P > 0.0) {
      shot.kind = ShotKind::TooSmall;
      return shot;
    }
    shot.q.push_back(Q);
  }
  return shot;
}

// Below this size Q is in the linear regime and decays like e^{-r}/r.
constexpr double kDecayFloor = 1e-12;
// Relative separation of the bracketing shots at which the profile switches
// to the linear tail.
constexpr double kSplitTolerance = 1e-6;
constexpr double kResidualTolerance = 1e-6;

}  // namespace

double gn_quotient(double lp1, double mass, double grad_sq, double p) {
  return lp1 / (std::pow(mass, (5.0 - p) / 4.0) * std::pow(grad_sq, 3.0 * (p - 1.0) / 4.0));
}

GroundState solve_ground_state(const RadialGrid& grid, double p, double tol) {
  ShootingOptions opts;
  opts.tol = tol;
  return solve_ground_state(grid, p, opts);
}

GroundState solve_ground_state(const RadialGrid& grid, double p, const ShootingOptions& opts) {
  require_exponent(p);
  if (!(opts.tol >= 1e-12 && opts.tol <= 1e-4)) throw ValidationError("ground state: tol outside [1e-12, 1e-4]");
  if (!(opts.scan_start > 0.0) || !(opts.scan_factor > 1.0) || opts.substeps < 1) {
    throw ValidationError("ground state: invalid shooting options");
  }

  // Bracket scan. The search stops at ten times a generous initial guess.
  const double a_limit = 10.0 * std::max(5.0, opts.scan_start);
  double a_lo = opts.scan_start;
  ShotKind first = shoot(grid, p, a_lo, opts.substeps).kind;
  double a_hi = a_lo;
  bool found = false;
  while (a_hi < a_limit) {
    const double next = a_hi * opts.scan_factor;
    if (shoot(grid, p, next, opts.substeps).kind != first) {
      a_lo = a_hi;
      a_hi = next;
      found = true;
      break;
    }
    a_hi = next;
  }
  if (!found) throw NumericalError("no ground state bracket");
  if (first == ShotKind::TooLarge) std::swap(a_lo, a_hi);  // keep a_lo too small

  // Bisect to the resolution of double precision; tol only decides
  // acceptance.
  for (;;) {
    const double mid = 0.5 * (a_lo + a_hi);
    if (mid == a_lo || mid == a_hi) break;
    (shoot(grid, p, mid, opts.substeps).kind == ShotKind::TooLarge ? a_hi : a_lo) = mid;
  }
  const double amplitude = 0.5 * (a_lo + a_hi);
  if (std::abs(a_hi - a_lo) > opts.tol * amplitude) throw NumericalError("ground state: bisection did not converge");

  const Shot lo = shoot(grid, p, a_lo, opts.substeps);
  const Shot hi = shoot(grid, p, a_hi, opts.substeps);
  const std::size_t common = std::min(lo.q.size(), hi.q.size());
  std::size_t m = 0;
  while (m < common) {
    const double mid = 0.5 * (lo.q[m] + hi.q[m]);
    if (std::abs(hi.q[m] - lo.q[m]) > kSplitTolerance * mid) break;
    ++m;
  }
  if (m == 0) throw NumericalError("ground state: bracketing shots separate at the first node");
  const std::size_t match = m - 1;
  const double q_match = 0.5 * (lo.q[match] + hi.q[match]);
  const double r_match = grid.node(match);
  if (match + 1 < grid.size() && std::pow(q_match, p - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "ground state: shots separate at r = " << r_match << " before the linear regime";
    throw NumericalError(os.str());
  }

  std::vector<double> q(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (j <= match) {
      q[j] = 0.5 * (lo.q[j] + hi.q[j]);
    } else {
      const double r = grid.node(j);
      q[j] = q_match * (r_match / r) * std::exp(-(r - r_match));
    }
  }
  if (q.back() >= kDecayFloor) throw NumericalError("ground state: profile does not decay below 1e-12 before r_max");
  for (std::size_t j = 0; j + 1 < q.size() && q[j] >= kDecayFloor; ++j) {
    if (!(q[j] > 0.0) || !(q[j + 1] < q[j])) {
      std::ostringstream os;
      os << "ground state: profile not positive and decreasing at r = " << grid.node(j);
      throw NumericalError(os.str());
    }
  }

  RadialField profile = RadialField::from_real(grid, q);
  std::vector<double> qp1(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) qp1[j] = std::pow(q[j], p + 1.0);

  GroundState gs{p, profile, amplitude, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  gs.mass = integrate3d(grid, profile.abs_sq());
  gs.grad_sq = gradient_sq_norm(profile);
  gs.lp1 = integrate3d(grid, qp1);
  gs.energy0 = gs.grad_sq / 2.0 - gs.lp1 / (p + 1.0);
  gs.s_c = criticality_index(p);
  gs.pohozaev_mass_residual = std::abs(gs.lp1 * (5.0 - p) / (2.0 * (p + 1.0)) - gs.mass) / gs.mass;
  gs.pohozaev_grad_residual =
      std::abs(gs.lp1 * 3.0 * (p - 1.0) / (2.0 * (p + 1.0)) - gs.grad_sq) / gs.grad_sq;
  gs.energy_identity_residual =
      std::abs(gs.energy0 - (3.0 * p - 7.0) / (6.0 * (p - 1.0)) * gs.grad_sq) / gs.grad_sq;
  if (gs.pohozaev_mass_residual > kResidualTolerance || gs.pohozaev_grad_residual > kResidualTolerance ||
      gs.energy_identity_residual > kResidualTolerance) {
    std::ostringstream os;
    os.precision(3);
    os << "profile rejected: Pohozaev residuals " << gs.pohozaev_mass_residual << ", "
       << gs.pohozaev_grad_residual << ", energy identity residual " << gs.energy_identity_residual;
    throw NumericalError(os.str());
  }
  // At the mass-critical exponent E0 is zero and s_c is zero; 0^0 = 1.
  gs.threshold_me = gs.s_c == 0.0 ? gs.mass : std::pow(gs.mass, 1.0 - gs.s_c) * std::pow(gs.energy0, gs.s_c);
  gs.threshold_grad = std::pow(gs.mass, (1.0 - gs.s_c) / 2.0) * std::pow(gs.grad_sq, gs.s_c / 2.0);
  gs.cgn = sharp_gn_constant(gs);
  return gs;
}

double sharp_gn_constant(const GroundState& gs) {
  const double p = gs.p;
  const double c = 2.0 * (p + 1.0) / (3.0 * (p - 1.0)) * std::pow(gs.mass, -(5.0 - p) / 4.0) *
                   std::pow(gs.grad_sq, -(3.0 * p - 7.0) / 4.0);
  const double attained = gn_quotient(gs.lp1, gs.mass, gs.grad_sq, p);
  if (!(std::abs(attained - c) <= 1e-6 * c)) {
    std::ostringstream os;
    os.precision(10);
    os << "GN attainment violated: constant " << c << ", quotient at Q " << attained;
    throw NumericalError(os.str());
  }
  return c;
}

RadialField rescale(const RadialField& u, double lambda, double p) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("rescale: lambda must be positive");
  require_exponent(p);
  const RadialGrid& grid = u.grid();
  const std::size_t n = grid.size();
  const double h = grid.h();
  auto vals = u.values();
  if (lambda == 1.0) return u;

  const auto dens = u.abs_sq();
  const double total = integrate3d(grid, dens);
  if (total > 0.0) {
    if (lambda < 1.0) {
      const double lost = integrate3d_shell(grid, dens, lambda * grid.r_max(), grid.r_max());
      if (lost > 0.5 * total) throw NumericalError("resample underresolved: support leaves the grid");
    } else {
      // Radius holding all but 1e-8 of the mass must stay above 8 cells.
      double support = grid.r_max();
      for (std::size_t j = n; j-- > 0;) {
        if (integrate3d_shell(grid, dens, grid.node(j), grid.r_max()) > 1e-8 * total) {
          support = grid.node(j);
          break;
        }
      }
      if (support / lambda < 8.0 * h) throw NumericalError("resample underresolved: data narrower than 8 cells");
    }
  }

  // w = r u with odd reflection at r = 0 and r = r_max.
  const auto N = static_cast<std::ptrdiff_t>(n);
  auto W = [&](std::ptrdiff_t k) -> cplx {
    double sign = 1.0;
    if (k < 0) {
      k = -k;
      sign = -1.0;
    } else if (k > N + 1) {
      k = 2 * (N + 1) - k;
      sign = -1.0;
    }
    if (k == 0 || k == N + 1) return 0.0;
    return sign * static_cast<double>(k) * h * vals[static_cast<std::size_t>(k - 1)];
  };

  const double amp = std::pow(lambda, 2.0 / (p - 1.0));
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = lambda * grid.node(j);
    if (x >= grid.r_max()) continue;
    const double s = x / h;
    const auto k = static_cast<std::ptrdiff_t>(std::floor(s));
    const double t = s - static_cast<double>(k);
    // Cubic Lagrange through k-1, k, k+1, k+2.
    const double l0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    const double l1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    const double l2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    const double l3 = (t + 1.0) * t * (t - 1.0) / 6.0;
    const cplx w = l0 * W(k - 1) + l1 * W(k) + l2 * W(k + 1) + l3 * W(k + 2);
    out[j] = amp * w / x;
  }
  return RadialField(grid, std::move(out));
}

}  // namespace nlslab
