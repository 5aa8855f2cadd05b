#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct ZeroPotential {};

// A exp(-r^2 / sigma^2).
struct GaussianBump {
  double amplitude;
  double sigma;
};

// A / (r^2 + r0^2). With a finite cutoff rc the profile is multiplied by
// 1 - S(r/rc - 1) (S the nonic smoothstep), so it is unchanged on [0, rc],
// decreases smoothly on [rc, 2 rc] and vanishes beyond 2 rc.
struct InverseSquare {
  double amplitude;
  double core;
  double cutoff = kInf;
};

// Piecewise linear through (r_k, v_k), constant v_0 on [0, r_0]. Beyond the
// last sample the potential is 0 (default) or keeps the last value.
struct TablePotential {
  enum class Tail { Zero, Constant };
  std::vector<double> r;
  std::vector<double> v;
  Tail tail = Tail::Zero;
};

class PotentialSpec;

struct PotentialSum {
  std::vector<double> coefficients;
  std::vector<PotentialSpec> terms;
};

class PotentialSpec {
 public:
  using Family = std::variant<ZeroPotential, GaussianBump, InverseSquare, TablePotential, PotentialSum>;

  PotentialSpec() : family_(ZeroPotential{}) {}
  PotentialSpec(Family family);  // validates parameters

  static PotentialSpec zero() { return {}; }
  static PotentialSpec gaussian(double amplitude, double sigma);
  static PotentialSpec inverse_square(double amplitude, double core, double cutoff = kInf);
  static PotentialSpec table(std::vector<double> r, std::vector<double> v,
                             TablePotential::Tail tail = TablePotential::Tail::Zero);
  static PotentialSpec sum(std::vector<std::pair<double, PotentialSpec>> terms);

  const Family& family() const { return family_; }
  std::string family_name() const;
  bool is_zero() const;

  double value(double r) const;
  // x . grad V = r V'(r), excluding the point masses of table jumps.
  double x_grad(double r) const;

  // Radius beyond which V vanishes identically; infinity if none.
  double support_radius() const;
  // |V| <= C r^{-d} and |x . grad V| <= C r^{-d'} at infinity. Infinity for
  // compact support or faster than any power.
  double decay_power() const;
  double xgrad_decay_power() const;
  // Radii where V or V' is not smooth (table knots, cutoff ends).
  std::vector<double> breakpoints() const;
  // Jump discontinuities (radius, V(r+) - V(r-)); they put point masses
  // into x . grad V.
  std::vector<std::pair<double, double>> jumps() const;

 private:
  Family family_;
};

// lambda^2 V(lambda r). Every family is closed under this map.
PotentialSpec dilate(const PotentialSpec& v, double lambda);

// Potential and x . grad V sampled at the grid nodes.
struct PotentialSamples {
  std::vector<double> v;
  std::vector<double> x_grad;
  bool zero = true;
};
PotentialSamples sample(const PotentialSpec& v, const RadialGrid& grid);

struct PotentialReport {
  double kato_norm = 0.0;
  double kato_neg = 0.0;
  bool in_K0 = true;
  double l32_norm = 0.0;  // +inf when divergent
  double sigma = 2.0;
  double lsigma_norm = 0.0;
  bool nonneg = true;
  bool xgradV_nonpos = true;
  bool xgradV_nonneg = true;
  bool condition_2V = true;
  double xgradV_l32 = 0.0;
  bool kato_small = true;
  // Sign flags are sampled on [0, truncation_radius]. When V is not
  // identically zero beyond that radius they are verified only there.
  double truncation_radius = 0.0;
  double support_radius = 0.0;
  bool signs_window_only = false;
  std::vector<std::string> warnings;
};

// Global Kato norm of |V| (sup over s in {0} and the grid nodes).
double kato_norm(const PotentialSpec& v, const RadialGrid& grid);
// Same for the negative part V_- = max(-V, 0).
double kato_norm_negative(const PotentialSpec& v, const RadialGrid& grid);
// || g ||_{L^q(R^3)} for g = V (which = Value) or g = x . grad V (XGrad).
enum class Quantity { Value, XGrad };
double lq_norm(const PotentialSpec& v, const RadialGrid& grid, double q, Quantity which = Quantity::Value);

PotentialReport analyze(const PotentialSpec& v, const RadialGrid& grid, double sigma = 2.0);

struct Remark14Result {
  bool pass = true;
  std::optional<double> first_violation;  // radius of the first failing node
};
// V(r_j) >= V(1) / r_j^2 - 1e-10 at every node r_j >= 1. Requires the
// report to have nonneg and condition_2V.
Remark14Result remark14_check(const PotentialSpec& v, const RadialGrid& grid);

}  // namespace nlslab
