#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "nlslab/grid.hpp"
#include "nlslab/potentials.hpp"

namespace nlslab {

enum class WeightKind { Unweighted, Chi, W, Psi, F };

const char* to_string(WeightKind k);
WeightKind weight_kind_from_string(const std::string& s);

// Radial virial weight omega_R(r) = R^e phi(r / R), built from piecewise
// polynomials; transition annuli use the nonic smoothstep so omega is C^4.
//   Unweighted: r^2.
//   Chi (e = 0): 1 on [0, R/2], 0 on [R, inf).
//   W   (e = 2): r^2 on [0, R], omega'' = 2(1 - S(r/R - 1)) on [R, 2R],
//                3 R r - (25/11) R^2 on [2R, inf).
//   F   (e = 2): W / 2, so 1 - F'' >= 0 and F = (3/2) R r - (25/22) R^2 on
//                [2R, inf).
//   Psi (e = 2): r^2 on [0, R], 0 on [3R, inf), Psi'' <= 2, Psi >= 0.
class Weight {
 public:
  explicit Weight(WeightKind kind, double R = 1.0);

  WeightKind kind() const { return kind_; }
  double R() const { return R_; }
  std::string name() const;

  // omega and its radial derivatives of order 1..4 at r.
  std::array<double, 5> eval(double r) const;

  // Samples of the five derivative orders at the grid nodes.
  std::array<std::vector<double>, 5> sample(const RadialGrid& grid) const;

 private:
  WeightKind kind_;
  double R_;
};

struct VirialValues {
  double I = 0.0;
  double I1 = 0.0;
  double I2 = 0.0;
  double scale1 = 0.0;  // 2 * integral |omega'| |u| |u'|
  double scale2 = 0.0;  // largest absolute term of I2
};

// I = int omega |u|^2, I1 = 2 Im int omega' conj(u) u',
// I2 = 4 int omega'' |u'|^2 - 2(p-1)/(p+1) int (omega'' + 2 omega'/r) |u|^{p+1}
//      - int (omega'''' + 4 omega'''/r) |u|^2 - 2 int omega' V' |u|^2.
// `coupling` scales the nonlinear term (0 gives the linear equation).
VirialValues virial_eval(const RadialField& u, const PotentialSamples& v, double p, const Weight& w,
                         double coupling = 1.0);
VirialValues virial_eval(const RadialField& u, const PotentialSpec& v, double p, const Weight& w, double coupling = 1.0);

// Tensor form 4 Re sum_{jk} omega_{jk} conj(u_j) u_k evaluated by sampling
// u and omega on a 3D cube of side 2 L with m points per axis and
// differentiating with centered differences; cross-check of the radial
// reduction 4 int omega'' |u'|^2.
double tensor_term_3d(const std::function<cplx(double)>& u, const Weight& w, double L, int m);

}  // namespace nlslab
