#pragma once

// Reference values frozen from the scripts in tests/oracles/. They were
// computed without the library: Petviashvili iteration on a 32767-node sine
// grid (r_max = 48) for the ground states, sympy/mpmath for the rest.

#include <array>
#include <cmath>
#include <numbers>

namespace oracle {

struct GroundStateNorms {
  double p, mass, grad_sq, lp1;
};

// groundstate_petviashvili.py
inline constexpr std::array<GroundStateNorms, 5> kGroundStates{{
    {7.0 / 3.0, 6.378311578440e+01, 9.567467367660e+01, 1.594577894610e+02},
    {2.5, 4.616365128301e+01, 8.309457230943e+01, 1.292582235924e+02},
    {3.0, 1.889725130255e+01, 5.669175390764e+01, 7.558900521018e+01},
    {3.5, 8.021837797877e+00, 4.010918898938e+01, 4.813102678726e+01},
    {4.0, 3.194196696949e+00, 2.874777027254e+01, 3.194196696949e+01},
}};

// closed_forms.py: me_ratio and grad_ratio of lambda Q at p = 3.
struct ThresholdPoint {
  double lambda, me_ratio, grad_ratio;
};
inline constexpr std::array<ThresholdPoint, 5> kThresholdCurve{{
    {0.8, 0.704512, 0.64},
    {0.9, 0.905418, 0.81},
    {1.0, 1.0, 1.0},
    {1.1, 0.849178, 1.21},
    {1.2, 0.248832, 1.44},
}};

// Roots of g(y) = me_ratio at p = 3 (bisection in mpmath).
inline constexpr double kCoercivityAboveY = 1.21;  // lambda = 1.1
inline constexpr double kCoercivityBelowY = 0.81;  // lambda = 0.9
// p = 4: zero of g past y = 1, and the root of g(y) = 0.5 below 1.
inline constexpr double kCoercivityYmaxP4 = 1.3831618672225916485;
inline constexpr double kCoercivityHalfP4 = 0.55636484461637242412;

// u = exp(-r^2) in R^3.
inline const double kGaussMass = std::pow(std::numbers::pi / 2.0, 1.5);  // 1.968701243215302468
inline constexpr double kGaussGradSq = 5.9061037296459074041;
inline constexpr double kGaussLp1P3 = 0.69604099960396348066;

// Newton potentials at the origin.
inline constexpr double kKatoUnitBall = 2.0 * std::numbers::pi;
inline constexpr double kKatoGaussA = 0.7, kKatoGaussSigma = 1.3;
inline constexpr double kKatoGauss = 7.4330082183934508022;  // 2 pi A sigma^2

// Both sides of the Hardy bound with constant (2/(3-q))^q for exp(-r^2)
// at q = 1/2. The bound fails here.
inline constexpr double kHardyGaussLhsHalf = 2.3944923699069546354;
inline constexpr double kHardyGaussRhsHalf = 2.3174219849612489446;

// Free Schroedinger evolution of exp(-r^2) at t = 1, r = 0.5.
inline constexpr double kFreeGaussRe = -0.04136426800895262385;
inline constexpr double kFreeGaussIm = -0.11019209455871454946;

}  // namespace oracle
