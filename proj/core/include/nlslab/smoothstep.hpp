#pragma once

#include <array>

namespace nlslab {

// Nonic smoothstep S(x) = x^5 (126 - 420 x + 540 x^2 - 315 x^3 + 70 x^4) on
// [0, 1], 0 to the left, 1 to the right. S' = 630 x^4 (1 - x)^4, so S is C^4
// across both ends. Returns the derivatives of orders 0..4 at x.
std::array<double, 5> smoothstep(double x);

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::array<double, 8> x;
  std::array<double, 8> w;
};
const GaussRule& gauss8();

// Integral of f over [a, b] with the 8-point rule.
template <class F>
double gauss_integrate(F&& f, double a, double b) {
  const auto& g = gauss8();
  const double c = 0.5 * (a + b), d = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(c + d * g.x[i]);
  return s * d;
}

}  // namespace nlslab
