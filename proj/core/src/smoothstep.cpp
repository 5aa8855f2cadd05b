#include "nlslab/smoothstep.hpp"

#include <cmath>
#include <numbers>

namespace nlslab {
namespace {

// Coefficients of S in powers of x, index = power.
constexpr std::array<double, 10> kS = {0, 0, 0, 0, 0, 126, -420, 540, -315, 70};

}  // namespace

std::array<double, 5> smoothstep(double x) {
  std::array<double, 5> out{};
  if (x <= 0.0) return out;
  if (x >= 1.0) {
    out[0] = 1.0;
    return out;
  }
  // Horner for each derivative order.
  std::array<double, 10> c = kS;
  for (int k = 0; k < 5; ++k) {
    double v = 0.0;
    for (int i = 9 - k; i >= 0; --i) v = v * x + c[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(k)] = v;
    for (int i = 0; i < 9 - k; ++i) c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i + 1)] * (i + 1);
    c[static_cast<std::size_t>(9 - k)] = 0.0;
  }
  return out;
}

const GaussRule& gauss8() {
  static const GaussRule rule = [] {
    GaussRule g{};
    constexpr int n = 8;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      g.x[static_cast<std::size_t>(i)] = x;
      g.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
  }();
  return rule;
}

}  // namespace nlslab
