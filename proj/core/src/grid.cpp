#include "nlslab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nlslab/error.hpp"

namespace nlslab {

RadialGrid::RadialGrid(double r_max, std::size_t n) : r_max_(r_max), n_(n), h_(0.0) {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) {
    throw ValidationError("grid: r_max must be finite and positive");
  }
  if (n < kMinNodes) {
    throw ValidationError("grid: need at least " + std::to_string(kMinNodes) + " nodes, got " +
                          std::to_string(n));
  }
  h_ = r_max / static_cast<double>(n + 1);
}

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> r(n_);
  for (std::size_t j = 0; j < n_; ++j) r[j] = node(j);
  return r;
}

RadialField::RadialField(RadialGrid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)), parity_(Parity::Real) {
  if (values_.size() != grid_.size()) {
    throw ValidationError("field: " + std::to_string(values_.size()) + " samples for a grid of " +
                          std::to_string(grid_.size()) + " nodes");
  }
  if (std::any_of(values_.begin(), values_.end(), [](cplx z) { return z.imag() != 0.0; })) {
    parity_ = Parity::Complex;
  }
}

RadialField RadialField::from_real(RadialGrid grid, std::span<const double> values) {
  std::vector<cplx> v(values.begin(), values.end());
  return RadialField(grid, std::move(v));
}

RadialField RadialField::zeros(RadialGrid grid) {
  return RadialField(grid, std::vector<cplx>(grid.size()));
}

RadialField RadialField::sample(RadialGrid grid, const std::function<cplx(double)>& f) {
  std::vector<cplx> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.node(j));
  return RadialField(grid, std::move(v));
}

std::vector<double> RadialField::abs_sq() const {
  std::vector<double> out(values_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::norm(values_[j]);
  return out;
}

std::vector<double> RadialField::abs_pow(double q) const {
  std::vector<double> out(values_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::pow(std::abs(values_[j]), q);
  return out;
}

RadialField RadialField::scaled(cplx c) const {
  std::vector<cplx> v(values_);
  for (auto& z : v) z *= c;
  return RadialField(grid_, std::move(v));
}

void require_finite(std::span<const double> f, const char* what) {
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!std::isfinite(f[j])) {
      throw ValidationError(std::string(what) + ": non-finite sample at index " + std::to_string(j));
    }
  }
}

void require_finite(std::span<const cplx> f, const char* what) {
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!std::isfinite(f[j].real()) || !std::isfinite(f[j].imag())) {
      throw ValidationError(std::string(what) + ": non-finite sample at index " + std::to_string(j));
    }
  }
}

double integrate_radial(const RadialGrid& grid, std::span<const double> g) {
  const std::size_t n = grid.size();
  if (g.size() != n) throw ValidationError("integrate: sample count does not match grid");
  require_finite(g, "integrate");
  // Extended sequence G_0 = 0, G_k = g[k-1], G_{n+1} = 0 over n + 1 panels.
  const std::size_t panels = n + 1;
  const std::size_t simpson_panels = panels % 2 == 0 ? panels : panels - 1;
  auto G = [&](std::size_t k) { return (k == 0 || k == n + 1) ? 0.0 : g[k - 1]; };
  double odd = 0.0, even = 0.0;
  for (std::size_t k = 1; k < simpson_panels; ++k) {
    (k % 2 == 1 ? odd : even) += G(k);
  }
  double s = grid.h() / 3.0 * (G(0) + 4.0 * odd + 2.0 * even + G(simpson_panels));
  if (simpson_panels != panels) s += 0.5 * grid.h() * (G(panels - 1) + G(panels));
  return s;
}

double integrate3d(const RadialGrid& grid, std::span<const double> f) {
  if (f.size() != grid.size()) throw ValidationError("integrate3d: sample count does not match grid");
  require_finite(f, "integrate3d");
  std::vector<double> g(f.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double r = grid.node(j);
    g[j] = f[j] * r * r;
  }
  return 4.0 * std::numbers::pi * integrate_radial(grid, g);
}

double integrate3d_shell(const RadialGrid& grid, std::span<const double> f, double a, double b) {
  if (f.size() != grid.size()) throw ValidationError("integrate3d_shell: sample count does not match grid");
  a = std::max(a, 0.0);
  b = std::min(b, grid.r_max());
  if (!(b > a)) return 0.0;
  const double h = grid.h();
  const std::size_t n = grid.size();
  auto G = [&](std::size_t k) {
    if (k == 0 || k == n + 1) return 0.0;
    const double r = static_cast<double>(k) * h;
    return f[k - 1] * r * r;
  };
  const auto k0 = static_cast<std::size_t>(std::floor(a / h));
  const auto k1 = std::min(static_cast<std::size_t>(std::ceil(b / h)), n + 1);
  double s = 0.0;
  for (std::size_t k = k0; k < k1; ++k) {
    const double x0 = static_cast<double>(k) * h;
    const double x1 = static_cast<double>(k + 1) * h;
    const double lo = std::max(a, x0);
    const double hi = std::min(b, x1);
    if (!(hi > lo)) continue;
    const double g0 = G(k), g1 = G(k + 1);
    const double ga = g0 + (g1 - g0) * (lo - x0) / h;
    const double gb = g0 + (g1 - g0) * (hi - x0) / h;
    s += 0.5 * (hi - lo) * (ga + gb);
  }
  return 4.0 * std::numbers::pi * s;
}

std::vector<cplx> r_times_derivative(const RadialField& u) {
  const auto& grid = u.grid();
  const std::size_t n = grid.size();
  const double h = grid.h();
  auto vals = u.values();
  require_finite(vals, "derivative");
  // W(k), k = -1..n+2, is w = r u on the extended index set with odd
  // reflection about k = 0 and k = n + 1.
  auto W = [&](std::ptrdiff_t k) -> cplx {
    const auto N = static_cast<std::ptrdiff_t>(n);
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
  std::vector<cplx> out(n);
  const double c = 1.0 / (60.0 * h);
  for (std::size_t j = 0; j < n; ++j) {
    const auto k = static_cast<std::ptrdiff_t>(j + 1);
    const cplx dw = c * (45.0 * (W(k + 1) - W(k - 1)) - 9.0 * (W(k + 2) - W(k - 2)) + (W(k + 3) - W(k - 3)));
    out[j] = dw - vals[j];
  }
  return out;
}

std::vector<cplx> derivative(const RadialField& u) {
  auto out = r_times_derivative(u);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] /= u.grid().node(j);
  return out;
}

double gradient_sq_norm(const RadialField& u) {
  const auto ru = r_times_derivative(u);
  std::vector<double> g(ru.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = std::norm(ru[j]);
  return 4.0 * std::numbers::pi * integrate_radial(u.grid(), g);
}

double mass(const RadialField& u) { return integrate3d(u.grid(), u.abs_sq()); }

}  // namespace nlslab
