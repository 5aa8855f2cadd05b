#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nlslab/grid.hpp"
#include "nlslab/groundstate.hpp"

namespace testing_support {

using nlslab::cplx;
using nlslab::GroundState;
using nlslab::RadialField;
using nlslab::RadialGrid;

inline RadialGrid default_grid() { return RadialGrid(32.0, 4096); }

// Ground states are solved once per (p, grid) per test binary.
inline const GroundState& ground_state(double p, const RadialGrid& grid = default_grid()) {
  static std::mutex mu;
  static std::map<std::tuple<double, double, std::size_t>, GroundState> cache;
  std::lock_guard lock(mu);
  const auto key = std::make_tuple(p, grid.r_max(), grid.size());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, nlslab::solve_ground_state(grid, p)).first;
  return it->second;
}

// Direct O(n^2) orthonormal DST-I, independent of FFTW.
inline std::vector<double> naive_dst(const std::vector<double>& x) {
  const std::size_t n = x.size();
  const double s = std::sqrt(2.0 / static_cast<double>(n + 1));
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    long double acc = 0.0L;
    for (std::size_t j = 1; j <= n; ++j)
      acc += x[j - 1] * std::sin(std::numbers::pi_v<long double> * static_cast<long double>(j * k) /
                                 static_cast<long double>(n + 1));
    out[k - 1] = s * static_cast<double>(acc);
  }
  return out;
}

struct NamedField {
  std::string name;
  RadialField field;
};

// Smooth, decaying radial fields that are not ground states (up to
// scaling), resolved on the default grid.
inline std::vector<NamedField> corpus(const RadialGrid& g = default_grid()) {
  auto f = [&](std::string name, auto fn) { return NamedField{std::move(name), RadialField::sample(g, fn)}; };
  std::vector<NamedField> c;
  for (double w : {0.5, 0.8, 1.0, 1.5, 2.5})
    c.push_back(f("gauss_w" + std::to_string(w), [w](double r) { return cplx(std::exp(-r * r / (w * w))); }));
  c.push_back(f("gauss_amp3", [](double r) { return cplx(3.0 * std::exp(-r * r)); }));
  for (double b : {0.5, 2.0})
    c.push_back(f("chirp_b" + std::to_string(b),
                  [b](double r) { return std::exp(-r * r) * std::polar(1.0, b * r * r); }));
  c.push_back(f("gauss_w4", [](double r) { return cplx(std::exp(-r * r / 16.0)); }));
  c.push_back(f("chirp_b1", [](double r) { return std::exp(-r * r) * std::polar(1.0, r * r); }));
  c.push_back(f("bump_narrow", [](double r) { return cplx(r < 2.0 ? std::pow(1.0 - r * r / 4.0, 2) : 0.0); }));
  c.push_back(f("bump_wide", [](double r) { return cplx(r < 4.0 ? std::pow(1.0 - r * r / 16.0, 6) : 0.0); }));
  c.push_back(f("ring", [](double r) { return cplx(r * r * std::exp(-r * r)); }));
  c.push_back(f("gauss_dip", [](double r) { return cplx(std::exp(-r * r) - 0.5 * std::exp(-r * r / 4.0)); }));
  c.push_back(f("bump", [](double r) { return cplx(r < 3.0 ? std::pow(1.0 - r * r / 9.0, 4) : 0.0); }));
  c.push_back(f("two_bumps",
                [](double r) { return cplx(std::exp(-r * r) + 0.5 * std::exp(-(r - 4.0) * (r - 4.0))); }));
  c.push_back(f("far_shell", [](double r) { return cplx(std::exp(-(r - 6.0) * (r - 6.0))); }));
  c.push_back(f("shell", [](double r) { return cplx(std::exp(-(r - 3.0) * (r - 3.0))); }));
  c.push_back(f("swirl", [](double r) { return r * std::exp(-0.5 * r * r) * cplx(1.0, r); }));
  c.push_back(f("wide_chirp", [](double r) { return std::exp(-0.1 * r * r) * std::polar(1.0, std::sin(r)); }));
  return c;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing_support
