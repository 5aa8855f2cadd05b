#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nlslab {

using cplx = std::complex<double>;

// Uniform radial grid on (0, r_max) with n interior nodes r_j = j h,
// j = 1..n, h = r_max / (n + 1). Both ends carry a homogeneous Dirichlet
// condition for w = r u, so r = 0 and r = r_max are not stored.
class RadialGrid {
 public:
  static constexpr std::size_t kMinNodes = 16;

  RadialGrid(double r_max, std::size_t n);

  double r_max() const { return r_max_; }
  std::size_t size() const { return n_; }
  double h() const { return h_; }
  // Zero-based: node(0) == h, node(size() - 1) == r_max - h.
  double node(std::size_t j) const { return static_cast<double>(j + 1) * h_; }
  std::vector<double> nodes() const;

  friend bool operator==(const RadialGrid& a, const RadialGrid& b) {
    return a.n_ == b.n_ && a.r_max_ == b.r_max_;
  }

 private:
  double r_max_;
  std::size_t n_;
  double h_;
};

enum class Parity { Real, Complex };

// Samples of a radial function on a grid. Immutable value type.
class RadialField {
 public:
  RadialField(RadialGrid grid, std::vector<cplx> values);
  static RadialField from_real(RadialGrid grid, std::span<const double> values);
  static RadialField zeros(RadialGrid grid);
  static RadialField sample(RadialGrid grid, const std::function<cplx(double)>& f);

  const RadialGrid& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  Parity parity() const { return parity_; }
  std::size_t size() const { return values_.size(); }
  cplx operator[](std::size_t j) const { return values_[j]; }

  std::vector<double> abs_sq() const;
  std::vector<double> abs_pow(double q) const;
  RadialField scaled(cplx c) const;

 private:
  RadialGrid grid_;
  std::vector<cplx> values_;
  Parity parity_;
};

// 4 pi * integral of f(r) r^2 over [0, r_max], f given at the n nodes and
// taken as zero at both ends. Composite Simpson; the last panel falls back to
// the trapezoid rule when the panel count n + 1 is odd.
double integrate3d(const RadialGrid& grid, std::span<const double> f);

// Integral of g(r) dr over [0, r_max] with the same rule and end conditions.
double integrate_radial(const RadialGrid& grid, std::span<const double> g);

// 4 pi * integral of f r^2 over a <= r <= b, trapezoid on the node values
// with the end cells cut by linear interpolation. Used for localized
// diagnostics where a, b are arbitrary radii.
double integrate3d_shell(const RadialGrid& grid, std::span<const double> f, double a, double b);

// r * du/dr at the nodes, computed as w' - u with w = r u and w' from a
// sixth-order centered stencil; w is odd about both r = 0 and r = r_max.
std::vector<cplx> r_times_derivative(const RadialField& u);

// du/dr at the nodes (r_times_derivative divided by r).
std::vector<cplx> derivative(const RadialField& u);

// Squared L2 norm of the gradient, 4 pi * integral of |u'|^2 r^2.
double gradient_sq_norm(const RadialField& u);

// Mass, 4 pi * integral of |u|^2 r^2.
double mass(const RadialField& u);

// Throws ValidationError naming the first non-finite index.
void require_finite(std::span<const double> f, const char* what);
void require_finite(std::span<const cplx> f, const char* what);

}  // namespace nlslab
