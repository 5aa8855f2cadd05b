#include "nlslab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nlslab/error.hpp"

namespace nlslab {
namespace {

// Dense polynomial, coefficient index = power.
struct Poly {
  std::vector<double> c;

  double operator()(double x) const {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
  }
  Poly derivative() const {
    Poly d;
    for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * static_cast<double>(i));
    return d;
  }
  // Antiderivative vanishing at 0.
  Poly integral() const {
    Poly a{{0.0}};
    for (std::size_t i = 0; i < c.size(); ++i) a.c.push_back(c[i] / static_cast<double>(i + 1));
    return a;
  }
  friend Poly operator+(Poly a, const Poly& b) {
    a.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < b.c.size(); ++i) a.c[i] += b.c[i];
    return a;
  }
  friend Poly operator*(double s, Poly a) {
    for (double& x : a.c) x *= s;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
};

const Poly kOne{{1.0}};
const Poly kSmooth{{0, 0, 0, 0, 0, 126, -420, 540, -315, 70}};

// phi(x) = P((x - a) / len) on [a, b).
struct Piece {
  double a, b, len;
  Poly P;
};

struct Profile {
  std::vector<Piece> pieces;  // the last piece extends to infinity
  double exponent;
};

Profile unweighted() { return {{{0.0, kInf, 1.0, Poly{{0, 0, 1}}}}, 2.0}; }

Profile chi() {
  return {{{0.0, 0.5, 1.0, kOne}, {0.5, 1.0, 0.5, kOne + (-1.0) * kSmooth}, {1.0, kInf, 1.0, Poly{{0.0}}}}, 0.0};
}

// r^2 on [0, 1]; second derivative 2(1 - S(x - 1)) on [1, 2]; linear after.
Profile w_profile() {
  const Poly second = 2.0 * (kOne + (-1.0) * kSmooth);
  const Poly mid = Poly{{1.0, 2.0}} + second.integral().integral();
  const double v2 = mid(1.0), d2 = mid.derivative()(1.0);
  return {{{0.0, 1.0, 1.0, Poly{{0, 0, 1}}}, {1.0, 2.0, 1.0, mid}, {2.0, kInf, 1.0, Poly{{v2, d2}}}}, 2.0};
}

Profile f_profile() {
  Profile p = w_profile();
  for (auto& piece : p.pieces) piece.P = 0.5 * piece.P;
  return p;
}

// r^2 on [0, 1]. On [1, 3] the slope leaves 2r through a short smoothstep
// onto a negative plateau -a and returns to 0 through a long one; a is fixed
// by Psi(3) = 0.
Profile psi_profile() {
  constexpr double l1 = 0.25, l2 = 1.75;
  const double a = (l1 + 3.0 * l1 * l1 / 11.0 + 1.0) / (0.5 * (l1 + l2));
  // Slope on piece 1 as a polynomial in s = (x - 1) / l1.
  const Poly slope1 = Poly{{2.0, 2.0 * l1}} * (kOne + (-1.0) * kSmooth) + (-a) * kSmooth;
  const Poly p1 = kOne + l1 * slope1.integral();
  const Poly slope2 = (-a) * (kOne + (-1.0) * kSmooth);
  const Poly p2 = Poly{{p1(1.0)}} + l2 * slope2.integral();
  return {{{0.0, 1.0, 1.0, Poly{{0, 0, 1}}}, {1.0, 1.0 + l1, l1, p1}, {1.0 + l1, 3.0, l2, p2}, {3.0, kInf, 1.0, Poly{{0.0}}}},
          2.0};
}

const Profile& profile(WeightKind k) {
  static const Profile u = unweighted(), c = chi(), w = w_profile(), f = f_profile(), s = psi_profile();
  switch (k) {
    case WeightKind::Unweighted: return u;
    case WeightKind::Chi: return c;
    case WeightKind::W: return w;
    case WeightKind::F: return f;
    case WeightKind::Psi: return s;
  }
  return u;
}

std::array<double, 5> eval_profile(const Profile& prof, double x) {
  const Piece* piece = &prof.pieces.back();
  for (const auto& p : prof.pieces) {
    if (x < p.b) {
      piece = &p;
      break;
    }
  }
  const double s = (x - piece->a) / piece->len;
  std::array<double, 5> out{};
  Poly d = piece->P;
  double scale = 1.0;
  for (std::size_t k = 0; k < 5; ++k) {
    out[k] = d.c.empty() ? 0.0 : d(s) * scale;
    d = d.derivative();
    scale /= piece->len;
  }
  return out;
}

void check_weight(const Weight& w) {
  // Shape conditions on a fine sample of [0, 4R].
  const double R = w.R();
  const double tol = 1e-10;
  for (int i = 0; i <= 4000; ++i) {
    const double r = 4.0 * R * i / 4000.0;
    const auto d = w.eval(r);
    auto fail = [&](const char* what) {
      std::ostringstream os;
      os << "weight " << w.name() << ": " << what << " violated at r = " << r;
      throw NumericalError(os.str());
    };
    switch (w.kind()) {
      case WeightKind::Chi:
        if (r <= R / 2 && std::abs(d[0] - 1.0) > tol) fail("chi = 1 on r <= R/2");
        if (r >= R && std::abs(d[0]) > tol) fail("chi = 0 on r >= R");
        break;
      case WeightKind::W:
        if (d[1] < -tol || d[2] < -tol) fail("w' >= 0 and w'' >= 0");
        if (r <= R && std::abs(d[0] - r * r) > tol * (1 + r * r)) fail("w = r^2 on r <= R");
        break;
      case WeightKind::F:
        if (1.0 - d[2] < -tol) fail("1 - F'' >= 0");
        break;
      case WeightKind::Psi:
        if (d[2] > 2.0 + tol) fail("Psi'' <= 2");
        if (d[0] < -tol * R * R) fail("Psi >= 0");
        if (r <= R && std::abs(d[0] - r * r) > tol * (1 + r * r)) fail("Psi = r^2 on r <= R");
        if (r >= 3 * R && std::abs(d[0]) > tol * R * R) fail("Psi = 0 on r >= 3R");
        break;
      case WeightKind::Unweighted:
        break;
    }
  }
}

}  // namespace

const char* to_string(WeightKind k) {
  switch (k) {
    case WeightKind::Unweighted: return "unweighted";
    case WeightKind::Chi: return "chi";
    case WeightKind::W: return "w";
    case WeightKind::Psi: return "psi";
    case WeightKind::F: return "f";
  }
  return "unweighted";
}

WeightKind weight_kind_from_string(const std::string& s) {
  for (WeightKind k : {WeightKind::Unweighted, WeightKind::Chi, WeightKind::W, WeightKind::Psi, WeightKind::F}) {
    if (s == to_string(k)) return k;
  }
  throw ValidationError("unknown weight '" + s + "' (expected unweighted, chi, w, psi or f)");
}

Weight::Weight(WeightKind kind, double R) : kind_(kind), R_(kind == WeightKind::Unweighted ? 1.0 : R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw ValidationError("weight: R must be positive");
  check_weight(*this);
}

std::string Weight::name() const {
  if (kind_ == WeightKind::Unweighted) return "unweighted";
  std::ostringstream os;
  os << to_string(kind_) << "_R" << R_;
  return os.str();
}

std::array<double, 5> Weight::eval(double r) const {
  const Profile& prof = profile(kind_);
  auto d = eval_profile(prof, r / R_);
  double scale = std::pow(R_, prof.exponent);
  for (double& x : d) {
    x *= scale;
    scale /= R_;
  }
  return d;
}

std::array<std::vector<double>, 5> Weight::sample(const RadialGrid& grid) const {
  std::array<std::vector<double>, 5> out;
  for (auto& v : out) v.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto d = eval(grid.node(j));
    for (std::size_t k = 0; k < 5; ++k) out[k][j] = d[k];
  }
  return out;
}

VirialValues virial_eval(const RadialField& u, const PotentialSamples& v, double p, const Weight& w, double coupling) {
  const RadialGrid& grid = u.grid();
  if (v.v.size() != grid.size()) throw ValidationError("virial_eval: potential sampled on a different grid");
  const std::size_t n = grid.size();
  const auto om = w.sample(grid);
  const auto ru = r_times_derivative(u);  // r u'
  auto vals = u.values();

  std::vector<double> gI(n), gI1(n), gS1(n), gGrad(n), gNl(n), gBi(n), gV(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = grid.node(j);
    const double dens = std::norm(vals[j]);
    // Integrands in dr (the 4 pi r^2 factor folded in).
    gI[j] = om[0][j] * dens * r * r;
    gI1[j] = om[1][j] * r * std::imag(std::conj(vals[j]) * ru[j]);
    gS1[j] = std::abs(om[1][j]) * r * std::abs(vals[j]) * std::abs(ru[j]);
    gGrad[j] = om[2][j] * std::norm(ru[j]);
    gNl[j] = (om[2][j] + 2.0 * om[1][j] / r) * std::pow(std::abs(vals[j]), p + 1.0) * r * r;
    gBi[j] = (om[4][j] + 4.0 * om[3][j] / r) * dens * r * r;
    gV[j] = v.zero ? 0.0 : om[1][j] * r * v.x_grad[j] * dens;
  }
  constexpr double fp = 4.0 * std::numbers::pi;
  auto I = [&](const std::vector<double>& g) { return fp * integrate_radial(grid, g); };
  VirialValues out;
  out.I = I(gI);
  out.I1 = 2.0 * I(gI1);
  out.scale1 = 2.0 * I(gS1);
  const double t_grad = 4.0 * I(gGrad);
  const double t_nl = -coupling * 2.0 * (p - 1.0) / (p + 1.0) * I(gNl);
  const double t_bi = -I(gBi);
  const double t_v = -2.0 * I(gV);
  out.I2 = t_grad + t_nl + t_bi + t_v;
  out.scale2 = std::max({std::abs(t_grad), std::abs(t_nl), std::abs(t_bi), std::abs(t_v)});
  return out;
}

VirialValues virial_eval(const RadialField& u, const PotentialSpec& v, double p, const Weight& w, double coupling) {
  return virial_eval(u, sample(v, u.grid()), p, w, coupling);
}

double tensor_term_3d(const std::function<cplx(double)>& u, const Weight& w, double L, int m) {
  if (m < 8) throw ValidationError("tensor_term_3d: need at least 8 points per axis");
  const double dx = 2.0 * L / m;
  auto X = [&](int i) { return -L + (i + 0.5) * dx; };
  auto U = [&](int i, int j, int k) {
    const double x = X(i), y = X(j), z = X(k);
    return u(std::sqrt(x * x + y * y + z * z));
  };
  double sum = 0.0;
  for (int i = 1; i + 1 < m; ++i) {
    for (int j = 1; j + 1 < m; ++j) {
      for (int k = 1; k + 1 < m; ++k) {
        const double x[3] = {X(i), X(j), X(k)};
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        const cplx g[3] = {(U(i + 1, j, k) - U(i - 1, j, k)) / (2 * dx), (U(i, j + 1, k) - U(i, j - 1, k)) / (2 * dx),
                           (U(i, j, k + 1) - U(i, j, k - 1)) / (2 * dx)};
        const auto d = w.eval(r);
        // Hessian of a radial function: w'' x x^T / r^2 + w'/r (I - x x^T / r^2).
        double acc = 0.0;
        for (int a = 0; a < 3; ++a) {
          for (int b = 0; b < 3; ++b) {
            const double xx = x[a] * x[b] / (r * r);
            const double hess = d[2] * xx + d[1] / r * ((a == b ? 1.0 : 0.0) - xx);
            acc += hess * std::real(std::conj(g[a]) * g[b]);
          }
        }
        sum += acc;
      }
    }
  }
  return 4.0 * sum * dx * dx * dx;
}

}  // namespace nlslab
