#include "nlslab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "nlslab/error.hpp"
#include "nlslab/smoothstep.hpp"

namespace nlslab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError("potential: " + msg);
}

double inv_sq_value(const InverseSquare& f, double r) {
  const double base = f.amplitude / (r * r + f.core * f.core);
  if (r <= f.cutoff) return base;
  if (r >= 2.0 * f.cutoff) return 0.0;
  return base * (1.0 - smoothstep(r / f.cutoff - 1.0)[0]);
}

double inv_sq_xgrad(const InverseSquare& f, double r) {
  const double d = r * r + f.core * f.core;
  const double base = f.amplitude / d;
  const double dbase = -2.0 * f.amplitude * r / (d * d);
  if (r <= f.cutoff) return r * dbase;
  if (r >= 2.0 * f.cutoff) return 0.0;
  const auto s = smoothstep(r / f.cutoff - 1.0);
  return r * (dbase * (1.0 - s[0]) - base * s[1] / f.cutoff);
}

// Index k of the segment [r_k, r_{k+1}) holding r; requires r_0 <= r < r_last.
std::size_t segment(const TablePotential& t, double r) {
  auto it = std::upper_bound(t.r.begin(), t.r.end(), r);
  return static_cast<std::size_t>(it - t.r.begin()) - 1;
}

double table_value(const TablePotential& t, double r) {
  if (r <= t.r.front()) return t.v.front();
  if (r > t.r.back()) return t.tail == TablePotential::Tail::Zero ? 0.0 : t.v.back();
  if (r == t.r.back()) return t.v.back();
  const std::size_t k = segment(t, r);
  const double s = (r - t.r[k]) / (t.r[k + 1] - t.r[k]);
  return t.v[k] + s * (t.v[k + 1] - t.v[k]);
}

double table_xgrad(const TablePotential& t, double r) {
  if (r < t.r.front() || r >= t.r.back()) return 0.0;
  const std::size_t k = segment(t, r);
  return r * (t.v[k + 1] - t.v[k]) / (t.r[k + 1] - t.r[k]);
}

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Sorted panel edges covering [a, b]: uniform cells of width h plus the
// breakpoints inside.
std::vector<double> panel_edges(double a, double b, double h, const std::vector<double>& breaks) {
  std::vector<double> e;
  const auto cells = static_cast<std::size_t>(std::ceil((b - a) / h - 1e-9));
  for (std::size_t k = 0; k <= cells; ++k) e.push_back(std::min(b, a + static_cast<double>(k) * h));
  for (double x : breaks) {
    if (x > a && x < b) e.push_back(x);
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end(), [](double x, double y) { return std::abs(x - y) < 1e-14 * (1.0 + std::abs(x)); }),
          e.end());
  return e;
}

// Integral of g(t) over [r_max, inf) for g with finite support or decaying
// power `decay`. `weight_power` is the power of t in the measure, so the
// integral converges iff support is finite or decay > weight_power + 1.
double tail_integral(const std::function<double(double)>& g, const PotentialSpec& v, double r_max, double h,
                     double decay, double weight_power) {
  const double support = v.support_radius();
  if (support <= r_max) return 0.0;
  if (std::isfinite(support)) {
    double s = 0.0;
    const auto e = panel_edges(r_max, support, h, v.breakpoints());
    for (std::size_t k = 0; k + 1 < e.size(); ++k) s += gauss_integrate(g, e[k], e[k + 1]);
    return s;
  }
  if (!(decay > weight_power + 1.0)) return kInf;
  double s = 0.0;
  double a = r_max;
  for (int k = 0; k < 200; ++k) {
    const double b = 1.25 * a;
    double piece = 0.0;
    const auto e = panel_edges(a, b, (b - a) / 32.0, v.breakpoints());
    for (std::size_t i = 0; i + 1 < e.size(); ++i) piece += gauss_integrate(g, e[i], e[i + 1]);
    s += piece;
    if (k > 4 && std::abs(piece) <= 1e-17 * std::abs(s)) break;
    a = b;
  }
  return s;
}

double kato_of(const std::function<double(double)>& absf, const PotentialSpec& v, const RadialGrid& grid) {
  const double h = grid.h();
  const std::size_t n = grid.size();
  const auto breaks = v.breakpoints();
  // a[k], b[k]: integrals of |V| t^2 and |V| t over cell k = [k h, (k+1) h].
  std::vector<double> a(n + 1), b(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double lo = static_cast<double>(k) * h;
    const double hi = k == n ? grid.r_max() : static_cast<double>(k + 1) * h;
    std::vector<double> e{lo, hi};
    for (double x : breaks) {
      if (x > lo && x < hi) e.push_back(x);
    }
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
      a[k] += gauss_integrate([&](double t) { return absf(t) * t * t; }, e[i], e[i + 1]);
      b[k] += gauss_integrate([&](double t) { return absf(t) * t; }, e[i], e[i + 1]);
    }
  }
  const double tail = tail_integral([&](double t) { return absf(t) * t; }, v, grid.r_max(), h, v.decay_power(), 1.0);
  if (!std::isfinite(tail)) return kInf;
  double b_total = tail;
  for (double x : b) b_total += x;
  double best = kFourPi * b_total;  // s = 0
  double a_cum = 0.0, b_cum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    a_cum += a[j];
    b_cum += b[j];
    const double s = grid.node(j);
    best = std::max(best, kFourPi * (a_cum / s + (b_total - b_cum)));
  }
  return best;
}

// Partial integrals over dyadic shells [2^k, 2^{k+1}] inside the window;
// returns false when the last shells do not shrink (not Cauchy).
bool dyadic_cauchy(const std::function<double(double)>& g, const PotentialSpec& v, const RadialGrid& grid) {
  std::vector<double> shells;
  double total = 0.0;
  for (double lo = 1.0; 2.0 * lo <= grid.r_max(); lo *= 2.0) {
    double s = 0.0;
    const auto e = panel_edges(lo, 2.0 * lo, grid.h(), v.breakpoints());
    for (std::size_t i = 0; i + 1 < e.size(); ++i) s += gauss_integrate(g, e[i], e[i + 1]);
    shells.push_back(s);
    total += s;
  }
  if (shells.size() < 2 || total <= 0.0) return true;
  const double last = shells.back(), prev = shells[shells.size() - 2];
  return !(last > 1e-3 * total && last >= 0.5 * prev);
}

}  // namespace

PotentialSpec::PotentialSpec(Family family) : family_(std::move(family)) {
  std::visit(overloaded{
                 [](const ZeroPotential&) {},
                 [](const GaussianBump& g) {
                   require(std::isfinite(g.amplitude), "gaussian amplitude must be finite");
                   require(std::isfinite(g.sigma) && g.sigma > 0.0, "gaussian sigma must be positive");
                 },
                 [](const InverseSquare& s) {
                   require(std::isfinite(s.amplitude), "inverse-square amplitude must be finite");
                   require(std::isfinite(s.core) && s.core > 0.0, "inverse-square r0 must be positive");
                   require(s.cutoff > 0.0, "inverse-square r_cut must be positive");
                 },
                 [](const TablePotential& t) {
                   require(!t.r.empty() && t.r.size() == t.v.size(), "table needs matching nonempty r and v");
                   require(t.r.front() >= 0.0, "table radii must be nonnegative");
                   for (std::size_t k = 0; k < t.r.size(); ++k) {
                     require(std::isfinite(t.r[k]) && std::isfinite(t.v[k]), "table entries must be finite");
                     if (k > 0) require(t.r[k] > t.r[k - 1], "table radii must be strictly increasing");
                   }
                 },
                 [](const PotentialSum& s) {
                   require(s.coefficients.size() == s.terms.size(), "sum needs one coefficient per term");
                   for (double c : s.coefficients) require(std::isfinite(c), "sum coefficients must be finite");
                 },
             },
             family_);
}

PotentialSpec PotentialSpec::gaussian(double amplitude, double sigma) { return PotentialSpec(GaussianBump{amplitude, sigma}); }

PotentialSpec PotentialSpec::inverse_square(double amplitude, double core, double cutoff) {
  return PotentialSpec(InverseSquare{amplitude, core, cutoff});
}

PotentialSpec PotentialSpec::table(std::vector<double> r, std::vector<double> v, TablePotential::Tail tail) {
  return PotentialSpec(TablePotential{std::move(r), std::move(v), tail});
}

PotentialSpec PotentialSpec::sum(std::vector<std::pair<double, PotentialSpec>> terms) {
  PotentialSum s;
  for (auto& [c, t] : terms) {
    s.coefficients.push_back(c);
    s.terms.push_back(std::move(t));
  }
  return PotentialSpec(std::move(s));
}

std::string PotentialSpec::family_name() const {
  return std::visit(overloaded{
                        [](const ZeroPotential&) { return std::string("zero"); },
                        [](const GaussianBump&) { return std::string("gaussian"); },
                        [](const InverseSquare&) { return std::string("truncated-inverse-square"); },
                        [](const TablePotential&) { return std::string("table"); },
                        [](const PotentialSum&) { return std::string("sum"); },
                    },
                    family_);
}

bool PotentialSpec::is_zero() const {
  return std::visit(overloaded{
                        [](const ZeroPotential&) { return true; },
                        [](const GaussianBump& g) { return g.amplitude == 0.0; },
                        [](const InverseSquare& s) { return s.amplitude == 0.0; },
                        [](const TablePotential& t) {
                          return std::all_of(t.v.begin(), t.v.end(), [](double x) { return x == 0.0; });
                        },
                        [](const PotentialSum& s) {
                          for (std::size_t i = 0; i < s.terms.size(); ++i) {
                            if (s.coefficients[i] != 0.0 && !s.terms[i].is_zero()) return false;
                          }
                          return true;
                        },
                    },
                    family_);
}

double PotentialSpec::value(double r) const {
  return std::visit(overloaded{
                        [](const ZeroPotential&) { return 0.0; },
                        [r](const GaussianBump& g) { return g.amplitude * std::exp(-r * r / (g.sigma * g.sigma)); },
                        [r](const InverseSquare& s) { return inv_sq_value(s, r); },
                        [r](const TablePotential& t) { return table_value(t, r); },
                        [r](const PotentialSum& s) {
                          double acc = 0.0;
                          for (std::size_t i = 0; i < s.terms.size(); ++i) acc += s.coefficients[i] * s.terms[i].value(r);
                          return acc;
                        },
                    },
                    family_);
}

double PotentialSpec::x_grad(double r) const {
  return std::visit(overloaded{
                        [](const ZeroPotential&) { return 0.0; },
                        [r](const GaussianBump& g) {
                          const double s2 = g.sigma * g.sigma;
                          return -2.0 * r * r / s2 * g.amplitude * std::exp(-r * r / s2);
                        },
                        [r](const InverseSquare& s) { return inv_sq_xgrad(s, r); },
                        [r](const TablePotential& t) { return table_xgrad(t, r); },
                        [r](const PotentialSum& s) {
                          double acc = 0.0;
                          for (std::size_t i = 0; i < s.terms.size(); ++i) acc += s.coefficients[i] * s.terms[i].x_grad(r);
                          return acc;
                        },
                    },
                    family_);
}

double PotentialSpec::support_radius() const {
  if (is_zero()) return 0.0;
  return std::visit(overloaded{
                        [](const ZeroPotential&) { return 0.0; },
                        [](const GaussianBump&) { return kInf; },
                        [](const InverseSquare& s) { return 2.0 * s.cutoff; },
                        [](const TablePotential& t) {
                          if (t.tail == TablePotential::Tail::Constant && t.v.back() != 0.0) return kInf;
                          return t.r.back();
                        },
                        [](const PotentialSum& s) {
                          double m = 0.0;
                          for (std::size_t i = 0; i < s.terms.size(); ++i) {
                            if (s.coefficients[i] != 0.0) m = std::max(m, s.terms[i].support_radius());
                          }
                          return m;
                        },
                    },
                    family_);
}

double PotentialSpec::decay_power() const {
  if (is_zero()) return kInf;
  return std::visit(overloaded{
                        [](const ZeroPotential&) { return kInf; },
                        [](const GaussianBump&) { return kInf; },
                        [](const InverseSquare& s) { return std::isfinite(s.cutoff) ? kInf : 2.0; },
                        [](const TablePotential& t) {
                          return t.tail == TablePotential::Tail::Constant && t.v.back() != 0.0 ? 0.0 : kInf;
                        },
                        [](const PotentialSum& s) {
                          double d = kInf;
                          for (std::size_t i = 0; i < s.terms.size(); ++i) {
                            if (s.coefficients[i] != 0.0) d = std::min(d, s.terms[i].decay_power());
                          }
                          return d;
                        },
                    },
                    family_);
}

double PotentialSpec::xgrad_decay_power() const {
  if (is_zero()) return kInf;
  return std::visit(overloaded{
                        [](const ZeroPotential&) { return kInf; },
                        [](const GaussianBump&) { return kInf; },
                        [](const InverseSquare& s) { return std::isfinite(s.cutoff) ? kInf : 2.0; },
                        [](const TablePotential&) { return kInf; },
                        [](const PotentialSum& s) {
                          double d = kInf;
                          for (std::size_t i = 0; i < s.terms.size(); ++i) {
                            if (s.coefficients[i] != 0.0) d = std::min(d, s.terms[i].xgrad_decay_power());
                          }
                          return d;
                        },
                    },
                    family_);
}

std::vector<double> PotentialSpec::breakpoints() const {
  return std::visit(overloaded{
                        [](const ZeroPotential&) { return std::vector<double>{}; },
                        [](const GaussianBump&) { return std::vector<double>{}; },
                        [](const InverseSquare& s) {
                          return std::isfinite(s.cutoff) ? std::vector<double>{s.cutoff, 2.0 * s.cutoff} : std::vector<double>{};
                        },
                        [](const TablePotential& t) { return t.r; },
                        [](const PotentialSum& s) {
                          std::vector<double> out;
                          for (const auto& term : s.terms) {
                            auto b = term.breakpoints();
                            out.insert(out.end(), b.begin(), b.end());
                          }
                          std::sort(out.begin(), out.end());
                          out.erase(std::unique(out.begin(), out.end()), out.end());
                          return out;
                        },
                    },
                    family_);
}

std::vector<std::pair<double, double>> PotentialSpec::jumps() const {
  return std::visit(overloaded{
                        [](const TablePotential& t) {
                          std::vector<std::pair<double, double>> out;
                          if (t.tail == TablePotential::Tail::Zero && t.v.back() != 0.0) out.emplace_back(t.r.back(), -t.v.back());
                          return out;
                        },
                        [](const PotentialSum& s) {
                          std::vector<std::pair<double, double>> out;
                          for (std::size_t i = 0; i < s.terms.size(); ++i) {
                            for (auto [r, j] : s.terms[i].jumps()) {
                              if (s.coefficients[i] != 0.0) out.emplace_back(r, s.coefficients[i] * j);
                            }
                          }
                          return out;
                        },
                        [](const auto&) { return std::vector<std::pair<double, double>>{}; },
                    },
                    family_);
}

PotentialSpec dilate(const PotentialSpec& v, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("dilate: lambda must be positive");
  const double l2 = lambda * lambda;
  return std::visit(overloaded{
                        [](const ZeroPotential&) { return PotentialSpec::zero(); },
                        [&](const GaussianBump& g) { return PotentialSpec::gaussian(l2 * g.amplitude, g.sigma / lambda); },
                        [&](const InverseSquare& s) {
                          return PotentialSpec::inverse_square(s.amplitude, s.core / lambda, s.cutoff / lambda);
                        },
                        [&](const TablePotential& t) {
                          std::vector<double> r(t.r), vv(t.v);
                          for (double& x : r) x /= lambda;
                          for (double& x : vv) x *= l2;
                          return PotentialSpec::table(std::move(r), std::move(vv), t.tail);
                        },
                        [&](const PotentialSum& s) {
                          std::vector<std::pair<double, PotentialSpec>> terms;
                          for (std::size_t i = 0; i < s.terms.size(); ++i) terms.emplace_back(s.coefficients[i], dilate(s.terms[i], lambda));
                          return PotentialSpec::sum(std::move(terms));
                        },
                    },
                    v.family());
}

PotentialSamples sample(const PotentialSpec& v, const RadialGrid& grid) {
  PotentialSamples s;
  s.v.resize(grid.size());
  s.x_grad.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double r = grid.node(j);
    s.v[j] = v.value(r);
    s.x_grad[j] = v.x_grad(r);
    if (s.v[j] != 0.0 || s.x_grad[j] != 0.0) s.zero = false;
  }
  return s;
}

double kato_norm(const PotentialSpec& v, const RadialGrid& grid) {
  if (v.is_zero()) return 0.0;
  return kato_of([&](double t) { return std::abs(v.value(t)); }, v, grid);
}

double kato_norm_negative(const PotentialSpec& v, const RadialGrid& grid) {
  if (v.is_zero()) return 0.0;
  return kato_of([&](double t) { return std::max(-v.value(t), 0.0); }, v, grid);
}

double lq_norm(const PotentialSpec& v, const RadialGrid& grid, double q, Quantity which) {
  if (!(q >= 1.0)) throw ValidationError("lq_norm: q must be at least 1");
  if (v.is_zero()) return 0.0;
  if (which == Quantity::XGrad && !v.jumps().empty()) return kInf;
  auto g = [&](double t) {
    const double x = which == Quantity::Value ? v.value(t) : v.x_grad(t);
    return std::pow(std::abs(x), q) * t * t;
  };
  double s = 0.0;
  const auto e = panel_edges(0.0, grid.r_max(), grid.h(), v.breakpoints());
  for (std::size_t i = 0; i + 1 < e.size(); ++i) s += gauss_integrate(g, e[i], e[i + 1]);
  const double decay = which == Quantity::Value ? v.decay_power() : v.xgrad_decay_power();
  const double tail = tail_integral(g, v, grid.r_max(), grid.h(), q * decay, 2.0);
  if (!std::isfinite(tail)) return kInf;
  return std::pow(kFourPi * (s + tail), 1.0 / q);
}

PotentialReport analyze(const PotentialSpec& v, const RadialGrid& grid, double sigma) {
  if (!(sigma > 1.5) || !std::isfinite(sigma)) throw ValidationError("analyze: sigma must exceed 3/2");
  PotentialReport rep;
  rep.sigma = sigma;
  rep.truncation_radius = grid.r_max();
  rep.support_radius = v.support_radius();
  if (v.is_zero()) return rep;

  rep.kato_norm = kato_norm(v, grid);
  rep.kato_neg = kato_norm_negative(v, grid);
  rep.in_K0 = std::isfinite(rep.kato_norm);
  rep.l32_norm = lq_norm(v, grid, 1.5);
  rep.lsigma_norm = lq_norm(v, grid, sigma);
  rep.xgradV_l32 = lq_norm(v, grid, 1.5, Quantity::XGrad);

  // Dense sampling: nodes plus ten sub-points per cell, ends included.
  const std::size_t n = grid.size();
  for (std::size_t j = 0; j <= n; ++j) {
    for (int k = 0; k < 10; ++k) {
      const double r = (static_cast<double>(j) + k / 10.0) * grid.h();
      const double val = v.value(r), xg = v.x_grad(r);
      const double tol = 1e-12 * (1.0 + std::abs(val));
      rep.nonneg = rep.nonneg && val >= -tol;
      rep.xgradV_nonpos = rep.xgradV_nonpos && xg <= tol;
      rep.xgradV_nonneg = rep.xgradV_nonneg && xg >= -tol;
      rep.condition_2V = rep.condition_2V && 2.0 * val + xg >= -tol;
    }
  }
  {
    const double r = grid.r_max();
    const double val = v.value(r), xg = v.x_grad(r);
    const double tol = 1e-12 * (1.0 + std::abs(val));
    rep.nonneg = rep.nonneg && val >= -tol;
    rep.xgradV_nonpos = rep.xgradV_nonpos && xg <= tol;
    rep.xgradV_nonneg = rep.xgradV_nonneg && xg >= -tol;
    rep.condition_2V = rep.condition_2V && 2.0 * val + xg >= -tol;
  }
  // A jump of size d at radius a adds d a delta(r - a) to x . grad V.
  for (auto [a, d] : v.jumps()) {
    std::ostringstream os;
    os << "jump of " << d << " at r = " << a << " puts a point mass into x.grad V";
    rep.warnings.push_back(os.str());
    if (a > grid.r_max()) continue;
    if (d < 0.0) {
      rep.xgradV_nonneg = false;
      rep.condition_2V = false;
    } else {
      rep.xgradV_nonpos = false;
    }
  }
  if (const auto* t = std::get_if<TablePotential>(&v.family())) {
    std::ostringstream os;
    os << "table extended by " << (t->tail == TablePotential::Tail::Zero ? "0" : "its last value") << " beyond r = "
       << t->r.back();
    rep.warnings.push_back(os.str());
  }
  if (rep.support_radius > grid.r_max()) {
    rep.signs_window_only = true;
    rep.warnings.push_back("sign conditions numerically verified on [0, r_max] only");
  }
  rep.kato_small = rep.kato_neg < kFourPi;

  if (!std::isfinite(v.support_radius())) {
    const bool cauchy = dyadic_cauchy([&](double t) { return std::pow(std::abs(v.value(t)), 1.5) * t * t; }, v, grid);
    if (cauchy != std::isfinite(rep.l32_norm)) {
      rep.warnings.push_back(std::string("dyadic shells of |V|^{3/2} ") + (cauchy ? "look Cauchy" : "are not Cauchy") +
                             " on the window, disagreeing with the analytic tail");
    }
  }
  return rep;
}

Remark14Result remark14_check(const PotentialSpec& v, const RadialGrid& grid) {
  const auto rep = analyze(v, grid);
  if (!rep.nonneg || !rep.condition_2V) {
    throw ValidationError("remark14_check: requires V >= 0 and 2V + x.grad V >= 0");
  }
  const double v1 = v.value(1.0);
  if (!std::isfinite(v1)) throw ValidationError("remark14_check: V(1) not evaluable");
  Remark14Result res;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double r = grid.node(j);
    if (r < 1.0) continue;
    if (v.value(r) < v1 / (r * r) - 1e-10) {
      res.pass = false;
      res.first_violation = r;
      break;
    }
  }
  return res;
}

}  // namespace nlslab
