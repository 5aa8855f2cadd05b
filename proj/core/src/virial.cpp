#include "nlslab/virial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlslab/error.hpp"

namespace nlslab {
namespace {

double fd_derivative(const std::vector<double>& t, const std::vector<double>& f, std::size_t i) {
  const double h1 = t[i] - t[i - 1], h2 = t[i + 1] - t[i];
  return (h1 * h1 * f[i + 1] - h2 * h2 * f[i - 1] + (h2 * h2 - h1 * h1) * f[i]) / (h1 * h2 * (h1 + h2));
}

}  // namespace

VirialConsistency virial_consistency(const VirialSeries& s) {
  VirialConsistency c;
  const std::size_t n = s.t.size();
  c.fd_resid.assign(n, std::numeric_limits<double>::quiet_NaN());
  if (n < 64) return c;
  c.conclusive = true;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double e1 = s.scale1[i] > 0.0 ? std::abs(fd_derivative(s.t, s.I, i) - s.I1[i]) / s.scale1[i] : 0.0;
    const double e2 = s.scale2[i] > 0.0 ? std::abs(fd_derivative(s.t, s.I1, i) - s.I2[i]) / s.scale2[i] : 0.0;
    c.max_rel_err_I1 = std::max(c.max_rel_err_I1, e1);
    c.max_rel_err_I2 = std::max(c.max_rel_err_I2, e2);
    c.fd_resid[i] = std::max(e1, e2);
  }
  return c;
}

VirialSeries virial_series(const EvolutionTrace& trace, const Weight& w) {
  for (const auto& s : trace.virial) {
    if (s.weight.kind() == w.kind() && s.weight.R() == w.R()) return s;
  }
  if (trace.fields.size() != trace.snapshots.size() || trace.fields.empty()) {
    throw ValidationError("virial: trace has neither a series for " + w.name() + " nor stored fields");
  }
  std::vector<double> times;
  for (const auto& s : trace.snapshots) times.push_back(s.t);
  return virial_series(times, trace.fields, trace.potential, trace.p, w, trace.config.coupling);
}

VirialSeries virial_series(const std::vector<double>& times, const std::vector<RadialField>& fields,
                           const PotentialSpec& v, double p, const Weight& w, double coupling) {
  if (times.size() != fields.size()) throw ValidationError("virial: one time per field required");
  VirialSeries s{w, {}, {}, {}, {}, {}, {}};
  if (fields.empty()) return s;
  const PotentialSamples vs = sample(v, fields.front().grid());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto vv = virial_eval(fields[i], vs, p, w, coupling);
    s.t.push_back(times[i]);
    s.I.push_back(vv.I);
    s.I1.push_back(vv.I1);
    s.I2.push_back(vv.I2);
    s.scale1.push_back(vv.scale1);
    s.scale2.push_back(vv.scale2);
  }
  return s;
}

VirialConsistency virial_consistency(const EvolutionTrace& trace, const Weight& w) {
  return virial_consistency(virial_series(trace, w));
}

double morawetz_average(const EvolutionTrace& trace, double R, double T) {
  if (!(T > 0.0)) throw ValidationError("morawetz_average: T must be positive");
  if (trace.snapshots.empty() || trace.snapshots.back().t < T * (1.0 - 1e-12)) {
    throw ValidationError("morawetz_average: T beyond the trace horizon");
  }
  double acc = 0.0;
  for (std::size_t i = 1; i < trace.snapshots.size(); ++i) {
    const double t0 = trace.snapshots[i - 1].t, t1 = trace.snapshots[i].t;
    if (t0 >= T) break;
    const double f0 = trace.lp1_within(i - 1, R / 2.0);
    double f1 = trace.lp1_within(i, R / 2.0);
    double b = t1;
    if (t1 > T) {
      f1 = f0 + (f1 - f0) * (T - t0) / (t1 - t0);
      b = T;
    }
    acc += 0.5 * (b - t0) * (f0 + f1);
  }
  return acc / T;
}

}  // namespace nlslab
