#include "nlslab/initial_data.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/error.hpp"

namespace nlslab {

RadialField make_initial_data(const InitialData& d, const RadialGrid& grid, const GroundState* gs) {
  switch (d.kind) {
    case InitialData::Kind::LambdaQ:
      if (gs == nullptr) throw ValidationError("initial data: lambdaQ needs a ground state");
      if (!(gs->profile.grid() == grid)) throw ValidationError("initial data: ground state on a different grid");
      if (!std::isfinite(d.lambda)) throw ValidationError("initial data: lambda must be finite");
      return gs->profile.scaled(d.lambda);
    case InitialData::Kind::Gaussian:
      if (!(d.width > 0.0) || !std::isfinite(d.amp)) throw ValidationError("initial data: gaussian needs width > 0");
      return RadialField::sample(grid, [&](double r) { return cplx(d.amp * std::exp(-r * r / (d.width * d.width))); });
    case InitialData::Kind::Table: {
      if (d.r.empty() || d.r.size() != d.re.size() || (!d.im.empty() && d.im.size() != d.r.size())) {
        throw ValidationError("initial data: table needs matching r, re (and im) arrays");
      }
      for (std::size_t k = 1; k < d.r.size(); ++k) {
        if (!(d.r[k] > d.r[k - 1])) throw ValidationError("initial data: table radii must increase");
      }
      auto at = [&](std::size_t k) { return cplx(d.re[k], d.im.empty() ? 0.0 : d.im[k]); };
      return RadialField::sample(grid, [&](double r) -> cplx {
        if (r <= d.r.front()) return at(0);
        if (r > d.r.back()) return 0.0;
        const auto k = static_cast<std::size_t>(std::upper_bound(d.r.begin(), d.r.end(), r) - d.r.begin()) - 1;
        if (k + 1 >= d.r.size()) return at(d.r.size() - 1);
        const double s = (r - d.r[k]) / (d.r[k + 1] - d.r[k]);
        return at(k) + s * (at(k + 1) - at(k));
      });
    }
  }
  throw ValidationError("initial data: unknown kind");
}

}  // namespace nlslab
