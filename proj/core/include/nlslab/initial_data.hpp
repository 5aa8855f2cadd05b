#pragma once

#include <vector>

#include "nlslab/grid.hpp"
#include "nlslab/groundstate.hpp"

namespace nlslab {

// Initial data descriptions accepted by the CLI.
struct InitialData {
  enum class Kind { LambdaQ, Gaussian, Table };
  Kind kind = Kind::LambdaQ;
  double lambda = 1.0;  // LambdaQ: u0 = lambda Q
  double amp = 1.0;     // Gaussian: amp exp(-r^2 / width^2)
  double width = 1.0;
  std::vector<double> r, re, im;  // Table: linear interpolation, 0 past the last radius
};

// The ground state is needed only for Kind::LambdaQ.
RadialField make_initial_data(const InitialData& d, const RadialGrid& grid, const GroundState* gs = nullptr);

}  // namespace nlslab
