#pragma once

#include <cstddef>
#include <span>

#include "nlslab/grid.hpp"

namespace nlslab {

// Orthonormal type-I discrete sine transform of length n:
//   X_k = sqrt(2/(n+1)) * sum_{j=1..n} x_j sin(pi j k / (n+1)).
// The matrix is symmetric and orthogonal, so the transform is its own
// inverse. Mode k is the Dirichlet eigenvector on (0, r_max) with
// eigenvalue -(pi k / r_max)^2.
//
// Plans are created once per length (under a lock) and shared; execution
// is reentrant, so one instance may be used from several threads.
class SineTransform {
 public:
  explicit SineTransform(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(std::span<double> data) const;
  void forward(std::span<cplx> data) const;
  void inverse(std::span<double> data) const { forward(data); }
  void inverse(std::span<cplx> data) const { forward(data); }

 private:
  std::size_t n_;
  double scale_;
  void* real_plan_;
  void* complex_plan_;
};

}  // namespace nlslab
