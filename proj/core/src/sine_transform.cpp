#include "nlslab/sine_transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "nlslab/error.hpp"

namespace nlslab {
namespace {

struct Plans {
  fftw_plan real = nullptr;
  fftw_plan complex = nullptr;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Plans live for the whole process; FFTW_ESTIMATE keeps plan selection
// independent of timing so results are reproducible run to run.
const Plans& plans_for(std::size_t n) {
  static std::map<std::size_t, Plans> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const int len = static_cast<int>(n);
  const fftw_r2r_kind kind = FFTW_RODFT00;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::vector<double> scratch(2 * n);
  Plans p;
  p.real = fftw_plan_r2r_1d(len, scratch.data(), scratch.data(), kind, flags);
  // Interleaved complex data: two strided real transforms.
  p.complex = fftw_plan_many_r2r(1, &len, 2, scratch.data(), nullptr, 2, 1, scratch.data(),
                                 nullptr, 2, 1, &kind, flags);
  if (p.real == nullptr || p.complex == nullptr) {
    throw NumericalError("sine transform: FFTW could not plan length " + std::to_string(n));
  }
  return cache.emplace(n, p).first->second;
}

}  // namespace

SineTransform::SineTransform(std::size_t n) : n_(n), scale_(0.0), real_plan_(nullptr), complex_plan_(nullptr) {
  if (n == 0) throw ValidationError("sine transform: length must be positive");
  const Plans& p = plans_for(n);
  real_plan_ = p.real;
  complex_plan_ = p.complex;
  // FFTW's RODFT00 computes 2 * sum x_j sin(...).
  scale_ = 1.0 / std::sqrt(2.0 * static_cast<double>(n + 1));
}

void SineTransform::forward(std::span<double> data) const {
  if (data.size() != n_) throw ValidationError("sine transform: length mismatch");
  fftw_execute_r2r(static_cast<fftw_plan>(real_plan_), data.data(), data.data());
  for (double& x : data) x *= scale_;
}

void SineTransform::forward(std::span<cplx> data) const {
  if (data.size() != n_) throw ValidationError("sine transform: length mismatch");
  auto* raw = reinterpret_cast<double*>(data.data());
  fftw_execute_r2r(static_cast<fftw_plan>(complex_plan_), raw, raw);
  for (cplx& z : data) z *= scale_;
}

}  // namespace nlslab
