#include "gpsplit/transforms.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "gpsplit/errors.hpp"

namespace gpsplit {

namespace detail {

// FFTW planning is not thread-safe; execution through the new-array
// interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanHandle {
  fftw_plan plan = nullptr;
  ~PlanHandle() {
    std::lock_guard lock(planner_mutex());
    if (plan != nullptr) fftw_destroy_plan(plan);
  }
};

namespace {

enum class PlanKind { dft_forward, dft_backward, dst1 };
using PlanKey = std::tuple<PlanKind, int, int>;

std::shared_ptr<const PlanHandle> cached_plan(PlanKind kind, int rows, int cols) {
  auto& mutex = planner_mutex();  // constructed before (destroyed after) the cache
  static std::map<PlanKey, std::shared_ptr<const PlanHandle>> cache;
  std::lock_guard lock(mutex);
  const PlanKey key{kind, rows, cols};
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto handle = std::make_shared<PlanHandle>();
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const std::size_t count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  auto* buffer = fftw_alloc_complex(count);
  switch (kind) {
    case PlanKind::dft_forward:
    case PlanKind::dft_backward: {
      const int sign = kind == PlanKind::dft_forward ? FFTW_FORWARD : FFTW_BACKWARD;
      handle->plan = rows == 1 ? fftw_plan_dft_1d(cols, buffer, buffer, sign, flags)
                               : fftw_plan_dft_2d(rows, cols, buffer, buffer, sign, flags);
      break;
    }
    case PlanKind::dst1: {
      // Two interleaved real transforms (re, im) with stride 2.
      int n = cols;
      fftw_r2r_kind r2r = FFTW_RODFT00;
      auto* real = reinterpret_cast<double*>(buffer);
      handle->plan = fftw_plan_many_r2r(1, &n, 2, real, nullptr, 2, 1, real, nullptr, 2, 1,
                                        &r2r, flags);
      break;
    }
  }
  fftw_free(buffer);
  if (handle->plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
  cache.emplace(key, handle);
  return handle;
}

fftw_complex* as_fftw(std::span<Complex> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace
}  // namespace detail

FourierTransform::FourierTransform(const Grid& grid) : size_(grid.size()) {
  if (grid.bc() != BoundaryKind::periodic)
    throw ValidationError("Fourier transform requires a periodic grid");
  const int rows = grid.dim() == 1 ? 1 : grid.points();
  forward_ = detail::cached_plan(detail::PlanKind::dft_forward, rows, grid.points());
  backward_ = detail::cached_plan(detail::PlanKind::dft_backward, rows, grid.points());
}

void FourierTransform::forward(std::span<Complex> data) const {
  if (data.size() != size_) throw ValidationError("transform size mismatch");
  fftw_execute_dft(forward_->plan, detail::as_fftw(data), detail::as_fftw(data));
}

void FourierTransform::inverse(std::span<Complex> data) const {
  if (data.size() != size_) throw ValidationError("transform size mismatch");
  fftw_execute_dft(backward_->plan, detail::as_fftw(data), detail::as_fftw(data));
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& z : data) z *= scale;
}

SineTransform::SineTransform(int n) : n_(n) {
  if (n < 1) throw ValidationError("sine transform length must be positive");
  plan_ = detail::cached_plan(detail::PlanKind::dst1, 1, n);
}

void SineTransform::forward(std::span<Complex> data) const {
  if (data.size() != static_cast<std::size_t>(n_)) throw ValidationError("transform size mismatch");
  auto* real = reinterpret_cast<double*>(data.data());
  fftw_execute_r2r(plan_->plan, real, real);
}

void SineTransform::inverse(std::span<Complex> data) const {
  forward(data);
  const double scale = 1.0 / (2.0 * (n_ + 1));
  for (auto& z : data) z *= scale;
}

}  // namespace gpsplit
