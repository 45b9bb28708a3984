#pragma once

#include <memory>
#include <span>

#include "gpsplit/field.hpp"

namespace gpsplit {

namespace detail {
struct PlanHandle;
}

/// In-place complex DFT over a periodic 1D or 2D grid (FFTW backend).
/// Forward is unnormalized; inverse divides by N^dim.
class FourierTransform {
 public:
  explicit FourierTransform(const Grid& grid);

  void forward(std::span<Complex> data) const;
  void inverse(std::span<Complex> data) const;

  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_;
  std::shared_ptr<const detail::PlanHandle> forward_;
  std::shared_ptr<const detail::PlanHandle> backward_;
};

/// In-place type-I discrete sine transform applied to the real and imaginary
/// parts of a complex 1D array of length n:
///   Y_k = 2 sum_j X_j sin(pi (j+1)(k+1) / (n+1)).
/// inverse() applies the same transform scaled by 1 / (2(n+1)).
class SineTransform {
 public:
  explicit SineTransform(int n);

  void forward(std::span<Complex> data) const;
  void inverse(std::span<Complex> data) const;

  int size() const noexcept { return n_; }

 private:
  int n_;
  std::shared_ptr<const detail::PlanHandle> plan_;
};

}  // namespace gpsplit
