#pragma once

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "edgesol/grid.hpp"

namespace edgesol {

namespace detail {
// The FFTW planner is not re-entrant; execution of distinct plans is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

/// In-place complex DFT of one size. The backward transform is normalized so
/// that backward(forward(f)) == f.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n) {
    buffer_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    std::lock_guard lock(detail::fftw_planner_mutex());
    const int size = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(size, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(size, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~FftPlan() {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buffer_);
  }

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const noexcept { return n_; }

  void forward(std::span<const cplx> in, std::span<cplx> out) { run(forward_, in, out, 1.0); }

  void backward(std::span<const cplx> in, std::span<cplx> out) {
    run(backward_, in, out, 1.0 / static_cast<double>(n_));
  }

 private:
  void run(fftw_plan plan, std::span<const cplx> in, std::span<cplx> out, double scale) {
    auto* data = reinterpret_cast<cplx*>(buffer_);
    std::copy(in.begin(), in.end(), data);
    fftw_execute(plan);
    std::transform(data, data + n_, out.begin(), [scale](const cplx& v) { return v * scale; });
  }

  std::size_t n_;
  fftw_complex* buffer_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

/// Wavenumbers, derivative multipliers and the 2/3-rule mask for one grid,
/// plus the transform plan. One instance per worker thread.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const Grid1D& grid)
      : grid_(grid), plan_(grid.size()), k_(grid.size()), dealias_(grid.size()) {
    const auto n = static_cast<long>(grid.size());
    const double base = std::numbers::pi / grid.half_length();
    for (long j = 0; j < n; ++j) {
      const long m = j < n / 2 ? j : j - n;
      k_[j] = base * static_cast<double>(m);
      dealias_[j] = std::abs(m) <= n / 3 ? 1.0 : 0.0;
    }
    nyquist_ = static_cast<std::size_t>(n / 2);
  }

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const double> wavenumbers() const noexcept { return k_; }
  std::span<const double> dealias_mask() const noexcept { return dealias_; }
  std::size_t nyquist_index() const noexcept { return nyquist_; }

  std::vector<cplx> forward(std::span<const cplx> f) {
    std::vector<cplx> out(f.size());
    plan_.forward(f, out);
    return out;
  }

  std::vector<cplx> backward(std::span<const cplx> f) {
    std::vector<cplx> out(f.size());
    plan_.backward(f, out);
    return out;
  }

  /// Multiplier for d^order/dx^order; the Nyquist mode of odd orders is zeroed.
  cplx derivative_symbol(std::size_t j, int order) const {
    if (order % 2 == 1 && j == nyquist_) return {0.0, 0.0};
    cplx ik(0.0, k_[j]);
    cplx symbol(1.0, 0.0);
    for (int p = 0; p < order; ++p) symbol *= ik;
    return symbol;
  }

  /// Derivative of physical-space samples, returned in physical space.
  std::vector<cplx> derivative(std::span<const cplx> f, int order) {
    auto spectrum = forward(f);
    apply_derivative(spectrum, order);
    return backward(spectrum);
  }

  void apply_derivative(std::span<cplx> spectrum, int order) const {
    for (std::size_t j = 0; j < spectrum.size(); ++j) spectrum[j] *= derivative_symbol(j, order);
  }

  void apply_dealias(std::span<cplx> spectrum) const {
    for (std::size_t j = 0; j < spectrum.size(); ++j) spectrum[j] *= dealias_[j];
  }

 private:
  Grid1D grid_;
  FftPlan plan_;
  std::vector<double> k_;
  std::vector<double> dealias_;
  std::size_t nyquist_ = 0;
};

/// Per-thread workspace cache keyed by grid.
inline SpectralWorkspace& workspace_for(const Grid1D& grid) {
  thread_local std::map<std::pair<double, std::size_t>, std::unique_ptr<SpectralWorkspace>> cache;
  auto& slot = cache[{grid.half_length(), grid.size()}];
  if (!slot) slot = std::make_unique<SpectralWorkspace>(grid);
  return *slot;
}

}  // namespace edgesol
