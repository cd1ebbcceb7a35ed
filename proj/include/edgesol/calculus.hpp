#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "edgesol/fft.hpp"
#include "edgesol/grid.hpp"

namespace edgesol {

inline void require_derivative_order(int order) {
  require(order == 1 || order == 2, ErrorKind::InvalidArgument, "derivative order must be 1 or 2");
}

/// Fourier pseudospectral derivative on the periodic grid.
inline ComplexField spectral_derivative(const ComplexField& f, int order) {
  require_derivative_order(order);
  auto& ws = workspace_for(f.grid());
  return ComplexField(f.grid(), ws.derivative(f.values(), order), f.time_tag());
}

inline RealField spectral_derivative(const RealField& f, int order) {
  require_derivative_order(order);
  std::vector<cplx> values(f.values().begin(), f.values().end());
  auto d = workspace_for(f.grid()).derivative(values, order);
  std::vector<double> out(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) out[k] = d[k].real();
  return RealField(f.grid(), std::move(out), f.time_tag());
}

/// Result of a centered finite-difference derivative: nodes closer than
/// `edge_margin` to either end have no full stencil and are set to zero.
struct InteriorDerivative {
  ComplexField values;
  std::size_t edge_margin;
};

namespace detail {
// Eighth-order centered stencils (offsets 1..4, antisymmetric / symmetric).
inline constexpr std::array<double, 4> kFirstDerivativeStencil = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0,
                                                                  -1.0 / 280.0};
inline constexpr double kSecondDerivativeCenter = -205.0 / 72.0;
inline constexpr std::array<double, 4> kSecondDerivativeStencil = {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0,
                                                                   -1.0 / 560.0};
}  // namespace detail

inline constexpr std::size_t kInteriorMargin = 4;

/// Centered finite differences that never wrap around the seam, for fields
/// that are not periodic (gauge-transformed fields carry a phase jump there).
inline InteriorDerivative fd_derivative_interior(const ComplexField& f, int order) {
  require_derivative_order(order);
  require(f.size() >= 2 * kInteriorMargin + 1, ErrorKind::InvalidArgument,
          "grid too small for interior differences");
  const std::size_t n = f.size();
  const double h = f.grid().spacing();
  std::vector<cplx> out(n, cplx{});
  for (std::size_t k = kInteriorMargin; k + kInteriorMargin < n; ++k) {
    cplx acc{};
    if (order == 1) {
      for (std::size_t m = 1; m <= kInteriorMargin; ++m) {
        acc += detail::kFirstDerivativeStencil[m - 1] * (f[k + m] - f[k - m]);
      }
      out[k] = acc / h;
    } else {
      acc = detail::kSecondDerivativeCenter * f[k];
      for (std::size_t m = 1; m <= kInteriorMargin; ++m) {
        acc += detail::kSecondDerivativeStencil[m - 1] * (f[k + m] + f[k - m]);
      }
      out[k] = acc / (h * h);
    }
  }
  return {ComplexField(f.grid(), std::move(out), f.time_tag()), kInteriorMargin};
}

namespace detail {
// Weights (x1440) for the integral over cell [j, j+1] of the degree-5
// interpolant through nodes 0..5.
inline constexpr std::array<std::array<double, 6>, 5> kCellWeights = {{
    {475, 1427, -798, 482, -173, 27},
    {-27, 637, 1022, -258, 77, -11},
    {11, -93, 802, 802, -93, 11},
    {-11, 77, -258, 1022, 637, -27},
    {27, -173, 482, -798, 1427, 475},
}};
}  // namespace detail

enum class Quadrature { spectral, newton_cotes };

/// P(x_k) = integral of rho from -L to x_k, P(-L) = 0.
///
/// spectral: mean * (x + L) plus the antiderivative of the zero-mean part,
/// exact for band-limited periodic rho (decayed densities).
/// newton_cotes: each cell integrated with the quintic interpolant on the
/// most centered six-node window; sixth order, no periodicity assumed.
inline RealField cumulative_integral(const RealField& rho, Quadrature how = Quadrature::spectral) {
  const std::size_t n = rho.size();
  const double h = rho.grid().spacing();
  std::vector<double> out(n, 0.0);
  if (how == Quadrature::newton_cotes) {
    for (std::size_t cell = 0; cell + 1 < n; ++cell) {
      const std::size_t start = cell < 2 ? 0 : std::min(cell - 2, n - 6);
      const auto& w = detail::kCellWeights[cell - start];
      double acc = 0.0;
      for (std::size_t i = 0; i < 6; ++i) acc += w[i] * rho[start + i];
      out[cell + 1] = out[cell] + acc * h / 1440.0;
    }
    return RealField(rho.grid(), std::move(out), rho.time_tag());
  }
  auto& ws = workspace_for(rho.grid());
  std::vector<cplx> spec(n);
  for (std::size_t k = 0; k < n; ++k) spec[k] = rho[k];
  spec = ws.forward(spec);
  const double mean = spec[0].real() / static_cast<double>(n);
  const auto k = ws.wavenumbers();
  spec[0] = 0.0;
  spec[ws.nyquist_index()] = 0.0;  // sin(k_nyq s) vanishes on the nodes
  for (std::size_t j = 1; j < n; ++j) {
    if (k[j] != 0.0) spec[j] /= cplx(0.0, k[j]);
  }
  const auto g = ws.backward(spec);
  for (std::size_t j = 0; j < n; ++j) out[j] = mean * (rho.grid().x(j) + rho.grid().half_length()) + g[j].real() - g[0].real();
  return RealField(rho.grid(), std::move(out), rho.time_tag());
}

/// Trigonometric interpolant of periodic samples, evaluable at any x.
class BandLimitedInterpolant {
 public:
  explicit BandLimitedInterpolant(const ComplexField& f)
      : grid_(f.grid()), spectrum_(workspace_for(f.grid()).forward(f.values())) {}

  cplx operator()(double x) const {
    const auto& ws = workspace_for(grid_);
    const auto k = ws.wavenumbers();
    const double s = x + grid_.half_length();
    const std::size_t nyq = ws.nyquist_index();
    cplx acc{};
    for (std::size_t j = 0; j < spectrum_.size(); ++j) {
      if (j == nyq) {
        acc += spectrum_[j] * std::cos(k[j] * s);
      } else {
        acc += spectrum_[j] * std::polar(1.0, k[j] * s);
      }
    }
    return acc / static_cast<double>(spectrum_.size());
  }

 private:
  Grid1D grid_;
  std::vector<cplx> spectrum_;
};

}  // namespace edgesol
