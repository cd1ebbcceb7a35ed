#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "edgesol/error.hpp"

namespace edgesol {

using cplx = std::complex<double>;

/// Uniform periodic grid on [-L, L) with N nodes, x_k = -L + k*dx.
class Grid1D {
 public:
  static constexpr double kDefaultHalfLength = 40.0;
  static constexpr std::size_t kDefaultPoints = 1024;

  Grid1D() : Grid1D(kDefaultHalfLength, kDefaultPoints) {}

  Grid1D(double half_length, std::size_t num_points)
      : half_length_(half_length), num_points_(num_points) {
    require(std::isfinite(half_length) && half_length > 0.0, ErrorKind::InvalidArgument,
            "grid half-length must be positive and finite");
    require(num_points >= 16 && std::has_single_bit(num_points), ErrorKind::InvalidArgument,
            "grid size N=" + std::to_string(num_points) + " must be a power of two >= 16");
  }

  double half_length() const noexcept { return half_length_; }
  std::size_t size() const noexcept { return num_points_; }
  double spacing() const noexcept { return 2.0 * half_length_ / static_cast<double>(num_points_); }
  double length() const noexcept { return 2.0 * half_length_; }

  double x(std::size_t k) const noexcept {
    return -half_length_ + static_cast<double>(k) * spacing();
  }

  std::vector<double> nodes() const {
    std::vector<double> xs(num_points_);
    for (std::size_t k = 0; k < num_points_; ++k) xs[k] = x(k);
    return xs;
  }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double half_length_;
  std::size_t num_points_;
};

namespace detail {
inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
}  // namespace detail

/// Samples of a scalar field on a Grid1D at one time instant. Immutable
/// in shape; finite on construction.
template <typename T>
class Field {
 public:
  using value_type = T;

  Field(Grid1D grid, std::vector<T> values, double time_tag = 0.0)
      : grid_(grid), values_(std::move(values)), time_tag_(time_tag) {
    require(values_.size() == grid_.size(), ErrorKind::InvalidArgument,
            "field has " + std::to_string(values_.size()) + " samples, grid has " +
                std::to_string(grid_.size()));
    for (const auto& v : values_) {
      require(detail::is_finite(v), ErrorKind::NonFiniteInput, "field sample is NaN or Inf");
    }
  }

  /// Zero field.
  explicit Field(Grid1D grid, double time_tag = 0.0)
      : grid_(grid), values_(grid.size(), T{}), time_tag_(time_tag) {}

  template <typename F>
  static Field from_function(const Grid1D& grid, double time_tag, F&& f) {
    std::vector<T> values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) values[k] = static_cast<T>(f(grid.x(k)));
    return Field(grid, std::move(values), time_tag);
  }

  const Grid1D& grid() const noexcept { return grid_; }
  double time_tag() const noexcept { return time_tag_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const T> values() const noexcept { return values_; }
  const T& operator[](std::size_t k) const { return values_[k]; }

  Field with_time(double t) const { return Field(grid_, values_, t); }

 private:
  Grid1D grid_;
  std::vector<T> values_;
  double time_tag_;
};

using ComplexField = Field<cplx>;
using RealField = Field<double>;

inline void require_finite(std::span<const cplx> values, const char* what) {
  for (const auto& v : values) {
    require(detail::is_finite(v), ErrorKind::NonFiniteInput, std::string(what) + " is not finite");
  }
}

/// L-infinity distance over nodes [skip, N - skip).
template <typename T>
double max_abs_difference(const Field<T>& a, const Field<T>& b, std::size_t skip = 0) {
  require(a.grid() == b.grid(), ErrorKind::InvalidArgument, "fields live on different grids");
  double worst = 0.0;
  for (std::size_t k = skip; k + skip < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

template <typename T>
double max_abs(const Field<T>& f, std::size_t skip = 0) {
  double worst = 0.0;
  for (std::size_t k = skip; k + skip < f.size(); ++k) worst = std::max(worst, std::abs(f[k]));
  return worst;
}

/// Largest |f| over the `width` outermost nodes at each edge.
template <typename T>
double edge_amplitude(const Field<T>& f, std::size_t width = 4) {
  double worst = 0.0;
  const std::size_t n = f.size();
  for (std::size_t k = 0; k < width && k < n; ++k) {
    worst = std::max({worst, std::abs(f[k]), std::abs(f[n - 1 - k])});
  }
  return worst;
}

}  // namespace edgesol
