#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "edgesol/error.hpp"
#include "edgesol/grid.hpp"

namespace edgesol::testing {

/// Fixed-seed source for the property tests; every draw is reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed = 0x5eed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  cplx complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

  /// Sum of a few Gaussian wave packets well inside the box: smooth,
  /// decayed at the edges, resolved on the default grid.
  ComplexField packet_field(const Grid1D& grid, int packets = 3) {
    struct P {
      cplx amp;
      double center, width, wavenumber;
    };
    std::vector<P> ps;
    for (int i = 0; i < packets; ++i) {
      ps.push_back({complex(), uniform(-8.0, 8.0), uniform(0.7, 2.0), uniform(-2.0, 2.0)});
    }
    return ComplexField::from_function(grid, 0.0, [&](double x) {
      cplx acc{};
      for (const auto& p : ps) {
        const double s = (x - p.center) / p.width;
        acc += p.amp * std::exp(-s * s) * std::polar(1.0, p.wavenumber * x);
      }
      return acc;
    });
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Kind of the edgesol::Error thrown by f; records a failure if none is.
template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no edgesol::Error thrown";
  return ErrorKind::ParseError;
}

}  // namespace edgesol::testing
