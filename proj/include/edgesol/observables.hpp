#pragma once

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "edgesol/calculus.hpp"
#include "edgesol/equations.hpp"
#include "edgesol/solutions.hpp"

namespace edgesol {

inline RealField density(const ComplexField& psi) {
  std::vector<double> rho(psi.size());
  for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = std::norm(psi[k]);
  return RealField(psi.grid(), std::move(rho), psi.time_tag());
}

/// Rectangle sum over the periodic grid (spectrally accurate for decayed fields).
inline double integrate(const RealField& f) {
  double acc = 0.0;
  for (double v : f.values()) acc += v;
  return acc * f.grid().spacing();
}

inline double mass(const ComplexField& psi) { return integrate(density(psi)); }

inline double momentum(const ComplexField& psi) { return integrate(current(psi)); }

namespace detail {
template <typename F>
double refine_peak(F&& modulus2, double x_guess, double half_width) {
  auto objective = [&](double x) { return -modulus2(x); };
  const auto r = boost::math::tools::brent_find_minima(objective, x_guess - half_width, x_guess + half_width,
                                                       std::numeric_limits<double>::digits);
  return r.first;
}

template <typename Samples>
std::size_t argmax_modulus(const Samples& values, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (std::norm(values[k]) > std::norm(values[best])) best = k;
  }
  return best;
}
}  // namespace detail

enum class PeakRefinement { parabolic, band_limited };

/// Location of max |psi|. The parabolic fit through the three nodes around the
/// maximum is cheap; the band-limited refinement is accurate to ~1e-8.
inline double peak_position(const ComplexField& psi, PeakRefinement how = PeakRefinement::band_limited) {
  const std::size_t n = psi.size();
  const std::size_t k = detail::argmax_modulus(psi, n);
  if (std::norm(psi[k]) == 0.0) return psi.grid().x(k);
  if (how == PeakRefinement::parabolic) {
    const double fm = std::norm(psi[(k + n - 1) % n]);
    const double f0 = std::norm(psi[k]);
    const double fp = std::norm(psi[(k + 1) % n]);
    const double curvature = fm - 2.0 * f0 + fp;
    const double shift = curvature == 0.0 ? 0.0 : 0.5 * (fm - fp) / curvature;
    return psi.grid().x(k) + shift * psi.grid().spacing();
  }
  const BandLimitedInterpolant interp(psi);
  return detail::refine_peak([&](double x) { return std::norm(interp(x)); }, psi.grid().x(k),
                             psi.grid().spacing());
}

/// Location of max |psi(t, .)| for an analytic solution, refined on the evaluator.
inline double peak_position(const ClosedFormSolution& sol, double t, const Grid1D& grid) {
  const auto samples = sol.sample(grid, t);
  const std::size_t k = detail::argmax_modulus(samples, samples.size());
  return detail::refine_peak([&](double x) { return std::norm(sol(t, x)); }, grid.x(k), grid.spacing());
}

}  // namespace edgesol
