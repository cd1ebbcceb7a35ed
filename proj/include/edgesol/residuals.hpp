#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgesol/calculus.hpp"
#include "edgesol/equations.hpp"
#include "edgesol/observables.hpp"
#include "edgesol/solutions.hpp"
#include "edgesol/trajectory.hpp"
#include "edgesol/transforms.hpp"

namespace edgesol {

struct ResidualReport {
  std::string equation;
  std::string solution;
  double t_begin = 0.0;
  double t_end = 0.0;
  std::size_t time_samples = 0;
  double linf = 0.0;
  double l2 = 0.0;
  std::size_t excluded_edge_nodes = 0;
  std::string spatial_scheme;
  std::string time_scheme = "central-4";
  double time_step = 0.0;
  /// Largest |psi| over the outer nodes at any sampled time.
  double boundary_amplitude = 0.0;
  bool decay_gate_passed = true;

  bool within(double tol) const { return linf <= tol && decay_gate_passed; }
};

struct ResidualOptions {
  double time_step = 1e-3;
  /// Defaults to interior differences for gauge-built solutions, spectral otherwise.
  std::optional<DerivativeScheme> scheme;
  /// W is sampled exactly at the nodes, so truncating its spectrum only adds error.
  bool dealias = false;
  double decay_gate = kDefaultDecayGate;
};

namespace detail {
inline DerivativeScheme pick_scheme(const ClosedFormSolution& sol, const ResidualOptions& opts) {
  if (opts.scheme) return *opts.scheme;
  return sol.gauge_seam() ? DerivativeScheme::interior_fd : DerivativeScheme::spectral;
}

inline const char* scheme_name(DerivativeScheme s) {
  return s == DerivativeScheme::spectral ? "spectral" : "interior-fd8";
}
}  // namespace detail

/// Residual of i psi_t - RHS for an analytic solution at time t: psi_t by
/// fourth-order centered differences of the evaluator, space derivatives on
/// the grid.
inline ResidualReport pde_residual(const EquationSpec& eq, const ClosedFormSolution& sol, double t,
                                   const Grid1D& grid, const ResidualOptions& opts = {}) {
  const double h = opts.time_step;
  require(h > 0.0, ErrorKind::InvalidArgument, "time step must be positive");
  require(sol.domain().contains(t - 2.0 * h) && sol.domain().contains(t + 2.0 * h), ErrorKind::InvalidTime,
          "residual stencil around t=" + num(t) + " leaves the domain of " + sol.name());
  const auto scheme = detail::pick_scheme(sol, opts);
  const auto psi = sol.sample(grid, t);
  const auto pp = sol.sample(grid, t + 2.0 * h);
  const auto p = sol.sample(grid, t + h);
  const auto m = sol.sample(grid, t - h);
  const auto mm = sol.sample(grid, t - 2.0 * h);
  const auto f = rhs(eq, t, psi, {opts.dealias, scheme});

  const std::size_t skip = scheme == DerivativeScheme::interior_fd ? kInteriorMargin : 0;
  double linf = 0.0;
  double sum2 = 0.0;
  for (std::size_t k = skip; k + skip < grid.size(); ++k) {
    const cplx dpsi = (-pp[k] + 8.0 * p[k] - 8.0 * m[k] + mm[k]) / (12.0 * h);
    const double r = std::abs(dpsi - f[k]);
    linf = std::max(linf, r);
    sum2 += r * r;
  }
  ResidualReport report;
  report.equation = eq.name();
  report.solution = sol.name();
  report.t_begin = report.t_end = t;
  report.time_samples = 1;
  report.linf = linf;
  report.l2 = std::sqrt(sum2 * grid.spacing());
  report.excluded_edge_nodes = skip;
  report.spatial_scheme = detail::scheme_name(scheme);
  report.time_step = h;
  report.boundary_amplitude = edge_amplitude(psi);
  // Gauge-built fields are differentiated away from the seam, so only the
  // spectral path depends on boundary decay.
  report.decay_gate_passed = scheme == DerivativeScheme::interior_fd || report.boundary_amplitude < opts.decay_gate;
  return report;
}

/// Worst residual over `count` evenly spaced times in [t0, t1].
inline ResidualReport pde_residual_window(const EquationSpec& eq, const ClosedFormSolution& sol, double t0,
                                          double t1, std::size_t count, const Grid1D& grid,
                                          const ResidualOptions& opts = {}) {
  require(count >= 1 && t1 >= t0, ErrorKind::InvalidArgument, "empty residual window");
  ResidualReport worst;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? t0 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(count - 1);
    const auto r = pde_residual(eq, sol, t, grid, opts);
    if (i == 0) {
      worst = r;
    } else {
      worst.linf = std::max(worst.linf, r.linf);
      worst.l2 = std::max(worst.l2, r.l2);
      worst.boundary_amplitude = std::max(worst.boundary_amplitude, r.boundary_amplitude);
      worst.decay_gate_passed = worst.decay_gate_passed && r.decay_gate_passed;
    }
  }
  worst.t_begin = t0;
  worst.t_end = t1;
  worst.time_samples = count;
  return worst;
}

// ---------------------------------------------------------------------------

enum class CurrentKind { plain, covariant, automatic };

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;

  double max() const { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }
};

namespace detail {
inline bool uniform_spacing(std::span<const double> times) {
  if (times.size() < 3) return true;
  const double h = times[1] - times[0];
  for (std::size_t i = 2; i < times.size(); ++i) {
    if (std::abs((times[i] - times[i - 1]) - h) > 1e-9 * std::abs(h)) return false;
  }
  return true;
}

inline std::vector<double> field_times(std::span<const ComplexField> fields) {
  std::vector<double> ts;
  ts.reserve(fields.size());
  for (const auto& f : fields) ts.push_back(f.time_tag());
  return ts;
}

/// Time-derivative stencils: fourth-order centered for uniform records with
/// at least five entries, second-order centered otherwise.
struct TimeStencil {
  std::size_t first;
  std::size_t last;  // inclusive
  bool fourth_order;
};

inline TimeStencil choose_stencil(std::span<const double> times) {
  require(times.size() >= 3, ErrorKind::InsufficientRecords,
          "need at least 3 records for centered time differences, have " + std::to_string(times.size()));
  if (times.size() >= 5 && uniform_spacing(times)) return {2, times.size() - 3, true};
  return {1, times.size() - 2, false};
}

template <typename Get>
auto time_derivative(const TimeStencil& s, std::span<const double> times, std::size_t i, Get&& get) {
  if (s.fourth_order) {
    const double h = times[i + 1] - times[i];
    return (-get(i + 2) + 8.0 * get(i + 1) - 8.0 * get(i - 1) + get(i - 2)) / (12.0 * h);
  }
  // Three-point centered formula on possibly uneven spacing.
  const double hm = times[i] - times[i - 1];
  const double hp = times[i + 1] - times[i];
  return (hm * hm * get(i + 1) - hp * hp * get(i - 1) + (hp * hp - hm * hm) * get(i)) / (hm * hp * (hm + hp));
}
}  // namespace detail

/// L-infinity of d(rho)/dt + dq/dx at each snapshot where the time stencil
/// fits; q is the plain current, the covariant current, or the equation's own flux.
inline TimeSeries continuity_residual(const EquationSpec& eq, std::span<const ComplexField> fields,
                                      CurrentKind kind = CurrentKind::automatic, std::size_t edge_exclusion = 0) {
  const auto times = detail::field_times(fields);
  const auto stencil = detail::choose_stencil(times);
  auto flux = [&](const ComplexField& psi) {
    switch (kind) {
      case CurrentKind::plain: return current(psi);
      case CurrentKind::covariant: {
        double kappa = 0.0;
        std::visit(
            [&](const auto& v) {
              if constexpr (requires { v.kappa; }) kappa = v.kappa;
            },
            eq.variant());
        return covariant_current(psi, kappa);
      }
      case CurrentKind::automatic: break;
    }
    return conserved_flux(eq, psi);
  };
  std::vector<std::vector<double>> rho(fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto d = density(fields[i]);
    rho[i].assign(d.values().begin(), d.values().end());
  }
  TimeSeries out;
  for (std::size_t i = stencil.first; i <= stencil.last; ++i) {
    const auto dq = spectral_derivative(flux(fields[i]), 1);
    double worst = 0.0;
    const std::size_t n = dq.size();
    for (std::size_t k = edge_exclusion; k + edge_exclusion < n; ++k) {
      const double drho = detail::time_derivative(stencil, times, i, [&](std::size_t r) { return rho[r][k]; });
      worst = std::max(worst, std::abs(drho + dq[k]));
    }
    out.times.push_back(times[i]);
    out.values.push_back(worst);
  }
  return out;
}

inline TimeSeries continuity_residual(const TrajectoryRecord& traj, CurrentKind kind = CurrentKind::automatic,
                                      std::size_t edge_exclusion = 0) {
  return continuity_residual(traj.equation, traj.fields, kind, edge_exclusion);
}

/// Residual of i psi_t - RHS along a sequence of snapshots (e.g. a numerical
/// trajectory, or a gauge image of one); psi_t from the snapshots themselves.
inline TimeSeries snapshot_residual(const EquationSpec& eq, std::span<const ComplexField> fields,
                                    RhsOptions opts = {}) {
  const auto times = detail::field_times(fields);
  const auto stencil = detail::choose_stencil(times);
  const std::size_t skip = opts.scheme == DerivativeScheme::interior_fd ? kInteriorMargin : 0;
  TimeSeries out;
  for (std::size_t i = stencil.first; i <= stencil.last; ++i) {
    const auto f = rhs(eq, times[i], fields[i], opts);
    double worst = 0.0;
    for (std::size_t k = skip; k + skip < f.size(); ++k) {
      const cplx dpsi = detail::time_derivative(stencil, times, i, [&](std::size_t r) { return fields[r][k]; });
      worst = std::max(worst, std::abs(dpsi - f[k]));
    }
    out.times.push_back(times[i]);
    out.values.push_back(worst);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct DensityOdeReport {
  double linf;      // max |(rho')^2 - v^2 rho^2 + 4 k^2 v rho^3 + 4 k^4 rho^4|
  double scale;     // max over nodes of the largest single term
  double relative;  // linf / scale (0 when every term vanishes)
};

/// Travelling-wave density equation (rho')^2 - v^2 rho^2 + 4 kappa^2 v rho^3 + 4 kappa^4 rho^4 = 0,
/// evaluated with a spectral rho' on interior nodes.
inline DensityOdeReport density_ode_residual(double v, double kappa, const RealField& rho) {
  for (double r : rho.values()) {
    require(std::isfinite(r), ErrorKind::NonFiniteInput, "density is not finite");
  }
  const auto drho = spectral_derivative(rho, 1);
  const double k2 = kappa * kappa;
  double linf = 0.0;
  double scale = 0.0;
  for (std::size_t k = kInteriorMargin; k + kInteriorMargin < rho.size(); ++k) {
    const double r = rho[k];
    const double terms[] = {drho[k] * drho[k], v * v * r * r, 4.0 * k2 * v * r * r * r, 4.0 * k2 * k2 * r * r * r * r};
    const double value = terms[0] - terms[1] + terms[2] + terms[3];
    linf = std::max(linf, std::abs(value));
    for (double term : terms) scale = std::max(scale, std::abs(term));
  }
  return {linf, scale, scale > 0.0 ? linf / scale : 0.0};
}

}  // namespace edgesol
