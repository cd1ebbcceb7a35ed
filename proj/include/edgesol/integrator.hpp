#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "edgesol/equations.hpp"
#include "edgesol/fft.hpp"
#include "edgesol/observables.hpp"
#include "edgesol/residuals.hpp"
#include "edgesol/trajectory.hpp"

namespace edgesol {

enum class Scheme { ifrk4, rk4 };

constexpr const char* to_string(Scheme s) { return s == Scheme::ifrk4 ? "IFRK4" : "RK4"; }

struct IntegratorConfig {
  double dt = 1e-3;
  double t0 = 0.0;
  double t1 = 1.0;
  Scheme scheme = Scheme::ifrk4;
  bool dealias = true;
  std::size_t record_every = 1;
  double decay_gate = kDefaultDecayGate;
  double blowup_threshold = 1e6;
};

/// Checks the config against the equation; throws InvalidArgument naming the
/// violated condition.
inline void validate(const IntegratorConfig& cfg, const EquationSpec& eq) {
  require(std::isfinite(cfg.t0) && std::isfinite(cfg.t1) && cfg.t0 < cfg.t1, ErrorKind::InvalidArgument,
          "need finite t0 < t1");
  require(cfg.dt > 0.0 && cfg.dt <= cfg.t1 - cfg.t0, ErrorKind::InvalidArgument, "need 0 < dt <= t1 - t0");
  require(cfg.record_every >= 1, ErrorKind::InvalidArgument, "record_every must be positive");
  require(cfg.decay_gate > 0.0, ErrorKind::InvalidArgument, "decay gate must be positive");
  if (eq.is<VariableCoeffNls>()) {
    const auto& v = eq.as<VariableCoeffNls>();
    if (v.b != 0.0) {
      const double singular = -v.a / v.b;
      const double distance =
          singular < cfg.t0 ? cfg.t0 - singular : (singular > cfg.t1 ? singular - cfg.t1 : 0.0);
      require(distance >= 1e-3, ErrorKind::InvalidArgument,
              "t0 must avoid coefficient singularity: F = 1/(a+bt) blows up at t=" + num(singular));
      if (v.a == 0.0) {
        require(cfg.t0 >= 0.1, ErrorKind::InvalidArgument,
                "t0 must avoid coefficient singularity: the F = 1/t equation is integrated from t0 >= 0.1");
      }
    }
  }
  if (eq.is<OscillatorNls>()) {
    const double w = eq.as<OscillatorNls>().omega;
    if (w != 0.0) {
      // zeros of cos(w t) at w t = pi/2 + n pi
      const double lo = std::min(w * cfg.t0, w * cfg.t1);
      const double hi = std::max(w * cfg.t0, w * cfg.t1);
      const double n = std::ceil((lo - std::numbers::pi / 2) / std::numbers::pi);
      const double zero = std::numbers::pi / 2 + n * std::numbers::pi;
      require(zero > hi + 1e-3 && zero - std::numbers::pi < lo - 1e-3, ErrorKind::InvalidArgument,
              "interval crosses a zero of cos(omega t)");
    }
  }
}

namespace detail {

/// Spectral-space stepper state shared by both schemes.
class Stepper {
 public:
  Stepper(const EquationSpec& eq, const Grid1D& grid, const IntegratorConfig& cfg, double dt)
      : eq_(eq), grid_(grid), ws_(grid), cfg_(cfg), dt_(dt), n_(grid.size()) {
    full_.resize(n_);
    half_.resize(n_);
    lambda_.resize(n_);
    const auto k = ws_.wavenumbers();
    for (std::size_t j = 0; j < n_; ++j) {
      lambda_[j] = cplx(0.0, -eq.sigma() * k[j] * k[j]);
      full_[j] = std::exp(lambda_[j] * dt);
      half_[j] = std::exp(lambda_[j] * (0.5 * dt));
    }
  }

  std::vector<cplx> to_spectral(std::span<const cplx> psi) { return ws_.forward(psi); }
  std::vector<cplx> to_physical(std::span<const cplx> spec) { return ws_.backward(spec); }

  /// Spectrum of -i W[psi] (dealiased when configured).
  std::vector<cplx> nonlinear(double t, const std::vector<cplx>& spec) {
    const auto psi = ws_.backward(spec);
    std::vector<cplx> psi_x(n_);
    if (eq_.needs_gradient()) {
      auto s = spec;
      ws_.apply_derivative(s, 1);
      psi_x = ws_.backward(s);
    }
    auto w = potential_term(eq_, t, grid_, psi, psi_x);
    for (auto& v : w) v *= cplx(0.0, -1.0);
    auto out = ws_.forward(w);
    if (cfg_.dealias) ws_.apply_dealias(out);
    return out;
  }

  void step(double t, std::vector<cplx>& u) {
    if (cfg_.scheme == Scheme::ifrk4) {
      step_integrating_factor(t, u);
    } else {
      step_explicit(t, u);
    }
  }

 private:
  // Lawson RK4: the linear part is propagated exactly by exp(lambda dt).
  void step_integrating_factor(double t, std::vector<cplx>& u) {
    const double h = dt_;
    std::vector<cplx> tmp(n_);
    const auto k1 = nonlinear(t, u);
    for (std::size_t j = 0; j < n_; ++j) tmp[j] = half_[j] * (u[j] + 0.5 * h * k1[j]);
    const auto k2 = nonlinear(t + 0.5 * h, tmp);
    for (std::size_t j = 0; j < n_; ++j) tmp[j] = half_[j] * u[j] + 0.5 * h * k2[j];
    const auto k3 = nonlinear(t + 0.5 * h, tmp);
    for (std::size_t j = 0; j < n_; ++j) tmp[j] = full_[j] * u[j] + h * half_[j] * k3[j];
    const auto k4 = nonlinear(t + h, tmp);
    for (std::size_t j = 0; j < n_; ++j) {
      u[j] = full_[j] * u[j] + (h / 6.0) * (full_[j] * k1[j] + 2.0 * half_[j] * (k2[j] + k3[j]) + k4[j]);
    }
  }

  // Classical RK4 on u' = lambda u + N(u).
  void step_explicit(double t, std::vector<cplx>& u) {
    const double h = dt_;
    auto f = [&](double tt, const std::vector<cplx>& v) {
      auto out = nonlinear(tt, v);
      for (std::size_t j = 0; j < n_; ++j) out[j] += lambda_[j] * v[j];
      return out;
    };
    std::vector<cplx> tmp(n_);
    const auto k1 = f(t, u);
    for (std::size_t j = 0; j < n_; ++j) tmp[j] = u[j] + 0.5 * h * k1[j];
    const auto k2 = f(t + 0.5 * h, tmp);
    for (std::size_t j = 0; j < n_; ++j) tmp[j] = u[j] + 0.5 * h * k2[j];
    const auto k3 = f(t + 0.5 * h, tmp);
    for (std::size_t j = 0; j < n_; ++j) tmp[j] = u[j] + h * k3[j];
    const auto k4 = f(t + h, tmp);
    for (std::size_t j = 0; j < n_; ++j) u[j] += (h / 6.0) * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
  }

  const EquationSpec& eq_;
  Grid1D grid_;
  SpectralWorkspace ws_;
  IntegratorConfig cfg_;
  double dt_;
  std::size_t n_;
  std::vector<cplx> lambda_, full_, half_;
};

inline ObservableSample observe(const ComplexField& psi) {
  return {psi.time_tag(), mass(psi), momentum(psi), peak_position(psi, PeakRefinement::parabolic)};
}

inline void check_health(const ComplexField& psi, const IntegratorConfig& cfg) {
  const double edge = edge_amplitude(psi);
  require(edge < cfg.decay_gate, ErrorKind::BoundaryLeak,
          "|psi| = " + num(edge) + " at the grid edge at t=" + num(psi.time_tag()));
}

}  // namespace detail

/// Fixed-step evolution from cfg.t0 to cfg.t1. The step is shrunk, if needed,
/// so an integer number of steps lands exactly on t1.
inline TrajectoryRecord evolve(const EquationSpec& eq, const ComplexField& psi0, const IntegratorConfig& cfg) {
  validate(cfg, eq);
  const auto& grid = psi0.grid();
  detail::check_health(psi0.with_time(cfg.t0), cfg);

  const double span = cfg.t1 - cfg.t0;
  const auto steps = static_cast<std::size_t>(std::ceil(span / cfg.dt - 1e-9));
  const double dt = span / static_cast<double>(steps);

  detail::Stepper stepper(eq, grid, cfg, dt);
  TrajectoryRecord rec{eq, {}, {}, {}, {}, {}, steps, dt};
  auto record = [&](const ComplexField& f) {
    rec.times.push_back(f.time_tag());
    rec.fields.push_back(f);
    rec.observables.push_back(detail::observe(f));
  };

  // Continuity is measured on the last five steps around each recorded step,
  // so its time stencil uses dt whatever the recording interval.
  std::deque<ComplexField> window{psi0.with_time(cfg.t0)};
  std::vector<std::size_t> recorded_steps{0};
  auto measure_continuity = [&](std::size_t s) {
    if (s < 4 || !std::binary_search(recorded_steps.begin(), recorded_steps.end(), s - 2)) return;
    const std::vector<ComplexField> five(window.begin(), window.end());
    const auto series = continuity_residual(eq, five);
    rec.continuity_times.push_back(series.times.front());
    rec.continuity.push_back(series.values.front());
  };

  record(psi0.with_time(cfg.t0));
  auto u = stepper.to_spectral(psi0.values());
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t = cfg.t0 + static_cast<double>(s - 1) * dt;
    stepper.step(t, u);
    auto values = stepper.to_physical(u);
    for (const auto& v : values) {
      const double a = std::abs(v);
      if (!std::isfinite(a) || a > cfg.blowup_threshold) {
        fail(ErrorKind::BlowUp, "|psi| exceeded " + num(cfg.blowup_threshold) + " at t=" +
                                    num(t + dt));
      }
    }
    const double tn = s == steps ? cfg.t1 : cfg.t0 + static_cast<double>(s) * dt;
    ComplexField field(grid, std::move(values), tn);
    detail::check_health(field, cfg);
    if (s % cfg.record_every == 0 || s == steps) {
      record(field);
      recorded_steps.push_back(s);
    }
    window.push_back(std::move(field));
    if (window.size() > 5) window.pop_front();
    measure_continuity(s);
  }
  return rec;
}

struct ConvergenceReport {
  double order;  // NaN when at the floor
  double coarse_difference;
  double fine_difference;
  bool at_floor;
};

/// Self-convergence of the time stepper: runs at dt, dt/2, dt/4 and compares
/// final states. Differences below `floor` are reported as the machine floor.
inline ConvergenceReport convergence_order(const EquationSpec& eq, const ComplexField& psi0, double base_dt,
                                           IntegratorConfig cfg, double floor = 1e-12) {
  auto final_state = [&](double dt) {
    cfg.dt = dt;
    cfg.record_every = std::numeric_limits<std::size_t>::max();
    return evolve(eq, psi0, cfg).final_field();
  };
  const auto u1 = final_state(base_dt);
  const auto u2 = final_state(base_dt / 2.0);
  const auto u4 = final_state(base_dt / 4.0);
  const double e1 = max_abs_difference(u1, u2);
  const double e2 = max_abs_difference(u2, u4);
  if (e1 < floor || e2 < floor) return {std::numeric_limits<double>::quiet_NaN(), e1, e2, true};
  return {std::log2(e1 / e2), e1, e2, false};
}

}  // namespace edgesol
