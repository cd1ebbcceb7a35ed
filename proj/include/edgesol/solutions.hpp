#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "edgesol/equations.hpp"
#include "edgesol/grid.hpp"

namespace edgesol {

/// Open time interval (lo, hi); infinite ends allowed.
struct TimeDomain {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static TimeDomain all() { return {}; }
  static TimeDomain positive() { return {0.0, std::numeric_limits<double>::infinity()}; }

  bool contains(double t) const noexcept { return t > lo && t < hi; }
  bool empty() const noexcept { return !(lo < hi); }
  TimeDomain intersect(const TimeDomain& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
};

using Evaluator = std::function<cplx(double t, double x)>;

/// An analytic solution: pointwise evaluator plus the equation it claims to
/// solve. Immutable after construction.
class ClosedFormSolution {
 public:
  ClosedFormSolution(std::string name, EquationSpec solves, TimeDomain domain, Evaluator evaluator,
                     bool gauge_seam = false)
      : name_(std::move(name)),
        solves_(std::move(solves)),
        domain_(domain),
        evaluator_(std::move(evaluator)),
        gauge_seam_(gauge_seam) {}

  const std::string& name() const noexcept { return name_; }
  const EquationSpec& solves() const noexcept { return solves_; }
  const TimeDomain& domain() const noexcept { return domain_; }
  /// True when a non-local gauge factor is part of the construction; such
  /// solutions are differentiated with interior stencils only.
  bool gauge_seam() const noexcept { return gauge_seam_; }

  cplx operator()(double t, double x) const {
    require(domain_.contains(t), ErrorKind::InvalidTime,
            name_ + " evaluated outside its time domain at t=" + num(t));
    return evaluator_(t, x);
  }

  /// Evaluator without the domain check, for composing maps.
  const Evaluator& raw() const noexcept { return evaluator_; }

  ComplexField sample(const Grid1D& grid, double t) const {
    require(domain_.contains(t), ErrorKind::InvalidTime,
            name_ + " sampled outside its time domain at t=" + num(t));
    std::vector<cplx> values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) values[k] = evaluator_(t, grid.x(k));
    return ComplexField(grid, std::move(values), t);
  }

 private:
  std::string name_;
  EquationSpec solves_;
  TimeDomain domain_;
  Evaluator evaluator_;
  bool gauge_seam_;
};

inline double sech(double x) { return 1.0 / std::cosh(x); }

/// Parameters of the travelling (chiral) soliton. alpha = sqrt(v^2 - 2 omega)
/// is stored and revalidated.
class SolitonParams {
 public:
  static SolitonParams chiral(double v, double omega, double kappa, double x0 = 0.0, int sign = +1) {
    require(std::isfinite(v) && std::isfinite(omega) && std::isfinite(kappa) && std::isfinite(x0),
            ErrorKind::InvalidArgument, "soliton parameters must be finite");
    require(v > 0.0, ErrorKind::ChiralityViolation,
            "travelling soliton needs v > 0 (attractive coupling 2 kappa^2 v), got v=" + num(v));
    const double width2 = v * v - 2.0 * omega;
    require(width2 > 0.0, ErrorKind::WidthViolation,
            "v^2 - 2 omega must be positive, got " + num(width2));
    require(kappa != 0.0, ErrorKind::InvalidArgument, "kappa must be nonzero");
    require(sign == 1 || sign == -1, ErrorKind::InvalidArgument, "sign must be +1 or -1");
    return SolitonParams(v, omega, std::sqrt(width2), x0, kappa, sign);
  }

  double v() const noexcept { return v_; }
  double omega() const noexcept { return omega_; }
  double alpha() const noexcept { return alpha_; }
  double x0() const noexcept { return x0_; }
  double kappa() const noexcept { return kappa_; }
  int sign() const noexcept { return sign_; }

 private:
  SolitonParams(double v, double omega, double alpha, double x0, double kappa, int sign)
      : v_(v), omega_(omega), alpha_(alpha), x0_(x0), kappa_(kappa), sign_(sign) {
    require(std::abs(alpha_ * alpha_ - (v_ * v_ - 2.0 * omega_)) <= 1e-12 * std::max(1.0, v_ * v_),
            ErrorKind::WidthViolation, "alpha^2 != v^2 - 2 omega");
  }

  double v_, omega_, alpha_, x0_, kappa_;
  int sign_;
};

/// psi = sign e^{i(vx - wt)} sqrt(1/(2 kappa^2 v)) alpha sech(alpha (x - vt - x0)).
/// Solves CurrentNLS(kappa) and, equivalently on this profile, CubicNLS(2 kappa^2 v).
inline ClosedFormSolution chiral_soliton(const SolitonParams& p) {
  const double amplitude = p.sign() * p.alpha() / std::sqrt(2.0 * p.kappa() * p.kappa() * p.v());
  auto eval = [p, amplitude](double t, double x) {
    return amplitude * sech(p.alpha() * (x - p.v() * t - p.x0())) * std::polar(1.0, p.v() * x - p.omega() * t);
  };
  return {"chiral", EquationSpec::current_nls(p.kappa()), TimeDomain::all(), eval};
}

/// Psi = e^{i sigma t} sqrt(2 sigma / F) sech(x - x0); with sigma = 1/2, F = 1
/// this is e^{it/2} / cosh(x - x0).
inline ClosedFormSolution standing_soliton(double x0, double sigma = 0.5, double coupling = 1.0) {
  require(coupling > 0.0, ErrorKind::InvalidArgument, "standing soliton needs an attractive coupling F > 0");
  const double amplitude = std::sqrt(2.0 * sigma / coupling);
  auto eval = [=](double t, double x) { return amplitude * sech(x - x0) * std::polar(1.0, sigma * t); };
  return {"standing", EquationSpec::cubic_nls(coupling, sigma), TimeDomain::all(), eval};
}

/// Image of the standing soliton under the lens map, solving the F = 1/t
/// equation for t > 0:
///   psi = t^{-1/2} exp(i(x^2/(4 sigma t) - sigma/t)) / cosh(-x/t - x0).
inline ClosedFormSolution time_dependent_soliton(double x0, double sigma = 0.5) {
  auto eval = [=](double t, double x) {
    const double phase = x * x / (4.0 * sigma * t) - sigma / t;
    return std::polar(std::sqrt(2.0 * sigma / t) * sech(-x / t - x0), phase);
  };
  return {"lens", EquationSpec::variable_coeff_nls(0.0, 1.0, sigma), TimeDomain::positive(), eval};
}

/// rho = |v|/(2 kappa^2) / (sqrt2 cosh(v (x - vt/2)) + sign v),  psi = sqrt(rho) e^{ivx/2}.
inline ClosedFormSolution extended_soliton(double v, double kappa) {
  require(std::isfinite(v) && v != 0.0, ErrorKind::DegenerateVelocity, "extended soliton needs v != 0");
  require(std::isfinite(kappa) && kappa != 0.0, ErrorKind::InvalidArgument, "kappa must be nonzero");
  const double scale = std::abs(v) / (2.0 * kappa * kappa);
  const double sgn = v > 0.0 ? 1.0 : -1.0;
  auto eval = [=](double t, double x) {
    const double rho = scale / (std::numbers::sqrt2 * std::cosh(v * (x - 0.5 * v * t)) + sgn);
    return std::polar(std::sqrt(rho), 0.5 * v * x);
  };
  return {"extended", EquationSpec::extended_current_nls(kappa), TimeDomain::all(), eval};
}

/// Spreading Gaussian exp(-x^2/w^2) at t = 0, exact for i psi_t = -sigma psi_xx:
///   psi = (w^2/(w^2 + 4 i sigma t))^{1/2} exp(-x^2/(w^2 + 4 i sigma t)).
inline ClosedFormSolution gaussian_free_packet(double sigma, double width = 1.0) {
  require(width > 0.0, ErrorKind::InvalidArgument, "Gaussian width must be positive");
  const double w2 = width * width;
  auto eval = [=](double t, double x) {
    const cplx denom(w2, 4.0 * sigma * t);
    return std::sqrt(w2 / denom) * std::exp(-x * x / denom);
  };
  return {"gaussian", EquationSpec::free_linear(sigma), TimeDomain::all(), eval};
}

/// The travelling-soliton profile at t = 0 without the chirality check, used
/// to show that v < 0 data do not travel rigidly: |v| sets the width.
inline ComplexField phased_sech_profile(const Grid1D& grid, double v, double omega, double kappa) {
  const double width2 = v * v - 2.0 * omega;
  require(width2 > 0.0, ErrorKind::WidthViolation, "v^2 - 2 omega must be positive");
  const double alpha = std::sqrt(width2);
  const double amplitude = alpha / std::sqrt(2.0 * kappa * kappa * std::abs(v));
  return ComplexField::from_function(grid, 0.0, [&](double x) {
    return amplitude * sech(alpha * x) * std::polar(1.0, v * x);
  });
}

}  // namespace edgesol
