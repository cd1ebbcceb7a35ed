#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "edgesol/calculus.hpp"
#include "edgesol/equations.hpp"
#include "edgesol/solutions.hpp"

namespace edgesol {

inline constexpr double kMapSingularMargin = 1e-6;
inline constexpr double kDefaultDecayGate = 1e-10;

// ---------------------------------------------------------------------------
// Non-local gauge  psi = exp(-i kappa^2 \int_{x_ref}^x rho) phi
// ---------------------------------------------------------------------------

enum class GaugeDirection { forward, backward };

struct GaugeTransform {
  double kappa;
  GaugeDirection direction = GaugeDirection::forward;
  /// Lower limit of the density integral; the left grid edge -L.
  double reference_point = -Grid1D::kDefaultHalfLength;
  double decay_gate = kDefaultDecayGate;

  double phase_sign() const noexcept { return direction == GaugeDirection::forward ? -1.0 : 1.0; }
};

inline ComplexField apply_gauge(const ComplexField& field, const GaugeTransform& g) {
  require(std::isfinite(g.kappa), ErrorKind::InvalidArgument, "gauge kappa must be finite");
  std::vector<double> rho(field.size());
  for (std::size_t k = 0; k < rho.size(); ++k) rho[k] = std::norm(field[k]);
  const RealField density(field.grid(), rho, field.time_tag());
  const double edge = edge_amplitude(density);
  require(edge < g.decay_gate, ErrorKind::BoundaryLeak,
          "density at the grid edge is " + num(edge) + ", above the decay gate");
  const auto integral = cumulative_integral(density);
  const double scale = g.phase_sign() * g.kappa * g.kappa;
  std::vector<cplx> out(field.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::polar(1.0, scale * integral[k]) * field[k];
  return ComplexField(field.grid(), std::move(out), field.time_tag());
}

inline ComplexField gauge_forward(const ComplexField& phi, double kappa, double decay_gate = kDefaultDecayGate) {
  return apply_gauge(phi, {kappa, GaugeDirection::forward, -phi.grid().half_length(), decay_gate});
}

inline ComplexField gauge_backward(const ComplexField& psi, double kappa, double decay_gate = kDefaultDecayGate) {
  return apply_gauge(psi, {kappa, GaugeDirection::backward, -psi.grid().half_length(), decay_gate});
}

/// Equation reached by gauging a solution of `source`.
inline EquationSpec gauge_target(const EquationSpec& source, const GaugeTransform& g) {
  const bool fwd = g.direction == GaugeDirection::forward;
  auto same_kappa = [&](double k) {
    require(k == g.kappa, ErrorKind::InvalidArgument, "gauge kappa differs from the equation's kappa");
  };
  if (fwd && source.is<GaugedNls>()) {
    same_kappa(source.as<GaugedNls>().kappa);
    return EquationSpec::current_nls(g.kappa);
  }
  if (fwd && source.is<Dnls2>()) {
    same_kappa(source.as<Dnls2>().kappa);
    return EquationSpec::extended_current_nls(g.kappa);
  }
  if (!fwd && source.is<CurrentNls>()) {
    same_kappa(source.as<CurrentNls>().kappa);
    return EquationSpec::gauged_nls(g.kappa);
  }
  if (!fwd && source.is<ExtendedCurrentNls>()) {
    same_kappa(source.as<ExtendedCurrentNls>().kappa);
    return EquationSpec::dnls2(g.kappa);
  }
  fail(ErrorKind::InvalidArgument, "gauge map has no target for " + source.name());
}

namespace detail {

/// Running density integral from a fixed reference point, split into panels
/// whose partial sums are memoised per time so each point needs one short
/// quadrature.
class DensityIntegralCache {
 public:
  static constexpr double kPanel = 0.5;
  static constexpr std::size_t kMaxTimes = 64;

  DensityIntegralCache(Evaluator u, double reference) : u_(std::move(u)), ref_(reference) {}

  double operator()(double t, double x) {
    if (x == ref_) return 0.0;
    auto rho = [&](double y) { return std::norm(u_(t, y)); };
    const double offset = (x - ref_) / kPanel;
    const auto panel = static_cast<long>(std::floor(std::abs(offset)));
    const double dir = x > ref_ ? 1.0 : -1.0;
    const double base = partial_sum(t, dir, static_cast<std::size_t>(panel), rho);
    const double start = ref_ + dir * static_cast<double>(panel) * kPanel;
    return base + quad(rho, start, x);
  }

 private:
  template <typename F>
  static double quad(F&& f, double a, double b) {
    if (a == b) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 3, 1e-14);
  }

  template <typename F>
  double partial_sum(double t, double dir, std::size_t panels, F&& rho) {
    std::lock_guard lock(mutex_);
    auto& table = dir > 0 ? right_ : left_;
    if (table.size() >= kMaxTimes && !table.contains(t)) table.clear();
    auto& sums = table[t];
    if (sums.empty()) sums.push_back(0.0);
    while (sums.size() <= panels) {
      const double a = ref_ + dir * static_cast<double>(sums.size() - 1) * kPanel;
      sums.push_back(sums.back() + quad(rho, a, a + dir * kPanel));
    }
    return sums[panels];
  }

  Evaluator u_;
  double ref_;
  std::mutex mutex_;
  std::map<double, std::vector<double>> right_, left_;
};

}  // namespace detail

/// Analytic gauge image; the density integral is evaluated by Gauss-Kronrod
/// quadrature, with panel sums cached per time.
inline ClosedFormSolution apply_gauge(const ClosedFormSolution& sol, const GaugeTransform& g) {
  const auto target = g.kappa == 0.0 ? sol.solves() : gauge_target(sol.solves(), g);
  const Evaluator u = sol.raw();
  const double scale = g.phase_sign() * g.kappa * g.kappa;
  auto cache = std::make_shared<detail::DensityIntegralCache>(u, g.reference_point);
  auto eval = [u, g, scale, cache](double t, double x) {
    if (scale == 0.0) return u(t, x);
    const double edge = std::norm(u(t, g.reference_point));
    require(edge < g.decay_gate, ErrorKind::BoundaryLeak,
            "density at the gauge reference point is " + num(edge));
    return std::polar(1.0, scale * (*cache)(t, x)) * u(t, x);
  };
  const std::string tag = g.direction == GaugeDirection::forward ? "gauge+" : "gauge-";
  return {tag + "(" + sol.name() + ")", target, sol.domain(), eval, true};
}

// ---------------------------------------------------------------------------
// Space-time maps. Each is written as a pullback: the new solution at (T, X)
// is weight * old(source_t, source_x).
// ---------------------------------------------------------------------------

struct PointImage {
  double source_t;
  double source_x;
  cplx weight;
};

/// (t, x) -> (delta^2 t, delta x),  new = delta^{1/2} old.
struct Dilatation {
  double delta;
};
/// (t, x) -> (t/(1 - k t), x/(1 - k t)),  new = (1 - k t)^{1/2} e^{i k x^2 / (4 sigma (1 - k t))} old.
struct Expansion {
  double rate;
};
/// (t, x) -> (t + eps, x).
struct TimeTranslation {
  double epsilon;
};
/// new(t, x) = t^{-1/2} e^{i x^2/(4 sigma t)} old(-1/t, -x/t).
struct LensMap {};

using ConformalGenerator = std::variant<Dilatation, Expansion, TimeTranslation, LensMap>;

/// Chain of generators applied first to last.
struct ConformalMapSpec {
  std::vector<ConformalGenerator> steps;

  static ConformalMapSpec lens() { return {{LensMap{}}}; }
  /// Time translation, expansion and time translation with unit parameters;
  /// reproduces the lens map up to the parity x -> -x.
  static ConformalMapSpec lens_decomposition() {
    return {{TimeTranslation{1.0}, Expansion{1.0}, TimeTranslation{1.0}}};
  }
};

/// (t, x) -> (t, x - 2 alpha t^2) with phase e^{-i(2 alpha x t + 4/3 alpha^2 t^3)}.
struct AcceleratedFrame {
  double alpha;
};
/// Oscillator frame: new = (cos wt)^{-1/2} e^{-i (w/4) x^2 tan wt} old(tan(wt)/w, x/cos wt).
struct NiedererFrame {
  double omega;
};

using FrameMapSpec = std::variant<AcceleratedFrame, NiedererFrame>;

namespace detail {

inline void require_regular(bool ok, const std::string& what) {
  require(ok, ErrorKind::SingularMapPoint, what);
}

// Parameters (a, b) of F = 1/(a + b t) for the cubic families.
inline std::optional<std::pair<double, double>> cubic_family(const EquationSpec& eq) {
  if (eq.is<CubicNls>()) return std::pair{1.0 / eq.as<CubicNls>().coupling, 0.0};
  if (eq.is<VariableCoeffNls>()) return std::pair{eq.as<VariableCoeffNls>().a, eq.as<VariableCoeffNls>().b};
  return std::nullopt;
}

inline EquationSpec cubic_from_family(double a, double b, double sigma) {
  a += 0.0;  // normalise -0
  b += 0.0;
  if (b == 0.0) return EquationSpec::cubic_nls(1.0 / a, sigma);
  return EquationSpec::variable_coeff_nls(a, b, sigma);
}

inline double inf() { return std::numeric_limits<double>::infinity(); }

// Inverse of s = T/(1 + k T) on the branch 1 + k T > 0, with limits.
inline double expansion_target_time(double s, double k) {
  if (std::isinf(s)) return -1.0 / k;
  if (std::abs(1.0 - k * s) == 0.0) return inf();
  return s / (1.0 - k * s);
}

}  // namespace detail

inline PointImage preimage(const ConformalGenerator& g, double sigma, double t, double x) {
  return std::visit(
      [&](const auto& m) -> PointImage {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Dilatation>) {
          return {t / (m.delta * m.delta), x / m.delta, std::sqrt(cplx(m.delta, 0.0))};
        } else if constexpr (std::is_same_v<M, Expansion>) {
          const double q = 1.0 + m.rate * t;  // = 1/(1 - k t_source)
          detail::require_regular(std::abs(q) >= kMapSingularMargin,
                                  "expansion is singular at 1 - k t = 0 (t=" + num(t) + ")");
          const cplx weight = std::exp(cplx(0.0, m.rate * x * x / (4.0 * sigma * q))) / std::sqrt(cplx(q, 0.0));
          return {t / q, x / q, weight};
        } else if constexpr (std::is_same_v<M, TimeTranslation>) {
          return {t - m.epsilon, x, cplx(1.0, 0.0)};
        } else {
          detail::require_regular(std::abs(t) >= kMapSingularMargin, "lens map is singular at t = 0");
          const cplx weight = std::exp(cplx(0.0, x * x / (4.0 * sigma * t))) / std::sqrt(cplx(t, 0.0));
          return {-1.0 / t, -x / t, weight};
        }
      },
      g);
}

inline PointImage preimage(const FrameMapSpec& f, double /*sigma*/, double t, double x) {
  return std::visit(
      [&](const auto& m) -> PointImage {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, AcceleratedFrame>) {
          const double a = m.alpha;
          const double phase = -(2.0 * a * x * t + (4.0 / 3.0) * a * a * t * t * t);
          return {t, x + 2.0 * a * t * t, std::polar(1.0, phase)};
        } else {
          const double w = m.omega;
          if (w == 0.0) return {t, x, cplx(1.0, 0.0)};
          detail::require_regular(std::abs(w * t) < std::numbers::pi / 2 - kMapSingularMargin,
                                  "Niederer map needs |omega t| < pi/2 (t=" + num(t) + ")");
          const double c = std::cos(w * t);
          const double tn = std::tan(w * t);
          const cplx weight = std::polar(1.0 / std::sqrt(c), -0.25 * w * x * x * tn);
          return {tn / w, x / c, weight};
        }
      },
      f);
}

inline TimeDomain image_domain(const ConformalGenerator& g, const TimeDomain& src) {
  using detail::inf;
  return std::visit(
      [&](const auto& m) -> TimeDomain {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Dilatation>) {
          const double d2 = m.delta * m.delta;
          return {d2 * src.lo, d2 * src.hi};
        } else if constexpr (std::is_same_v<M, Expansion>) {
          const double k = m.rate;
          if (k == 0.0) return src;
          // Branch 1 + k T > 0 corresponds to source times below (k>0) or above (k<0) 1/k.
          const TimeDomain branch = k > 0 ? TimeDomain{-inf(), 1.0 / k} : TimeDomain{1.0 / k, inf()};
          const auto s = src.intersect(branch);
          if (s.empty()) return {0.0, 0.0};
          return {detail::expansion_target_time(s.lo, k), detail::expansion_target_time(s.hi, k)};
        } else if constexpr (std::is_same_v<M, TimeTranslation>) {
          return {src.lo + m.epsilon, src.hi + m.epsilon};
        } else {
          // Principal branch t > 0, source time -1/t < 0.
          const auto s = src.intersect({-inf(), 0.0});
          if (s.empty()) return {0.0, 0.0};
          return {std::isinf(s.lo) ? 0.0 : -1.0 / s.lo, s.hi >= 0.0 ? inf() : -1.0 / s.hi};
        }
      },
      g);
}

inline TimeDomain image_domain(const FrameMapSpec& f, const TimeDomain& src) {
  return std::visit(
      [&](const auto& m) -> TimeDomain {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, AcceleratedFrame>) {
          return src;
        } else {
          const double w = m.omega;
          if (w == 0.0) return src;
          const double half = std::numbers::pi / (2.0 * std::abs(w));
          const TimeDomain chart{-half + kMapSingularMargin / std::abs(w), half - kMapSingularMargin / std::abs(w)};
          double lo = std::atan(w * src.lo) / w;
          double hi = std::atan(w * src.hi) / w;
          if (lo > hi) std::swap(lo, hi);
          return chart.intersect({lo, hi});
        }
      },
      f);
}

inline EquationSpec image_equation(const ConformalGenerator& g, const EquationSpec& src) {
  if (src.is<FreeLinear>()) return src;
  const auto family = detail::cubic_family(src);
  require(family.has_value(), ErrorKind::InvalidArgument,
          "conformal maps act on the free or cubic equations, not " + src.name());
  const auto [a, b] = *family;
  return std::visit(
      [&](const auto& m) -> EquationSpec {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Dilatation>) {
          const double d = std::abs(m.delta);
          return detail::cubic_from_family(d * d * d * a, d * b, src.sigma());
        } else if constexpr (std::is_same_v<M, Expansion>) {
          return detail::cubic_from_family(a, a * m.rate + b, src.sigma());
        } else if constexpr (std::is_same_v<M, TimeTranslation>) {
          return detail::cubic_from_family(a - b * m.epsilon, b, src.sigma());
        } else {
          return detail::cubic_from_family(-b, a, src.sigma());
        }
      },
      g);
}

inline EquationSpec image_equation(const FrameMapSpec& f, const EquationSpec& src) {
  require(src.sigma() == 1.0, ErrorKind::InvalidArgument, "frame maps are stated for sigma = 1");
  double coupling = 0.0;
  if (src.is<CubicNls>()) {
    coupling = src.as<CubicNls>().coupling;
  } else {
    require(src.is<FreeLinear>(), ErrorKind::InvalidArgument,
            "frame maps act on the free or constant-coupling cubic equation, not " + src.name());
  }
  return std::visit(
      [&](const auto& m) -> EquationSpec {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, AcceleratedFrame>) {
          return EquationSpec::linear_potential_nls(m.alpha, coupling);
        } else {
          return EquationSpec::oscillator_nls(m.omega, coupling);
        }
      },
      f);
}

namespace detail {

inline std::string describe(const ConformalGenerator& g) {
  return std::visit(
      [](const auto& m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Dilatation>) return "dilate:d=" + num(m.delta);
        else if constexpr (std::is_same_v<M, Expansion>) return "expand:k=" + num(m.rate);
        else if constexpr (std::is_same_v<M, TimeTranslation>) return "shift:e=" + num(m.epsilon);
        else return "D";
      },
      g);
}

inline std::string describe(const FrameMapSpec& f) {
  return std::visit(
      [](const auto& m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, AcceleratedFrame>) return "accel:a=" + num(m.alpha);
        else return "niederer:w=" + num(m.omega);
      },
      f);
}

template <typename Map>
ClosedFormSolution pull_back(const Map& map, const ClosedFormSolution& sol) {
  const auto target = image_equation(map, sol.solves());
  const auto domain = image_domain(map, sol.domain());
  const Evaluator u = sol.raw();
  const double sigma = sol.solves().sigma();
  auto eval = [map, u, sigma](double t, double x) {
    const auto p = preimage(map, sigma, t, x);
    return p.weight * u(p.source_t, p.source_x);
  };
  return {describe(map) + "(" + sol.name() + ")", target, domain, eval, sol.gauge_seam()};
}

}  // namespace detail

inline ClosedFormSolution apply_conformal(const ConformalGenerator& g, const ClosedFormSolution& sol) {
  return detail::pull_back(g, sol);
}

inline ClosedFormSolution apply_conformal(const ConformalMapSpec& map, const ClosedFormSolution& sol) {
  ClosedFormSolution out = sol;
  for (const auto& step : map.steps) out = apply_conformal(step, out);
  return out;
}

inline ClosedFormSolution apply_accelerated_frame(const ClosedFormSolution& sol, double alpha) {
  return detail::pull_back(FrameMapSpec{AcceleratedFrame{alpha}}, sol);
}

inline ClosedFormSolution apply_niederer(const ClosedFormSolution& sol, double omega) {
  return detail::pull_back(FrameMapSpec{NiedererFrame{omega}}, sol);
}

// ---------------------------------------------------------------------------
// Field-level versions: resample a source snapshot at the preimage points.
// Points that fall outside the box are taken as zero (decayed field).
// ---------------------------------------------------------------------------

template <typename Map>
ComplexField map_field(const Map& map, const ComplexField& source, double target_time, double sigma) {
  const auto& grid = source.grid();
  const auto probe = preimage(map, sigma, target_time, 0.0);
  require(std::abs(probe.source_t - source.time_tag()) <= 1e-12 * std::max(1.0, std::abs(probe.source_t)),
          ErrorKind::InvalidArgument,
          "source snapshot is at t=" + num(source.time_tag()) + " but the map needs t=" +
              num(probe.source_t));
  const BandLimitedInterpolant interp(source);
  const double lo = -grid.half_length();
  const double hi = grid.half_length() - grid.spacing();
  std::vector<cplx> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto p = preimage(map, sigma, target_time, grid.x(k));
    out[k] = (p.source_x < lo || p.source_x > hi) ? cplx{} : p.weight * interp(p.source_x);
  }
  return ComplexField(grid, std::move(out), target_time);
}

}  // namespace edgesol
