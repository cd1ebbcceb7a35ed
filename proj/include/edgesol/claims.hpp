#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "edgesol/integrability.hpp"
#include "edgesol/integrator.hpp"
#include "edgesol/io.hpp"
#include "edgesol/residuals.hpp"
#include "edgesol/solutions.hpp"
#include "edgesol/transforms.hpp"

namespace edgesol {

/// One gated quantity inside a claim.
struct ClaimCheck {
  enum class Kind { at_most, exceeds, holds };

  std::string label;
  Kind kind;
  double value;
  double tolerance;

  bool passed() const {
    switch (kind) {
      case Kind::at_most: return value <= tolerance;
      case Kind::exceeds: return value > tolerance;
      case Kind::holds: return value != 0.0;
    }
    return false;
  }

  static ClaimCheck at_most(std::string label, double value, double tol) {
    return {std::move(label), Kind::at_most, value, tol};
  }
  static ClaimCheck exceeds(std::string label, double value, double tol) {
    return {std::move(label), Kind::exceeds, value, tol};
  }
  static ClaimCheck holds(std::string label, bool ok) { return {std::move(label), Kind::holds, ok ? 1.0 : 0.0, 1.0}; }
};

struct ClaimResult {
  std::string name;
  std::vector<ClaimCheck> checks;
  json details = json::object();

  bool passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
  }
};

inline json to_json(const ClaimCheck& c) {
  json j{{"label", c.label}, {"passed", c.passed()}};
  switch (c.kind) {
    case ClaimCheck::Kind::at_most: j["value"] = finite_or_null(c.value); j["max"] = c.tolerance; break;
    case ClaimCheck::Kind::exceeds: j["value"] = finite_or_null(c.value); j["min_exclusive"] = c.tolerance; break;
    case ClaimCheck::Kind::holds: break;
  }
  return j;
}

inline json to_json(const ClaimResult& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"claim", r.name}, {"passed", r.passed()}, {"checks", checks}, {"details", r.details}};
}

struct Claim {
  std::string name;
  std::string summary;
  std::function<ClaimResult()> run;
};

namespace claims {

/// Five snapshots of an analytic solution around `center`, spaced by h.
inline std::vector<ComplexField> snapshots(const ClosedFormSolution& sol, const Grid1D& grid, double center,
                                           double h) {
  std::vector<ComplexField> out;
  for (int i = -2; i <= 2; ++i) out.push_back(sol.sample(grid, center + i * h));
  return out;
}

inline double max_pointwise(const ClosedFormSolution& a, const ClosedFormSolution& b, double t0, double t1,
                            std::size_t count, const Grid1D& grid) {
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(count - 1);
    worst = std::max(worst, max_abs_difference(a.sample(grid, t), b.sample(grid, t)));
  }
  return worst;
}

inline ClaimResult chiral_solves_current_nls() {
  ClaimResult r{"trasol-solves-jnls", {}};
  const Grid1D grid;
  const auto sol = chiral_soliton(SolitonParams::chiral(2.0, 1.0, 1.0));
  json reports = json::array();
  for (double t : {0.0, 0.7, 3.1}) {
    const auto rep = pde_residual(EquationSpec::current_nls(1.0), sol, t, grid);
    r.checks.push_back(ClaimCheck::at_most("residual t=" + num(t), rep.linf, 1e-8));
    r.checks.push_back(ClaimCheck::holds("decay gate t=" + num(t), rep.decay_gate_passed));
    reports.push_back(to_json(rep));
  }
  r.details["reports"] = reports;
  return r;
}

/// The F = 1/t soliton spreads like t, so the box is doubled (same spacing)
/// to keep its tails below the decay gate at t = 2.
inline ClaimResult lens_solves_variable_coeff_nls() {
  ClaimResult r{"travwave-solves-tnls", {}};
  const Grid1D grid(80.0, 2048);
  const auto sol = time_dependent_soliton(0.0);
  const auto rep = pde_residual_window(EquationSpec::variable_coeff_nls(0.0, 1.0), sol, 1.0, 2.0, 21, grid);
  r.checks.push_back(ClaimCheck::at_most("residual t in [1,2]", rep.linf, 1e-7));
  r.checks.push_back(ClaimCheck::holds("decay gate", rep.decay_gate_passed));
  r.details["report"] = to_json(rep);
  return r;
}

inline ClaimResult extended_solves_extended_nls() {
  ClaimResult r{"newsol-solves-6jnls", {}};
  const Grid1D grid;
  const auto sol = extended_soliton(2.0, 1.0);
  const auto rep = pde_residual_window(EquationSpec::extended_current_nls(1.0), sol, 0.0, 1.0, 11, grid);
  const auto ode = density_ode_residual(2.0, 1.0, density(sol.sample(grid, 0.0)));
  r.checks.push_back(ClaimCheck::at_most("residual t in [0,1]", rep.linf, 1e-7));
  r.checks.push_back(ClaimCheck::holds("decay gate", rep.decay_gate_passed));
  r.checks.push_back(ClaimCheck::at_most("density ODE (relative)", ode.relative, 1e-10));
  r.details["report"] = to_json(rep);
  r.details["density_ode"] = {{"linf", ode.linf}, {"scale", ode.scale}, {"relative", ode.relative}};
  return r;
}

inline ClaimResult d_maps_standing_to_travwave() {
  ClaimResult r{"D-maps-standing-to-travwave", {}};
  const Grid1D grid;
  const auto standing = standing_soliton(0.0);
  const auto lens = apply_conformal(ConformalMapSpec::lens(), standing);
  const auto chain = apply_conformal(ConformalMapSpec::lens_decomposition(), standing);
  const double identity = max_pointwise(lens, time_dependent_soliton(0.0), 1.0, 2.0, 11, grid);
  const double composite = max_pointwise(chain, lens, 1.0, 2.0, 11, grid);
  r.checks.push_back(ClaimCheck::at_most("D(standing) vs lens soliton", identity, 1e-12));
  r.checks.push_back(ClaimCheck::at_most("shift+expand+shift vs D", composite, 1e-10));
  r.checks.push_back(ClaimCheck::holds("target equation is F = 1/t",
                                       lens.solves() == EquationSpec::variable_coeff_nls(0.0, 1.0)));
  return r;
}

inline ClaimResult gauge_maps_extended_to_dnls2() {
  ClaimResult r{"gauge-maps-6jnls-to-dnls2", {}};
  const Grid1D grid;
  const double kappa = 1.0;
  const auto sol = extended_soliton(2.0, kappa);

  double round_trip = 0.0;
  double compat = 0.0;
  double dnls2 = 0.0;
  for (double center : {0.0, 0.5, 1.0}) {
    const auto psi = sol.sample(grid, center);
    round_trip = std::max(round_trip, max_abs_difference(gauge_forward(gauge_backward(psi, kappa), kappa), psi));
    const auto phi = gauge_backward(psi, kappa);
    compat = std::max(compat, max_abs_difference(current(gauge_forward(phi, kappa)), covariant_current(phi, kappa),
                                                 kInteriorMargin));
    std::vector<ComplexField> gauged;
    for (const auto& f : snapshots(sol, grid, center, 1e-3)) gauged.push_back(gauge_backward(f, kappa));
    const auto series =
        snapshot_residual(EquationSpec::dnls2(kappa), gauged, {false, DerivativeScheme::interior_fd});
    dnls2 = std::max(dnls2, series.max());
  }
  r.checks.push_back(ClaimCheck::at_most("gauge round trip", round_trip, 1e-12));
  r.checks.push_back(ClaimCheck::at_most("Dnls2 interior residual", dnls2, 1e-5));
  r.checks.push_back(ClaimCheck::at_most("current vs covariant current", compat, 1e-10));
  return r;
}

inline ClaimResult cc_condition_table() {
  ClaimResult r{"cc-condition-table", {}};
  const auto current = clarkson_cosgrove({-1.0, 1.0, 0.0});
  const auto six = clarkson_cosgrove({-1.0, 1.0, 1.5});
  r.checks.push_back(ClaimCheck::holds("(-1,1,0) -> not integrable", !current.integrable));
  r.checks.push_back(ClaimCheck::holds("(-1,1,1.5) -> integrable", six.integrable));
  r.checks.push_back(ClaimCheck::holds(
      "catalog agrees", integrability_verdict(EquationSpec::current_nls(1.0)) == std::optional<bool>(false) &&
                            integrability_verdict(EquationSpec::extended_current_nls(1.0)) == std::optional<bool>(true)));

  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> log_lambda(-3.0, 3.0);
  std::size_t consistent = 0;
  for (int i = 0; i < 100; ++i) {
    const double lam = std::pow(10.0, log_lambda(rng));
    bool ok = true;
    for (const DnlsCoefficients& c : {DnlsCoefficients{-1, 1, 0}, DnlsCoefficients{-1, 1, 1.5}, DnlsCoefficients{-2, 0, 0}}) {
      ok = ok && clarkson_cosgrove(c).integrable ==
                     clarkson_cosgrove({lam * c.a, lam * c.b, lam * lam * c.c}).integrable;
    }
    consistent += ok;
  }
  r.checks.push_back(ClaimCheck::holds("scale consistency (100 random lambda)", consistent == 100));
  r.details["table"] = json::array({{{"abc", {-1, 1, 0}}, {"integrable", current.integrable}},
                                    {{"abc", {-1, 1, 1.5}}, {"integrable", six.integrable}}});
  return r;
}

inline ClaimResult frames_remove_potentials() {
  ClaimResult r{"frames-remove-potentials", {}};
  const Grid1D grid;
  const auto gauss = gaussian_free_packet(1.0);
  const auto accel = apply_accelerated_frame(gauss, 0.25);
  const auto nied = apply_niederer(gauss, 1.0);
  const auto ra = pde_residual_window(accel.solves(), accel, 0.0, 1.0, 11, grid);
  const auto rn = pde_residual_window(nied.solves(), nied, 0.0, 1.2, 13, grid);
  r.checks.push_back(ClaimCheck::at_most("accelerated frame, t in [0,1]", ra.linf, 1e-6));
  r.checks.push_back(ClaimCheck::at_most("Niederer frame, t in [0,1.2]", rn.linf, 1e-6));
  r.details["accelerated"] = to_json(ra);
  r.details["niederer"] = to_json(rn);
  return r;
}

inline ClaimResult negative_control() {
  ClaimResult r{"negative-control", {}};
  const auto rep = pde_residual(EquationSpec::current_nls(1.0), gaussian_free_packet(0.5), 0.5, Grid1D{});
  r.checks.push_back(ClaimCheck::exceeds("Gaussian vs CurrentNLS", rep.linf, 1e-1));
  return r;
}

inline ClaimResult ifrk4_order() {
  ClaimResult r{"ifrk4-order", {}};
  const Grid1D grid;
  IntegratorConfig cfg;
  cfg.t1 = 1.0;
  const auto cubic = standing_soliton(0.0);
  const auto ext = extended_soliton(2.0, 1.0);
  const auto oc = convergence_order(cubic.solves(), cubic.sample(grid, 0.0), 0.1, cfg);
  const auto oe = convergence_order(ext.solves(), ext.sample(grid, 0.0), 0.1, cfg);
  r.checks.push_back(ClaimCheck::holds("CubicNLS order in [3.7,4.3]", oc.order >= 3.7 && oc.order <= 4.3));
  r.checks.push_back(ClaimCheck::holds("ExtendedCurrentNLS order in [3.7,4.3]", oe.order >= 3.7 && oe.order <= 4.3));
  r.details["cubic"] = to_json(oc);
  r.details["extended"] = to_json(oe);
  return r;
}

}  // namespace claims

inline const std::vector<Claim>& claim_registry() {
  static const std::vector<Claim> registry{
      {"trasol-solves-jnls", "chiral soliton solves CurrentNLS", claims::chiral_solves_current_nls},
      {"travwave-solves-tnls", "lens soliton solves the F = 1/t equation", claims::lens_solves_variable_coeff_nls},
      {"newsol-solves-6jnls", "extended soliton solves ExtendedCurrentNLS; density ODE", claims::extended_solves_extended_nls},
      {"D-maps-standing-to-travwave", "lens map of the standing soliton", claims::d_maps_standing_to_travwave},
      {"gauge-maps-6jnls-to-dnls2", "gauge chain to Dnls2", claims::gauge_maps_extended_to_dnls2},
      {"cc-condition-table", "Clarkson-Cosgrove verdicts", claims::cc_condition_table},
      {"frames-remove-potentials", "accelerated and Niederer frames", claims::frames_remove_potentials},
      {"negative-control", "a non-solution fails the oracle", claims::negative_control},
      {"ifrk4-order", "temporal order of the integrator", claims::ifrk4_order},
  };
  return registry;
}

inline const Claim& find_claim(std::string_view name) {
  for (const auto& c : claim_registry()) {
    if (c.name == name) return c;
  }
  fail(ErrorKind::UnknownClaim, "no claim named '" + std::string(name) + "'");
}

}  // namespace edgesol
