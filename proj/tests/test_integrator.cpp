#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "edgesol/integrator.hpp"
#include "edgesol/transforms.hpp"
#include "support/generators.hpp"

using namespace edgesol;
using edgesol::testing::Gen;
using edgesol::testing::kind_of;

namespace {

IntegratorConfig config(double t1, double dt = 1e-3, Scheme scheme = Scheme::ifrk4) {
  IntegratorConfig cfg;
  cfg.t1 = t1;
  cfg.dt = dt;
  cfg.scheme = scheme;
  cfg.record_every = 100;
  return cfg;
}

ClosedFormSolution chiral() { return chiral_soliton(SolitonParams::chiral(2.0, 1.0, 1.0)); }

double relative_drift(const TrajectoryRecord& r) {
  const double m0 = r.observables.front().mass;
  double worst = 0.0;
  for (const auto& o : r.observables) worst = std::max(worst, std::abs(o.mass - m0) / m0);
  return worst;
}

/// max | |psi(T, x)| - |psi(0, x - vT)| |, the initial modulus shifted by band-limited interpolation.
double rigid_translation_deviation(const TrajectoryRecord& r, double v) {
  const auto& first = r.fields.front();
  const auto& last = r.final_field();
  const BandLimitedInterpolant initial(first);
  const double shift = v * (last.time_tag() - first.time_tag());
  const auto& g = first.grid();
  double worst = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.x(k) - shift;
    const double expected = std::abs(x) < g.half_length() ? std::abs(initial(x)) : 0.0;
    worst = std::max(worst, std::abs(std::abs(last[k]) - expected));
  }
  return worst;
}

}  // namespace

TEST(Config, Validation) {
  const auto eq = EquationSpec::cubic_nls(1.0);
  auto bad = [&](IntegratorConfig cfg) { return kind_of([&] { validate(cfg, eq); }); };
  auto cfg = config(1.0);
  cfg.t0 = 1.0;
  EXPECT_EQ(bad(cfg), ErrorKind::InvalidArgument);
  cfg = config(1.0, 2.0);
  EXPECT_EQ(bad(cfg), ErrorKind::InvalidArgument);
  cfg = config(1.0);
  cfg.record_every = 0;
  EXPECT_EQ(bad(cfg), ErrorKind::InvalidArgument);
}

TEST(Config, SingularCoefficientIntervals) {
  auto cfg = config(1.0);
  EXPECT_EQ(kind_of([&] { validate(cfg, EquationSpec::variable_coeff_nls(0.0, 1.0)); }), ErrorKind::InvalidArgument);
  cfg.t0 = 0.1;
  EXPECT_NO_THROW(validate(cfg, EquationSpec::variable_coeff_nls(0.0, 1.0)));
  cfg.t0 = -1.0;
  EXPECT_EQ(kind_of([&] { validate(cfg, EquationSpec::variable_coeff_nls(-0.5, 1.0)); }),
            ErrorKind::InvalidArgument);
  cfg.t0 = 0.0;
  cfg.t1 = 2.0;
  EXPECT_EQ(kind_of([&] { validate(cfg, EquationSpec::oscillator_nls(1.0)); }), ErrorKind::InvalidArgument);
  cfg.t1 = 1.5;
  EXPECT_NO_THROW(validate(cfg, EquationSpec::oscillator_nls(1.0)));
}

TEST(Evolve, FreePlaneWaveIsExact) {
  const Grid1D g(10.0, 128);
  const double k = 2.0 * std::numbers::pi * 5.0 / g.length();
  const auto psi0 = ComplexField::from_function(g, 0.0, [&](double x) { return std::polar(1.0, k * x); });
  auto cfg = config(1.0, 0.01);
  cfg.decay_gate = 10.0;  // a plane wave fills the box
  const auto r = evolve(EquationSpec::free_linear(0.5), psi0, cfg);
  const auto expected = ComplexField::from_function(
      g, 1.0, [&](double x) { return std::polar(1.0, k * x - 0.5 * k * k); });
  EXPECT_LE(max_abs_difference(r.final_field(), expected), 1e-10);
}

TEST(Evolve, ZeroStaysZero) {
  const Grid1D g;
  for (const auto& eq : {EquationSpec::cubic_nls(1.0), EquationSpec::current_nls(1.0), EquationSpec::dnls2(1.0),
                         EquationSpec::oscillator_nls(0.5)}) {
    const auto r = evolve(eq, ComplexField(g), config(0.2));
    for (const auto& f : r.fields) EXPECT_EQ(max_abs(f), 0.0) << eq.name();
  }
}

TEST(Evolve, RecordLayout) {
  const Grid1D g;
  auto cfg = config(0.25, 0.003);
  cfg.record_every = 10;
  const auto psi0 = chiral().sample(g, 0.0);
  const auto r = evolve(EquationSpec::current_nls(1.0), psi0, cfg);
  EXPECT_EQ(r.steps, 84u);
  EXPECT_NEAR(r.dt, 0.25 / 84.0, 1e-15);
  EXPECT_EQ(r.times.front(), 0.0);
  EXPECT_EQ(r.times.back(), 0.25);
  EXPECT_EQ(r.times.size(), 10u);
  for (std::size_t i = 1; i < r.times.size(); ++i) EXPECT_LT(r.times[i - 1], r.times[i]);
  EXPECT_EQ(max_abs_difference(r.fields.front(), psi0), 0.0);
  EXPECT_EQ(r.observables.size(), r.times.size());
  EXPECT_EQ(r.continuity.size(), r.continuity_times.size());
  EXPECT_FALSE(r.continuity.empty());
}

TEST(Evolve, ChiralSolitonTravelsRigidly) {
  const Grid1D g;
  const auto sol = chiral();
  const auto r = evolve(EquationSpec::current_nls(1.0), sol.sample(g, 0.0), config(5.0));
  EXPECT_LE(max_abs_difference(r.final_field(), sol.sample(g, 5.0)), 1e-6);
  EXPECT_LE(relative_drift(r), 1e-9);
  EXPECT_LE(rigid_translation_deviation(r, 2.0), 1e-6);
  double worst = 0.0;
  for (double c : r.continuity) worst = std::max(worst, c);
  EXPECT_LE(worst, 1e-6);
}

TEST(Evolve, MassConservedAcrossCatalog) {
  const Grid1D g;
  const auto ext = extended_soliton(2.0, 1.0).sample(g, 0.0);
  const auto chi = chiral().sample(g, 0.0);
  const std::vector<std::pair<EquationSpec, ComplexField>> runs{
      {EquationSpec::current_nls(1.0), chi},
      {EquationSpec::extended_current_nls(1.0), ext},
      {EquationSpec::dnls2(1.0), gauge_backward(ext, 1.0)},
      {EquationSpec::gauged_nls(1.0), gauge_backward(chi, 1.0)},
      {EquationSpec::cubic_nls(1.0), standing_soliton(0.0).sample(g, 0.0)},
  };
  for (const auto& [eq, psi0] : runs) {
    const auto r = evolve(eq, psi0, config(5.0));
    EXPECT_LE(relative_drift(r), 1e-9) << eq.name();
  }
}

TEST(Evolve, GaugedContinuityWithCovariantCurrent) {
  const Grid1D g;
  const auto phi0 = gauge_backward(chiral().sample(g, 0.0), 1.0);
  auto cfg = config(1.0);
  cfg.record_every = 1;
  const auto r = evolve(EquationSpec::gauged_nls(1.0), phi0, cfg);
  std::vector<ComplexField> window(r.fields.begin() + 500, r.fields.begin() + 505);
  const auto series = continuity_residual(r.equation, window, CurrentKind::covariant, kInteriorMargin);
  EXPECT_LE(series.max(), 1e-5);
  const auto plain = continuity_residual(r.equation, window, CurrentKind::plain, kInteriorMargin);
  EXPECT_GT(plain.max(), 1e-3);
}

TEST(Evolve, GaugedEvolutionMapsToCurrentEvolution) {
  const Grid1D g;
  const auto sol = chiral();
  const auto r = evolve(EquationSpec::gauged_nls(1.0), gauge_backward(sol.sample(g, 0.0), 1.0), config(1.0));
  EXPECT_LE(max_abs_difference(gauge_forward(r.final_field(), 1.0), sol.sample(g, 1.0)), 1e-6);
}

TEST(Evolve, SchemesAgree) {
  const Grid1D g;
  const auto psi0 = chiral().sample(g, 0.0);
  const auto a = evolve(EquationSpec::current_nls(1.0), psi0, config(1.0, 1e-3, Scheme::ifrk4));
  const auto b = evolve(EquationSpec::current_nls(1.0), psi0, config(1.0, 1e-3, Scheme::rk4));
  EXPECT_LE(max_abs_difference(a.final_field(), b.final_field()), 1e-8);
}

TEST(Evolve, Deterministic) {
  Gen gen(51);
  const Grid1D g;
  const auto psi0 = gen.packet_field(g);
  const auto a = evolve(EquationSpec::cubic_nls(1.0), psi0, config(0.3));
  const auto b = evolve(EquationSpec::cubic_nls(1.0), psi0, config(0.3));
  EXPECT_EQ(max_abs_difference(a.final_field(), b.final_field()), 0.0);
}

TEST(Evolve, NegativeVelocityProfileIsNotRigid) {
  // The wide box keeps both runs away from the edge; the spacing matches the default grid.
  const Grid1D g(160.0, 4096);
  const auto eq = EquationSpec::current_nls(1.0);
  const auto left = evolve(eq, phased_sech_profile(g, -2.0, 1.0, 1.0), config(5.0));
  EXPECT_GT(rigid_translation_deviation(left, -2.0), 1e-2);
  const auto right = evolve(eq, phased_sech_profile(g, 2.0, 1.0, 1.0), config(5.0));
  EXPECT_LE(rigid_translation_deviation(right, 2.0), 1e-6);
}

TEST(Evolve, BoundaryLeakAborts) {
  const Grid1D g(10.0, 256);
  const auto psi0 = chiral().sample(g, 0.0);
  EXPECT_EQ(kind_of([&] { evolve(EquationSpec::current_nls(1.0), psi0, config(5.0)); }), ErrorKind::BoundaryLeak);
  const auto offset = ComplexField::from_function(g, 0.0, [](double x) { return 1.0 / std::cosh(x - 9.0); });
  EXPECT_EQ(kind_of([&] { evolve(EquationSpec::cubic_nls(1.0), offset, config(0.1)); }), ErrorKind::BoundaryLeak);
}

TEST(Evolve, BlowUpAborts) {
  const Grid1D g;
  const auto psi0 = standing_soliton(0.0).sample(g, 0.0);
  auto cfg = config(0.1);
  cfg.blowup_threshold = 0.5;
  EXPECT_EQ(kind_of([&] { evolve(EquationSpec::cubic_nls(1.0), psi0, cfg); }), ErrorKind::BlowUp);
}

TEST(Convergence, FourthOrderOnNonlinearEquations) {
  const Grid1D g;
  const auto standing = standing_soliton(0.0);
  const auto ext = extended_soliton(2.0, 1.0);
  const auto oc = convergence_order(standing.solves(), standing.sample(g, 0.0), 0.1, config(1.0));
  const auto oe = convergence_order(ext.solves(), ext.sample(g, 0.0), 0.1, config(1.0));
  EXPECT_FALSE(oc.at_floor);
  EXPECT_GE(oc.order, 3.7);
  EXPECT_LE(oc.order, 4.3);
  EXPECT_GE(oe.order, 3.7);
  EXPECT_LE(oe.order, 4.3);
}

TEST(Convergence, FreeEvolutionIsAtTheFloor) {
  const Grid1D g;
  const auto gauss = gaussian_free_packet(0.5);
  const auto r = convergence_order(gauss.solves(), gauss.sample(g, 0.0), 0.1, config(1.0));
  EXPECT_TRUE(r.at_floor);
  EXPECT_TRUE(std::isnan(r.order));
}
