#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "edgesol/observables.hpp"
#include "edgesol/residuals.hpp"
#include "edgesol/transforms.hpp"
#include "support/generators.hpp"

using namespace edgesol;
using edgesol::testing::Gen;
using edgesol::testing::kind_of;

namespace {

double max_pointwise(const ClosedFormSolution& a, const ClosedFormSolution& b, double t0, double t1,
                     const Grid1D& grid = Grid1D{}) {
  double worst = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double t = t0 + (t1 - t0) * i / 10.0;
    worst = std::max(worst, max_abs_difference(a.sample(grid, t), b.sample(grid, t)));
  }
  return worst;
}

double window_residual(const ClosedFormSolution& sol, double t0, double t1, std::size_t count = 11) {
  const auto rep = pde_residual_window(sol.solves(), sol, t0, t1, count, Grid1D{});
  EXPECT_TRUE(rep.decay_gate_passed) << sol.name();
  return rep.linf;
}

}  // namespace

// --- gauge -----------------------------------------------------------------

TEST(Gauge, ZeroKappaIsIdentity) {
  Gen gen(31);
  const auto phi = gen.packet_field(Grid1D{});
  EXPECT_EQ(max_abs_difference(gauge_forward(phi, 0.0), phi), 0.0);
}

TEST(Gauge, RoundTripAndModulusProperty) {
  Gen gen(32);
  const Grid1D g;
  for (int trial = 0; trial < 20; ++trial) {
    const auto phi = gen.packet_field(g, gen.integer(1, 4));
    const double kappa = gen.uniform(-2.0, 2.0);
    const auto psi = gauge_forward(phi, kappa);
    EXPECT_LE(max_abs_difference(gauge_backward(psi, kappa), phi), 1e-12);
    EXPECT_LE(max_abs_difference(gauge_forward(gauge_backward(phi, kappa), kappa), phi), 1e-12);
    for (std::size_t k = 0; k < g.size(); k += 13) EXPECT_NEAR(std::abs(psi[k]), std::abs(phi[k]), 1e-15);
    EXPECT_NEAR(mass(psi), mass(phi), 1e-13 * mass(phi));
  }
}

TEST(Gauge, CurrentOfImageIsCovariantCurrent) {
  Gen gen(33);
  const Grid1D g;
  for (int trial = 0; trial < 10; ++trial) {
    const auto phi = gen.packet_field(g);
    const double kappa = gen.uniform(0.3, 1.5);
    const auto jc = covariant_current(phi, kappa);
    EXPECT_LE(max_abs_difference(current(gauge_forward(phi, kappa)), jc, kInteriorMargin),
              1e-10 * std::max(1.0, max_abs(jc)));
  }
}

TEST(Gauge, RefusesFieldsThatReachTheEdge) {
  const Grid1D g(10.0, 64);
  const auto flat = ComplexField::from_function(g, 0.0, [](double) { return cplx(0.1, 0.0); });
  EXPECT_EQ(kind_of([&] { gauge_forward(flat, 1.0); }), ErrorKind::BoundaryLeak);
}

TEST(Gauge, TargetEquations) {
  const GaugeTransform back{1.0, GaugeDirection::backward};
  const GaugeTransform fwd{1.0, GaugeDirection::forward};
  EXPECT_EQ(gauge_target(EquationSpec::extended_current_nls(1.0), back), EquationSpec::dnls2(1.0));
  EXPECT_EQ(gauge_target(EquationSpec::current_nls(1.0), back), EquationSpec::gauged_nls(1.0));
  EXPECT_EQ(gauge_target(EquationSpec::gauged_nls(1.0), fwd), EquationSpec::current_nls(1.0));
  EXPECT_EQ(gauge_target(EquationSpec::dnls2(1.0), fwd), EquationSpec::extended_current_nls(1.0));
  EXPECT_EQ(kind_of([&] { gauge_target(EquationSpec::cubic_nls(1.0), fwd); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { gauge_target(EquationSpec::current_nls(2.0), back); }), ErrorKind::InvalidArgument);
}

TEST(Gauge, ExtendedSolitonImageSolvesDnls2) {
  const Grid1D g;
  const auto sol = extended_soliton(2.0, 1.0);
  for (double center : {0.0, 0.5, 1.0}) {
    std::vector<ComplexField> gauged;
    for (int i = -2; i <= 2; ++i) gauged.push_back(gauge_backward(sol.sample(g, center + i * 1e-3), 1.0));
    const auto series = snapshot_residual(EquationSpec::dnls2(1.0), gauged, {false, DerivativeScheme::interior_fd});
    EXPECT_LE(series.max(), 1e-5) << center;
  }
}

TEST(Gauge, AnalyticImageMatchesFieldImage) {
  const Grid1D g;
  const auto sol = extended_soliton(2.0, 1.0);
  const auto image = apply_gauge(sol, GaugeTransform{1.0, GaugeDirection::backward});
  EXPECT_TRUE(image.gauge_seam());
  EXPECT_EQ(image.solves(), EquationSpec::dnls2(1.0));
  EXPECT_LE(max_abs_difference(image.sample(g, 0.4), gauge_backward(sol.sample(g, 0.4), 1.0)), 1e-10);
}

TEST(Gauge, AnalyticImagePassesResidualOracle) {
  const auto ext = apply_gauge(extended_soliton(2.0, 1.0), GaugeTransform{1.0, GaugeDirection::backward});
  EXPECT_LE(pde_residual(ext.solves(), ext, 0.5, Grid1D{}).linf, 1e-5);
  const auto chiral = apply_gauge(chiral_soliton(SolitonParams::chiral(2.0, 1.0, 1.0)),
                                  GaugeTransform{1.0, GaugeDirection::backward});
  EXPECT_EQ(chiral.solves(), EquationSpec::gauged_nls(1.0));
  EXPECT_LE(pde_residual(chiral.solves(), chiral, 0.5, Grid1D{}).linf, 1e-5);
}

// --- conformal maps ----------------------------------------------------------

TEST(Conformal, TrivialParametersAreIdentity) {
  const auto gauss = gaussian_free_packet(0.5);
  for (const ConformalGenerator& g : {ConformalGenerator{Dilatation{1.0}}, ConformalGenerator{Expansion{0.0}},
                                      ConformalGenerator{TimeTranslation{0.0}}}) {
    EXPECT_EQ(max_pointwise(apply_conformal(g, gauss), gauss, 0.0, 1.0), 0.0);
  }
}

TEST(Conformal, LensMapOfStandingSolitonIsTheLensSoliton) {
  for (double x0 : {0.0, 0.6}) {
    const auto image = apply_conformal(ConformalMapSpec::lens(), standing_soliton(x0));
    EXPECT_EQ(image.solves(), EquationSpec::variable_coeff_nls(0.0, 1.0));
    EXPECT_LE(max_pointwise(image, time_dependent_soliton(x0), 1.0, 2.0), 1e-12) << x0;
  }
}

TEST(Conformal, DecompositionReproducesLensMapUpToParity) {
  const auto lens = apply_conformal(ConformalMapSpec::lens(), standing_soliton(0.0));
  const auto chain = apply_conformal(ConformalMapSpec::lens_decomposition(), standing_soliton(0.0));
  EXPECT_LE(max_pointwise(chain, lens, 1.0, 2.0), 1e-10);
  EXPECT_EQ(chain.solves(), lens.solves());
  // Off-centre data expose the reflection x -> -x.
  const auto shifted = apply_conformal(ConformalMapSpec::lens_decomposition(), standing_soliton(0.7));
  EXPECT_LE(max_pointwise(shifted, apply_conformal(ConformalMapSpec::lens(), standing_soliton(-0.7)), 1.0, 2.0),
            1e-10);
}

TEST(Conformal, LensMapModulusRelation) {
  Gen gen(34);
  const auto src = gaussian_free_packet(0.5, 1.3);
  const auto image = apply_conformal(ConformalMapSpec::lens(), src);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = gen.uniform(0.2, 3.0);
    const double x = gen.uniform(-5.0, 5.0);
    EXPECT_NEAR(std::abs(image(t, x)), std::abs(src(-1.0 / t, -x / t)) / std::sqrt(t), 1e-14);
  }
}

TEST(Conformal, DilatationGroupLaw) {
  Gen gen(35);
  const Grid1D g;
  const auto gauss = gaussian_free_packet(0.5);
  for (int trial = 0; trial < 10; ++trial) {
    const double d1 = gen.uniform(0.5, 2.0);
    const double d2 = gen.uniform(0.5, 2.0);
    const auto twice = apply_conformal(ConformalMapSpec{{Dilatation{d1}, Dilatation{d2}}}, gauss);
    const auto once = apply_conformal(Dilatation{d1 * d2}, gauss);
    const double t = gen.uniform(0.0, 1.0);
    EXPECT_LE(max_abs_difference(twice.sample(g, t), once.sample(g, t)), 1e-12);
  }
}

TEST(Conformal, SingularPointsAreGuarded) {
  EXPECT_EQ(kind_of([] { preimage(ConformalGenerator{LensMap{}}, 0.5, 0.0, 1.0); }), ErrorKind::SingularMapPoint);
  EXPECT_EQ(kind_of([] { preimage(ConformalGenerator{Expansion{1.0}}, 0.5, -1.0, 1.0); }),
            ErrorKind::SingularMapPoint);
  const auto lens = apply_conformal(ConformalMapSpec::lens(), standing_soliton(0.0));
  EXPECT_EQ(kind_of([&] { lens(0.0, 1.0); }), ErrorKind::InvalidTime);
  EXPECT_EQ(kind_of([] { apply_conformal(ConformalMapSpec::lens(), extended_soliton(2.0, 1.0)); }),
            ErrorKind::InvalidArgument);
}

TEST(Conformal, ImagesOfFreePacketsSolveTheFreeEquation) {
  const auto gauss = gaussian_free_packet(0.5);
  for (const ConformalGenerator& g :
       {ConformalGenerator{Dilatation{1.3}}, ConformalGenerator{Expansion{0.3}},
        ConformalGenerator{TimeTranslation{0.4}}}) {
    const auto image = apply_conformal(g, gauss);
    EXPECT_EQ(image.solves(), gauss.solves());
    EXPECT_LE(window_residual(image, 0.0, 1.0), 1e-6) << image.name();
  }
  EXPECT_LE(window_residual(apply_conformal(ConformalMapSpec::lens(), gauss), 1.0, 2.0), 1e-6);
}

TEST(Conformal, ImagesOfStandingSolitonSolveTheirTargets) {
  const auto standing = standing_soliton(0.3);
  for (const ConformalGenerator& g :
       {ConformalGenerator{Dilatation{1.2}}, ConformalGenerator{Expansion{0.2}},
        ConformalGenerator{TimeTranslation{0.4}}}) {
    const auto image = apply_conformal(g, standing);
    EXPECT_LE(window_residual(image, 0.1, 1.0), 1e-6) << image.name() << " " << image.solves().name();
  }
  const auto expanded = apply_conformal(Expansion{0.2}, standing);
  EXPECT_EQ(expanded.solves(), EquationSpec::variable_coeff_nls(1.0, 0.2));
}

TEST(Conformal, FieldLevelLensMatchesAnalytic) {
  const Grid1D g;
  const auto standing = standing_soliton(0.0);
  const auto analytic = apply_conformal(ConformalMapSpec::lens(), standing);
  const double t = 1.5;
  const auto source = standing.sample(g, -1.0 / t);
  const auto mapped = map_field(ConformalGenerator{LensMap{}}, source, t, 0.5);
  EXPECT_LE(max_abs_difference(mapped, analytic.sample(g, t)), 1e-9);
  EXPECT_EQ(kind_of([&] { map_field(ConformalGenerator{LensMap{}}, source, 2.0, 0.5); }),
            ErrorKind::InvalidArgument);
}

// --- frame maps --------------------------------------------------------------

TEST(Frames, ZeroParametersAreIdentity) {
  const auto gauss = gaussian_free_packet(1.0);
  EXPECT_LE(max_pointwise(apply_accelerated_frame(gauss, 0.0), gauss, 0.0, 1.0), 0.0);
  EXPECT_LE(max_pointwise(apply_niederer(gauss, 1e-6), gauss, 0.0, 1.0), 1e-6);
}

TEST(Frames, AcceleratedGaussianSolvesLinearPotentialEquation) {
  const auto image = apply_accelerated_frame(gaussian_free_packet(1.0), 0.25);
  EXPECT_EQ(image.solves(), EquationSpec::linear_potential_nls(0.25, 0.0));
  EXPECT_LE(window_residual(image, 0.0, 1.0), 1e-6);
}

TEST(Frames, AcceleratedPeakFollowsParabola) {
  const Grid1D g;
  const double alpha = 0.25;
  const auto image = apply_accelerated_frame(gaussian_free_packet(1.0), alpha);
  for (double t : {0.0, 0.5, 1.0}) EXPECT_NEAR(peak_position(image, t, g), -2.0 * alpha * t * t, 1e-6) << t;
}

TEST(Frames, AcceleratedSolitonSolvesLinearPotentialNls) {
  const auto image = apply_accelerated_frame(standing_soliton(0.0, 1.0, 2.0), 0.3);
  EXPECT_EQ(image.solves(), EquationSpec::linear_potential_nls(0.3, 2.0));
  EXPECT_LE(window_residual(image, 0.0, 1.0), 1e-6);
}

TEST(Frames, NiedererImagesSolveOscillatorEquations) {
  const auto gauss = apply_niederer(gaussian_free_packet(1.0), 1.0);
  EXPECT_EQ(gauss.solves(), EquationSpec::oscillator_nls(1.0, 0.0));
  EXPECT_LE(window_residual(gauss, 0.0, 1.2, 13), 1e-6);
  const auto soliton = apply_niederer(standing_soliton(0.0, 1.0, 1.0), 1.0);
  EXPECT_EQ(soliton.solves(), EquationSpec::oscillator_nls(1.0, 1.0));
  EXPECT_LE(window_residual(soliton, 0.0, 1.2, 13), 1e-6);
}

TEST(Frames, NiedererChartIsGuarded) {
  const FrameMapSpec n{NiedererFrame{1.0}};
  EXPECT_EQ(kind_of([&] { preimage(n, 1.0, std::numbers::pi / 2, 0.0); }), ErrorKind::SingularMapPoint);
  const auto image = apply_niederer(gaussian_free_packet(1.0), 1.0);
  EXPECT_LT(image.domain().hi, std::numbers::pi / 2);
  EXPECT_EQ(kind_of([] { apply_niederer(gaussian_free_packet(0.5), 1.0); }), ErrorKind::InvalidArgument);
}
