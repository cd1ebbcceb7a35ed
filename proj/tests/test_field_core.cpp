#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "edgesol/calculus.hpp"
#include "edgesol/grid.hpp"
#include "support/generators.hpp"

using namespace edgesol;
using edgesol::testing::Gen;
using edgesol::testing::kind_of;

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

TEST(Grid, NodesRunFromMinusLToLMinusDx) {
  const Grid1D g(40.0, 1024);
  EXPECT_EQ(g.x(0), -40.0);
  EXPECT_NEAR(g.x(1023), 40.0 - g.spacing(), 1e-13);
  EXPECT_DOUBLE_EQ(g.spacing(), 80.0 / 1024.0);
}

TEST(Grid, RejectsBadSizes) {
  EXPECT_EQ(kind_of([] { Grid1D(40.0, 1000); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { Grid1D(40.0, 8); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { Grid1D(-1.0, 64); }), ErrorKind::InvalidArgument);
  EXPECT_NO_THROW(Grid1D(5.0, 16));
}

TEST(Field, RejectsNonFiniteAndWrongLength) {
  const Grid1D g(10.0, 16);
  std::vector<cplx> v(16, 1.0);
  v[3] = cplx(std::nan(""), 0.0);
  EXPECT_EQ(kind_of([&] { ComplexField(g, v); }), ErrorKind::NonFiniteInput);
  EXPECT_EQ(kind_of([&] { ComplexField(g, std::vector<cplx>(15)); }), ErrorKind::InvalidArgument);
}

TEST(SpectralDerivative, ConstantHasZeroDerivative) {
  const Grid1D g;
  const auto f = ComplexField::from_function(g, 0.0, [](double) { return cplx(2.5, -1.0); });
  EXPECT_LE(max_abs(spectral_derivative(f, 1)), 1e-13);
  EXPECT_LE(max_abs(spectral_derivative(f, 2)), 1e-13);
}

TEST(SpectralDerivative, PlaneWaveIsEigenfunction) {
  const Grid1D g;
  for (int k0 : {1, 7, -33, 200}) {
    const double k = k0 * std::numbers::pi / g.half_length();
    const auto f = ComplexField::from_function(g, 0.0, [&](double x) { return std::polar(1.0, k * x); });
    const auto d = spectral_derivative(f, 1);
    for (std::size_t j = 0; j < g.size(); ++j) {
      ASSERT_LE(std::abs(d[j] - cplx(0.0, k) * f[j]), 1e-12 * std::abs(k)) << "k0=" << k0;
    }
  }
}

TEST(SpectralDerivative, GaussianSecondDerivative) {
  const Grid1D g(20.0, 512);
  const auto f = ComplexField::from_function(g, 0.0, [](double x) { return std::exp(-x * x); });
  const auto exact =
      ComplexField::from_function(g, 0.0, [](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); });
  EXPECT_LE(max_abs_difference(spectral_derivative(f, 2), exact), 1e-10);
}

TEST(SpectralDerivative, RejectsUnsupportedOrder) {
  const ComplexField f(Grid1D{});
  EXPECT_EQ(kind_of([&] { spectral_derivative(f, 3); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { fd_derivative_interior(f, 0); }), ErrorKind::InvalidArgument);
}

TEST(SpectralDerivativeProperty, Linearity) {
  Gen gen(11);
  const Grid1D g;
  for (int trial = 0; trial < 25; ++trial) {
    const auto f = gen.packet_field(g);
    const auto h = gen.packet_field(g);
    const cplx a = gen.complex(3.0), b = gen.complex(3.0);
    std::vector<cplx> combo(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) combo[k] = a * f[k] + b * h[k];
    const auto lhs = spectral_derivative(ComplexField(g, combo), 1);
    const auto df = spectral_derivative(f, 1);
    const auto dh = spectral_derivative(h, 1);
    double scale = 0.0, err = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const cplx rhs = a * df[k] + b * dh[k];
      scale = std::max(scale, std::abs(rhs));
      err = std::max(err, std::abs(lhs[k] - rhs));
    }
    ASSERT_LE(err, 1e-12 * scale) << "trial " << trial;
  }
}

TEST(SpectralDerivativeProperty, FirstTwiceEqualsSecond) {
  Gen gen(12);
  const Grid1D g;
  for (int trial = 0; trial < 25; ++trial) {
    const auto f = gen.packet_field(g);
    const auto twice = spectral_derivative(spectral_derivative(f, 1), 1);
    const auto second = spectral_derivative(f, 2);
    ASSERT_LE(max_abs_difference(twice, second), 1e-9 * max_abs(second)) << "trial " << trial;
  }
}

TEST(FdDerivative, ConstantAndLinear) {
  const Grid1D g(10.0, 64);
  const auto c = ComplexField::from_function(g, 0.0, [](double) { return cplx(3.0, 1.0); });
  const auto lin = ComplexField::from_function(g, 0.0, [](double x) { return cplx(x, 0.0); });
  const auto dc = fd_derivative_interior(c, 1);
  const auto dl = fd_derivative_interior(lin, 1);
  EXPECT_EQ(dc.edge_margin, kInteriorMargin);
  for (std::size_t k = kInteriorMargin; k + kInteriorMargin < g.size(); ++k) {
    EXPECT_LE(std::abs(dc.values[k]), 1e-12);
    EXPECT_LE(std::abs(dl.values[k] - 1.0), 1e-12);
  }
  // edge nodes carry no stencil
  EXPECT_EQ(dl.values[0], cplx{});
  EXPECT_EQ(dl.values[g.size() - 1], cplx{});
}

TEST(FdDerivative, PolynomialsAreExact) {
  const Grid1D g(4.0, 64);
  const auto f = ComplexField::from_function(g, 0.0, [](double x) { return x * x * x * x - 2.0 * x * x; });
  const auto d1 = fd_derivative_interior(f, 1);
  const auto d2 = fd_derivative_interior(f, 2);
  for (std::size_t k = kInteriorMargin; k + kInteriorMargin < g.size(); ++k) {
    const double x = g.x(k);
    EXPECT_NEAR(d1.values[k].real(), 4.0 * x * x * x - 4.0 * x, 1e-9);
    EXPECT_NEAR(d2.values[k].real(), 12.0 * x * x - 4.0, 1e-8);
  }
}

TEST(FdDerivative, SechOnInterior) {
  const Grid1D g(20.0, 1024);
  const auto f = ComplexField::from_function(g, 0.0, [](double x) { return sech(x); });
  const auto exact = ComplexField::from_function(g, 0.0, [](double x) { return -sech(x) * std::tanh(x); });
  EXPECT_LE(max_abs_difference(fd_derivative_interior(f, 1).values, exact, kInteriorMargin), 1e-8);
}

TEST(CumulativeIntegral, ZeroAndConstant) {
  for (auto how : {Quadrature::spectral, Quadrature::newton_cotes}) {
    const Grid1D g(10.0, 256);
    const RealField zero(g);
    EXPECT_EQ(max_abs(cumulative_integral(zero, how)), 0.0);
    const auto one = RealField::from_function(g, 0.0, [](double) { return 1.0; });
    const auto p = cumulative_integral(one, how);
    EXPECT_EQ(p[0], 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) ASSERT_NEAR(p[k], g.x(k) + 10.0, 1e-12);
  }
}

TEST(CumulativeIntegral, SechSquaredGivesTanh) {
  const Grid1D g(20.0, 1024);
  const auto rho = RealField::from_function(g, 0.0, [](double x) { return sech(x) * sech(x); });
  const auto exact = RealField::from_function(g, 0.0, [](double x) { return std::tanh(x) + std::tanh(20.0); });
  EXPECT_LE(max_abs_difference(cumulative_integral(rho, Quadrature::spectral), exact), 1e-8);
  EXPECT_LE(max_abs_difference(cumulative_integral(rho, Quadrature::newton_cotes), exact), 1e-8);
}

TEST(CumulativeIntegral, NewtonCotesHandlesNonPeriodicIntegrand) {
  const Grid1D g(2.0, 128);
  const auto rho = RealField::from_function(g, 0.0, [](double x) { return x * x; });
  const auto p = cumulative_integral(rho, Quadrature::newton_cotes);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.x(k);
    ASSERT_NEAR(p[k], (x * x * x + 8.0) / 3.0, 1e-12);
  }
}

TEST(CumulativeIntegralProperty, FdDerivativeRecoversDensity) {
  Gen gen(13);
  const Grid1D g(40.0, 4096);  // fine enough that the eighth-order stencil error sits far below the bound
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = gen.packet_field(g);
    std::vector<double> rho(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) rho[k] = std::norm(psi[k]);
    const RealField density(g, rho);
    for (auto how : {Quadrature::spectral, Quadrature::newton_cotes}) {
      const auto p = cumulative_integral(density, how);
      std::vector<cplx> pc(p.values().begin(), p.values().end());
      const auto d = fd_derivative_interior(ComplexField(g, pc), 1);
      double err = 0.0;
      double peak = 0.0;
      for (std::size_t k = kInteriorMargin; k + kInteriorMargin < g.size(); ++k) {
        err = std::max(err, std::abs(d.values[k].real() - rho[k]));
        peak = std::max(peak, rho[k]);
      }
      ASSERT_LE(err, 1e-7 * std::max(1.0, peak)) << "trial " << trial;
    }
  }
}

TEST(BandLimitedInterpolant, ReproducesNodesAndResolvedFunctions) {
  const Grid1D g;
  const auto f = ComplexField::from_function(g, 0.0, [](double x) { return sech(x) * std::polar(1.0, 0.5 * x); });
  const BandLimitedInterpolant interp(f);
  for (std::size_t k : {0u, 100u, 512u, 1023u}) EXPECT_LE(std::abs(interp(g.x(k)) - f[k]), 1e-12);
  for (double x : {-3.3, 0.01, 1.7, 12.345}) {
    EXPECT_LE(std::abs(interp(x) - sech(x) * std::polar(1.0, 0.5 * x)), 1e-12);
  }
}
