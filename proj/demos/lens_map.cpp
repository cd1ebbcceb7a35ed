// The lens map D sends the standing soliton of the constant-coefficient
// equation to a spreading soliton of the F = 1/t equation.

#include <cstdio>

#include "edgesol/edgesol.hpp"

using namespace edgesol;

int main() {
  const Grid1D grid(80.0, 2048);
  const auto standing = standing_soliton(0.0);
  const auto lens = apply_conformal(ConformalMapSpec::lens(), standing);
  const auto chain = apply_conformal(ConformalMapSpec::lens_decomposition(), standing);
  const auto exact = time_dependent_soliton(0.0);

  std::printf("%s solves %s\n", lens.name().c_str(), lens.solves().name().c_str());
  std::printf("%6s %14s %14s %14s %10s\n", "t", "|D - exact|", "|chain - D|", "residual", "peak |psi|");
  for (double t = 1.0; t <= 2.0 + 1e-12; t += 0.25) {
    const auto a = lens.sample(grid, t);
    const double res = pde_residual(lens.solves(), lens, t, grid).linf;
    std::printf("%6.2f %14.3e %14.3e %14.3e %10.6f\n", t, max_abs_difference(a, exact.sample(grid, t)),
                max_abs_difference(chain.sample(grid, t), a), res, max_abs(a));
  }

  const auto verdict = integrability_verdict(lens.solves());
  std::printf("Painleve verdict for %s: %s\n", lens.solves().name().c_str(),
              verdict && *verdict ? "passes" : "fails");
}
