#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "edgesol/equations.hpp"
#include "edgesol/error.hpp"

namespace edgesol {

// --- Clarkson-Cosgrove: the DNLS family is integrable iff c = b(2b - a)/2 ---

struct ClarksonCosgroveReport {
  bool integrable;
  double required_c;
  double deviation;  // |c - required_c|
};

inline ClarksonCosgroveReport clarkson_cosgrove(const DnlsCoefficients& coeffs, double tol = 1e-12) {
  require(std::isfinite(coeffs.a) && std::isfinite(coeffs.b) && std::isfinite(coeffs.c),
          ErrorKind::InvalidArgument, "DNLS coefficients must be finite");
  require(tol > 0.0, ErrorKind::InvalidArgument, "tolerance must be positive");
  const double required = 0.5 * coeffs.b * (2.0 * coeffs.b - coeffs.a);
  const double deviation = std::abs(coeffs.c - required);
  const double scale = std::max({1.0, std::abs(coeffs.c), std::abs(required)});
  return {deviation <= tol * scale, required, deviation};
}

// --- Painleve criterion for i psi_t + 1/2 psi_xx + F |psi|^2 psi = 0 ---

struct ConstantCoupling {
  double value;
};
struct InverseLinearCoupling {
  double a;
  double b;
};
struct OtherCoupling {
  std::string description;
};

using CoefficientFamily = std::variant<ConstantCoupling, InverseLinearCoupling, OtherCoupling>;

inline bool painleve_vnls(const CoefficientFamily& family) {
  return std::visit(
      [](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, InverseLinearCoupling>) {
          require(f.a != 0.0 || f.b != 0.0, ErrorKind::InvalidArgument, "F = 1/(a+bt) needs (a,b) != (0,0)");
          return true;
        } else {
          return std::is_same_v<F, ConstantCoupling>;
        }
      },
      family);
}

// --- Potentials V(t, x) = sum_n c_n(t) x^n, plus an optional driving term ---

enum class CoefficientTag { zero, constant, time_dependent };

struct PotentialSpec {
  static constexpr std::size_t kMaxDegree = 6;

  /// coefficients[n] describes the x^n coefficient.
  std::vector<CoefficientTag> coefficients;
  bool driving = false;

  PotentialSpec() = default;
  PotentialSpec(std::vector<CoefficientTag> coeffs, bool drive) : coefficients(std::move(coeffs)), driving(drive) {
    require(coefficients.size() <= kMaxDegree + 1, ErrorKind::InvalidArgument,
            "potential degree exceeds " + std::to_string(kMaxDegree));
  }

  CoefficientTag at(std::size_t n) const {
    return n < coefficients.size() ? coefficients[n] : CoefficientTag::zero;
  }

  /// Highest power with a nonzero coefficient; 0 for V = const or V = 0.
  std::size_t degree() const {
    for (std::size_t n = coefficients.size(); n-- > 0;) {
      if (coefficients[n] != CoefficientTag::zero) return n;
    }
    return 0;
  }
};

enum class MapHint { identity, accelerated_frame, niederer, composite };

constexpr const char* to_string(MapHint h) {
  switch (h) {
    case MapHint::identity: return "identity";
    case MapHint::accelerated_frame: return "accelerated-frame";
    case MapHint::niederer: return "niederer";
    case MapHint::composite: return "composite";
  }
  return "unknown";
}

struct PotentialVerdict {
  bool transformable;
  MapHint hint;  // meaningful when transformable
  std::string reason;
};

/// A potential can be removed by a space-time map iff it is at most
/// quadratic in x with no driving term.
inline PotentialVerdict classify_potential(const PotentialSpec& v) {
  if (v.driving) return {false, MapHint::identity, "nonzero driving term"};
  if (v.degree() > 2) return {false, MapHint::identity, "degree " + std::to_string(v.degree()) + " in x"};
  const bool linear = v.at(1) != CoefficientTag::zero;
  const bool quadratic = v.at(2) != CoefficientTag::zero;
  if (linear && quadratic) return {true, MapHint::composite, "linear and quadratic terms"};
  if (linear) return {true, MapHint::accelerated_frame, "uniform force"};
  if (quadratic) return {true, MapHint::niederer, "oscillator"};
  return {true, MapHint::identity, "no x-dependence"};
}

/// Verdict of the published criteria for a catalog equation, when one applies.
inline std::optional<bool> integrability_verdict(const EquationSpec& eq) {
  if (auto coeffs = dnls_coefficients(eq)) return clarkson_cosgrove(*coeffs).integrable;
  if (eq.is<CubicNls>()) return painleve_vnls(ConstantCoupling{eq.as<CubicNls>().coupling});
  if (eq.is<VariableCoeffNls>()) {
    const auto& v = eq.as<VariableCoeffNls>();
    return painleve_vnls(InverseLinearCoupling{v.a, v.b});
  }
  if (eq.is<LinearPotentialNls>()) {
    return classify_potential(PotentialSpec({CoefficientTag::zero, CoefficientTag::constant}, false)).transformable;
  }
  if (eq.is<OscillatorNls>()) {
    return classify_potential(
               PotentialSpec({CoefficientTag::zero, CoefficientTag::zero, CoefficientTag::constant}, false))
        .transformable;
  }
  return std::nullopt;
}

}  // namespace edgesol
