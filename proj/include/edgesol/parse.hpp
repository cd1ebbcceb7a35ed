#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "edgesol/equations.hpp"
#include "edgesol/error.hpp"
#include "edgesol/integrability.hpp"
#include "edgesol/solutions.hpp"
#include "edgesol/transforms.hpp"

// Text descriptors used by the CLI and config files. The common shape is
// "name:key=value,key=value".

namespace edgesol {

using ParamMap = std::map<std::string, std::string, std::less<>>;

struct Descriptor {
  std::string name;
  ParamMap params;

  bool has(std::string_view key) const { return params.find(key) != params.end(); }

  double number(std::string_view key, double fallback) const {
    const auto it = params.find(key);
    return it == params.end() ? fallback : to_number(it->second, key);
  }

  /// First present key among aliases, else fallback.
  double number(std::initializer_list<std::string_view> keys, double fallback) const {
    for (auto k : keys) {
      if (has(k)) return number(k, fallback);
    }
    return fallback;
  }

  /// Rejects keys outside `allowed`, so typos do not silently fall back.
  void only(std::initializer_list<std::string_view> allowed) const {
    for (const auto& [k, v] : params) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        fail(ErrorKind::ParseError, "unknown key '" + k + "' for " + name);
      }
    }
  }

  static double to_number(const std::string& text, std::string_view key) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    require(!text.empty() && end == begin + text.size(), ErrorKind::ParseError,
            "value of '" + std::string(key) + "' is not a number: '" + text + "'");
    return v;
  }
};

namespace detail {
inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}
}  // namespace detail

inline ParamMap parse_params(std::string_view text) {
  ParamMap out;
  if (detail::trim(text).empty()) return out;
  for (const auto& item : detail::split(text, ',')) {
    const auto eq = item.find('=');
    require(eq != std::string::npos && eq > 0, ErrorKind::ParseError, "expected key=value, got '" + item + "'");
    out[detail::trim(std::string_view(item).substr(0, eq))] = detail::trim(std::string_view(item).substr(eq + 1));
  }
  return out;
}

inline Descriptor parse_descriptor(std::string_view text) {
  const auto colon = text.find(':');
  Descriptor d;
  d.name = detail::trim(text.substr(0, colon));
  require(!d.name.empty(), ErrorKind::ParseError, "empty descriptor");
  if (colon != std::string_view::npos) d.params = parse_params(text.substr(colon + 1));
  return d;
}

// --- equations --------------------------------------------------------------

inline const std::vector<std::string>& equation_names() {
  static const std::vector<std::string> names{"free",         "cubic-nls",   "vnls",  "tnls",
                                              "current-nls",  "gauged-nls",  "extended-nls", "dnls2",
                                              "linear-potential-nls", "oscillator-nls"};
  return names;
}

/// Equation from a descriptor such as "current-nls:kappa=1" or "vnls:a=0,b=1".
inline EquationSpec parse_equation(const Descriptor& d) {
  const auto& n = d.name;
  const double kappa = d.number("kappa", 1.0);
  if (n == "free") {
    d.only({"sigma"});
    return EquationSpec::free_linear(d.number("sigma", 0.5));
  }
  if (n == "cubic-nls") {
    d.only({"F", "sigma"});
    return EquationSpec::cubic_nls(d.number("F", 1.0), d.number("sigma", 0.5));
  }
  if (n == "vnls" || n == "tnls") {
    d.only({"a", "b", "sigma"});
    const double a = n == "tnls" ? 0.0 : d.number("a", 0.0);
    const double b = n == "tnls" ? 1.0 : d.number("b", 1.0);
    require(n == "vnls" || (!d.has("a") && !d.has("b")), ErrorKind::ParseError, "tnls fixes a=0, b=1");
    return EquationSpec::variable_coeff_nls(a, b, d.number("sigma", 0.5));
  }
  if (n == "current-nls") {
    d.only({"kappa"});
    return EquationSpec::current_nls(kappa);
  }
  if (n == "gauged-nls") {
    d.only({"kappa"});
    return EquationSpec::gauged_nls(kappa);
  }
  if (n == "extended-nls") {
    d.only({"kappa"});
    return EquationSpec::extended_current_nls(kappa);
  }
  if (n == "dnls2") {
    d.only({"kappa"});
    return EquationSpec::dnls2(kappa);
  }
  if (n == "linear-potential-nls") {
    d.only({"alpha", "F"});
    return EquationSpec::linear_potential_nls(d.number("alpha", 0.0), d.number("F", 2.0));
  }
  if (n == "oscillator-nls") {
    d.only({"omega", "F"});
    return EquationSpec::oscillator_nls(d.number("omega", 0.0), d.number("F", 1.0));
  }
  fail(ErrorKind::ParseError, "unknown equation '" + n + "'");
}

inline EquationSpec parse_equation(std::string_view text) { return parse_equation(parse_descriptor(text)); }

// --- solutions and initial conditions ---------------------------------------

/// Closed-form solution by catalog name: chiral, standing, lens (travwave),
/// extended (newsol), gaussian.
inline ClosedFormSolution parse_solution(const Descriptor& d) {
  const auto& n = d.name;
  if (n == "chiral") {
    d.only({"v", "w", "omega", "k", "kappa", "x0", "sign"});
    const double sign = d.number("sign", 1.0);
    require(sign == 1.0 || sign == -1.0, ErrorKind::ParseError, "sign must be 1 or -1");
    return chiral_soliton(SolitonParams::chiral(d.number("v", 2.0), d.number({"w", "omega"}, 1.0),
                                                d.number({"k", "kappa"}, 1.0), d.number("x0", 0.0),
                                                static_cast<int>(sign)));
  }
  if (n == "standing") {
    d.only({"x0", "sigma", "F"});
    return standing_soliton(d.number("x0", 0.0), d.number("sigma", 0.5), d.number("F", 1.0));
  }
  if (n == "lens") {
    d.only({"x0", "sigma"});
    return time_dependent_soliton(d.number("x0", 0.0), d.number("sigma", 0.5));
  }
  if (n == "extended") {
    d.only({"v", "k", "kappa"});
    return extended_soliton(d.number("v", 2.0), d.number({"k", "kappa"}, 1.0));
  }
  if (n == "gaussian") {
    d.only({"sigma", "width"});
    return gaussian_free_packet(d.number("sigma", 0.5), d.number("width", 1.0));
  }
  fail(ErrorKind::ParseError, "unknown solution '" + n + "'");
}

inline ClosedFormSolution parse_solution(std::string_view text) { return parse_solution(parse_descriptor(text)); }

/// Reads psi from a CSV with re and im columns; when a t column is present the
/// last time block is used.
inline ComplexField read_field_csv(const std::filesystem::path& path, const Grid1D& grid) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidArgument, "cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  const auto header = detail::split(line, ',');
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto re = column("re");
  const auto im = column("im");
  const auto tc = column("t");
  require(re && im, ErrorKind::ParseError, path.string() + " needs re and im columns");
  std::vector<cplx> values;
  double last_t = 0.0;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split(line, ',');
    require(cells.size() == header.size(), ErrorKind::ParseError, "ragged row in " + path.string());
    if (tc) {
      const double t = Descriptor::to_number(cells[*tc], "t");
      if (values.empty() || t != last_t) values.clear();
      last_t = t;
    }
    values.emplace_back(Descriptor::to_number(cells[*re], "re"), Descriptor::to_number(cells[*im], "im"));
  }
  require(values.size() == grid.size(), ErrorKind::InvalidArgument,
          path.string() + " has " + std::to_string(values.size()) + " nodes, grid has " +
              std::to_string(grid.size()));
  return ComplexField(grid, std::move(values), last_t);
}

/// Initial data: a catalog solution sampled at t0, "phased-sech:v=..,w=..,k=.."
/// (no chirality check), or "file:path.csv".
inline ComplexField parse_initial_condition(std::string_view text, const Grid1D& grid, double t0) {
  if (text.starts_with("file:")) return read_field_csv(std::string(text.substr(5)), grid).with_time(t0);
  const auto d = parse_descriptor(text);
  if (d.name == "phased-sech") {
    d.only({"v", "w", "omega", "k", "kappa"});
    return phased_sech_profile(grid, d.number("v", -2.0), d.number({"w", "omega"}, 1.0),
                               d.number({"k", "kappa"}, 1.0))
        .with_time(t0);
  }
  return parse_solution(d).sample(grid, t0);
}

// --- maps -------------------------------------------------------------------

using MapStep = std::variant<ConformalGenerator, FrameMapSpec, GaugeTransform>;

/// "+"-separated chain applied left to right. A '+' only separates steps when
/// a map name follows, so exponents such as 1e+3 are safe.
inline std::vector<MapStep> parse_map_chain(std::string_view text, GaugeDirection gauge_direction,
                                            double reference_point = -Grid1D::kDefaultHalfLength) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '+' && i + 1 < text.size() && std::isalpha(static_cast<unsigned char>(text[i + 1]))) {
      parts.push_back(detail::trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(detail::trim(text.substr(start)));

  std::vector<MapStep> steps;
  for (const auto& p : parts) {
    require(!p.empty(), ErrorKind::ParseError, "empty step in map expression '" + std::string(text) + "'");
    const auto d = parse_descriptor(p);
    auto need = [&](std::string_view key) {
      require(d.has(key), ErrorKind::ParseError, d.name + " needs " + std::string(key) + "=...");
      return d.number(key, 0.0);
    };
    if (d.name == "D") {
      d.only({});
      steps.emplace_back(ConformalGenerator{LensMap{}});
    } else if (d.name == "dilate") {
      d.only({"d"});
      const double delta = need("d");
      require(delta != 0.0, ErrorKind::InvalidArgument, "dilatation factor must be nonzero");
      steps.emplace_back(ConformalGenerator{Dilatation{delta}});
    } else if (d.name == "expand") {
      d.only({"k"});
      steps.emplace_back(ConformalGenerator{Expansion{need("k")}});
    } else if (d.name == "shift") {
      d.only({"e"});
      steps.emplace_back(ConformalGenerator{TimeTranslation{need("e")}});
    } else if (d.name == "accel") {
      d.only({"a"});
      steps.emplace_back(FrameMapSpec{AcceleratedFrame{need("a")}});
    } else if (d.name == "niederer") {
      d.only({"w"});
      steps.emplace_back(FrameMapSpec{NiedererFrame{need("w")}});
    } else if (d.name == "gauge") {
      d.only({"k"});
      steps.emplace_back(GaugeTransform{need("k"), gauge_direction, reference_point});
    } else {
      fail(ErrorKind::ParseError, "unknown map '" + d.name + "'");
    }
  }
  return steps;
}

inline ClosedFormSolution apply_map_chain(const std::vector<MapStep>& steps, ClosedFormSolution sol) {
  for (const auto& step : steps) {
    sol = std::visit(
        [&](const auto& m) -> ClosedFormSolution {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, ConformalGenerator>) return apply_conformal(m, sol);
          else if constexpr (std::is_same_v<M, GaugeTransform>) return apply_gauge(sol, m);
          else if constexpr (std::is_same_v<M, FrameMapSpec>) return detail::pull_back(m, sol);
        },
        step);
  }
  return sol;
}

/// "t=1:2" -> {1, 2}.
inline std::pair<double, double> parse_window(std::string_view text) {
  const auto d = parse_params(text);
  const auto it = d.find("t");
  require(it != d.end() && d.size() == 1, ErrorKind::ParseError, "window must look like t=1:2");
  const auto ends = detail::split(it->second, ':');
  require(ends.size() == 2, ErrorKind::ParseError, "window must look like t=1:2");
  const double lo = Descriptor::to_number(ends[0], "t");
  const double hi = Descriptor::to_number(ends[1], "t");
  require(lo <= hi, ErrorKind::ParseError, "window end precedes its start");
  return {lo, hi};
}

// --- classification inputs --------------------------------------------------

/// "(a,b,c)" or "a,b,c".
inline DnlsCoefficients parse_cc_triple(std::string_view text) {
  auto s = detail::trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  const auto parts = detail::split(s, ',');
  require(parts.size() == 3, ErrorKind::ParseError, "expected three coefficients a,b,c");
  return {Descriptor::to_number(parts[0], "a"), Descriptor::to_number(parts[1], "b"),
          Descriptor::to_number(parts[2], "c")};
}

/// "const:F=2", "inverse-linear:a=0,b=1", or "other:<text>".
inline CoefficientFamily parse_family(std::string_view text) {
  const auto colon = text.find(':');
  const auto name = detail::trim(text.substr(0, colon));
  const auto rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (name == "other") return OtherCoupling{detail::trim(rest)};
  Descriptor d{name, parse_params(rest)};
  if (name == "const") {
    d.only({"F"});
    return ConstantCoupling{d.number("F", 1.0)};
  }
  if (name == "inverse-linear") {
    d.only({"a", "b"});
    return InverseLinearCoupling{d.number("a", 0.0), d.number("b", 1.0)};
  }
  fail(ErrorKind::ParseError, "unknown coupling family '" + name + "'");
}

/// "x1=const,x2=time,drive=0": coefficient of x^n is zero, const or time.
inline PotentialSpec parse_potential(std::string_view text) {
  std::vector<CoefficientTag> coeffs(PotentialSpec::kMaxDegree + 1, CoefficientTag::zero);
  bool driving = false;
  for (const auto& [key, value] : parse_params(text)) {
    if (key == "drive" || key == "driving") {
      require(value == "0" || value == "1" || value == "true" || value == "false", ErrorKind::ParseError,
              "drive must be 0/1/true/false");
      driving = value == "1" || value == "true";
      continue;
    }
    require(key.size() >= 2 && key[0] == 'x', ErrorKind::ParseError, "potential keys are x0..x6 or drive");
    const double power = Descriptor::to_number(key.substr(1), key);
    require(power >= 0 && power == std::floor(power), ErrorKind::ParseError, "bad power in '" + key + "'");
    require(power <= PotentialSpec::kMaxDegree, ErrorKind::InvalidArgument,
            "potential degree exceeds " + std::to_string(PotentialSpec::kMaxDegree));
    CoefficientTag tag;
    if (value == "zero" || value == "0") tag = CoefficientTag::zero;
    else if (value == "const") tag = CoefficientTag::constant;
    else if (value == "time") tag = CoefficientTag::time_dependent;
    else fail(ErrorKind::ParseError, "coefficient must be zero, const or time, got '" + value + "'");
    coeffs[static_cast<std::size_t>(power)] = tag;
  }
  while (!coeffs.empty() && coeffs.back() == CoefficientTag::zero) coeffs.pop_back();
  return PotentialSpec(std::move(coeffs), driving);
}

}  // namespace edgesol
