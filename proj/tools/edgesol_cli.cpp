// edgesol command-line front end: simulate | verify | transform | classify | sweep.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "edgesol/edgesol.hpp"

namespace fs = std::filesystem;
using namespace edgesol;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

constexpr const char* kOutputDirEnv = "EDGESOL_OUTPUT_DIR";

int exit_code_for(const Error& e) { return e.is_numerical() ? kExitNumerical : kExitConfig; }

fs::path default_output_dir() {
  const char* env = std::getenv(kOutputDirEnv);
  return env && *env ? fs::path(env) : fs::path("edgesol_out");
}

std::string to_string(const Descriptor& d) {
  std::string out = d.name;
  char sep = ':';
  for (const auto& [k, v] : d.params) {
    out += sep + k + "=" + v;
    sep = ',';
  }
  return out;
}

// --- run configuration --------------------------------------------------------

struct RunConfig {
  std::string equation = "current-nls";
  std::string initial = "chiral:v=2,w=1";
  double half_length = Grid1D::kDefaultHalfLength;
  std::size_t nodes = Grid1D::kDefaultPoints;
  IntegratorConfig integrator;
  std::string name = "run";
  fs::path output_dir;
  bool write_trajectory = true;
};

json to_json(const RunConfig& c) {
  return {{"equation", c.equation},
          {"ic", c.initial},
          {"grid", {{"L", c.half_length}, {"N", c.nodes}}},
          {"integrator", edgesol::to_json(c.integrator)},
          {"name", c.name},
          {"output_dir", c.output_dir.string()},
          {"write_trajectory", c.write_trajectory}};
}

Scheme parse_scheme(const std::string& s) {
  if (s == "ifrk4" || s == "IFRK4") return Scheme::ifrk4;
  if (s == "rk4" || s == "RK4") return Scheme::rk4;
  fail(ErrorKind::ParseError, "scheme must be ifrk4 or rk4, got '" + s + "'");
}

/// Reads a JSON config file over the defaults; unknown keys are rejected.
void load_config(const fs::path& path, RunConfig& cfg) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidArgument, "cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, "config " + path.string() + ": " + e.what());
  }
  require(doc.is_object(), ErrorKind::ParseError, "config must be a JSON object");
  auto unknown = [](const std::string& where, const std::string& key) {
    fail(ErrorKind::ParseError, "unknown config key '" + where + key + "'");
  };
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "equation") cfg.equation = value.get<std::string>();
      else if (key == "ic") cfg.initial = value.get<std::string>();
      else if (key == "name") cfg.name = value.get<std::string>();
      else if (key == "output_dir") cfg.output_dir = value.get<std::string>();
      else if (key == "write_trajectory") cfg.write_trajectory = value.get<bool>();
      else if (key == "grid") {
        for (const auto& [gk, gv] : value.items()) {
          if (gk == "L") cfg.half_length = gv.get<double>();
          else if (gk == "N") cfg.nodes = gv.get<std::size_t>();
          else unknown("grid.", gk);
        }
      } else if (key == "integrator") {
        auto& ic = cfg.integrator;
        for (const auto& [ik, iv] : value.items()) {
          if (ik == "dt") ic.dt = iv.get<double>();
          else if (ik == "t0") ic.t0 = iv.get<double>();
          else if (ik == "t1") ic.t1 = iv.get<double>();
          else if (ik == "scheme") ic.scheme = parse_scheme(iv.get<std::string>());
          else if (ik == "dealias") ic.dealias = iv.get<bool>();
          else if (ik == "record_every") ic.record_every = iv.get<std::size_t>();
          else if (ik == "decay_gate") ic.decay_gate = iv.get<double>();
          else if (ik == "blowup_threshold") ic.blowup_threshold = iv.get<double>();
          else unknown("integrator.", ik);
        }
      } else {
        unknown("", key);
      }
    }
  } catch (const json::type_error& e) {
    fail(ErrorKind::ParseError, "config " + path.string() + ": " + e.what());
  }
}

/// Equation parameters that may also be given as separate flags.
struct EquationFlags {
  std::optional<double> kappa, sigma, coupling, alpha, omega, a, b;

  void apply(Descriptor& d) const {
    auto put = [&](const char* key, const std::optional<double>& v) {
      if (v) d.params[key] = num(*v);
    };
    put("kappa", kappa);
    put("sigma", sigma);
    put("F", coupling);
    put("alpha", alpha);
    put("omega", omega);
    put("a", a);
    put("b", b);
  }

  void add_to(CLI::App* app) {
    app->add_option("--kappa", kappa, "coupling kappa of the current equations");
    app->add_option("--sigma", sigma, "kinetic coefficient (1/2 or 1)");
    app->add_option("--F", coupling, "cubic coupling");
    app->add_option("--alpha", alpha, "linear potential strength");
    app->add_option("--omega", omega, "oscillator frequency");
    app->add_option("--a", a, "F = 1/(a + b t)");
    app->add_option("--b", b, "F = 1/(a + b t)");
  }
};

/// Catalog solutions take kappa from the equation unless given explicitly.
std::string inherit_kappa(const std::string& ic, const EquationSpec& eq) {
  if (ic.starts_with("file:")) return ic;
  auto d = parse_descriptor(ic);
  static const std::vector<std::string> takes_kappa{"chiral", "extended", "phased-sech"};
  if (std::find(takes_kappa.begin(), takes_kappa.end(), d.name) == takes_kappa.end()) return ic;
  if (d.has("k") || d.has("kappa")) return ic;
  std::optional<double> kappa;
  std::visit(
      [&](const auto& v) {
        if constexpr (requires { v.kappa; }) kappa = v.kappa;
      },
      eq.variant());
  if (!kappa) return ic;
  d.params["k"] = num(*kappa);
  return to_string(d);
}

// --- simulate -------------------------------------------------------------------

/// Runs one evolution and writes its artifacts. Numerical failures still leave
/// a manifest behind, with the error recorded, before rethrowing.
json run_simulation(RunConfig cfg) {
  const auto eq = parse_equation(cfg.equation);
  cfg.initial = inherit_kappa(cfg.initial, eq);
  const Grid1D grid(cfg.half_length, cfg.nodes);
  validate(cfg.integrator, eq);
  const auto psi0 = parse_initial_condition(cfg.initial, grid, cfg.integrator.t0);

  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  const auto manifest_path = dir / (cfg.name + "_manifest.json");
  json manifest{{"config", to_json(cfg)}, {"equation", eq.name()}, {"error", nullptr}};

  std::optional<TrajectoryRecord> result;
  try {
    result = evolve(eq, psi0, cfg.integrator);
  } catch (const Error& e) {
    manifest["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    write_json(manifest_path, manifest);
    throw;
  }
  const auto& traj = *result;

  json files = json::object();
  if (cfg.write_trajectory) {
    const auto p = dir / (cfg.name + "_trajectory.csv");
    write_trajectory_csv(p, traj);
    files["trajectory"] = p.string();
  }
  const auto obs_path = dir / (cfg.name + "_observables.csv");
  write_observables_csv(obs_path, traj);
  files["observables"] = obs_path.string();
  files["manifest"] = manifest_path.string();

  const double m0 = traj.observables.front().mass;
  double drift = 0.0;
  json series = json::array();
  for (const auto& o : traj.observables) {
    drift = std::max(drift, m0 > 0.0 ? std::abs(o.mass - m0) / m0 : std::abs(o.mass));
    series.push_back({{"t", o.t}, {"mass", o.mass}, {"momentum", o.momentum}, {"peak_position", o.peak_position}});
  }
  double continuity = 0.0;
  for (double c : traj.continuity) continuity = std::max(continuity, c);

  manifest["steps"] = traj.steps;
  manifest["dt_effective"] = traj.dt;
  manifest["records"] = traj.times.size();
  manifest["observables"] = series;
  manifest["diagnostics"] = {{"relative_mass_drift", drift},
                             {"continuity_max", traj.continuity.empty() ? json(nullptr) : json(continuity)},
                             {"final_edge_amplitude", edge_amplitude(traj.final_field())}};
  manifest["files"] = files;
  write_json(manifest_path, manifest);
  return manifest;
}

// --- output helpers ---------------------------------------------------------------

struct Output {
  bool json_mode = false;

  void error(const Error& e) const { error(std::string(to_string(e.kind())), e.what(), exit_code_for(e)); }

  void error(const std::string& kind, const std::string& message, int code) const {
    if (json_mode) {
      json line{{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}};
      std::cout << line.dump() << std::endl;
    } else {
      std::cerr << "edgesol: " << message << std::endl;
    }
  }
};

void print_checks(const ClaimResult& r) {
  std::printf("%-30s %-44s %14s %12s  %s\n", "claim", "check", "value", "gate", "status");
  for (const auto& c : r.checks) {
    std::string gate;
    std::string value;
    switch (c.kind) {
      case ClaimCheck::Kind::at_most: gate = "<= " + num(c.tolerance); value = num(c.value); break;
      case ClaimCheck::Kind::exceeds: gate = "> " + num(c.tolerance); value = num(c.value); break;
      case ClaimCheck::Kind::holds: gate = "holds"; value = c.value != 0.0 ? "true" : "false"; break;
    }
    std::printf("%-30s %-44s %14s %12s  %s\n", r.name.c_str(), c.label.c_str(), value.c_str(), gate.c_str(),
                c.passed() ? "PASS" : "FAIL");
  }
}

// --- sweep ------------------------------------------------------------------------

struct Variation {
  std::string target;  // ic | eq | grid | integrator
  std::string key;
  std::vector<std::string> values;
};

Variation parse_variation(const std::string& text) {
  const auto eq = text.find('=');
  const auto dot = text.find('.');
  require(eq != std::string::npos && dot != std::string::npos && dot < eq, ErrorKind::ParseError,
          "--vary expects target.key=v1,v2,... (target: ic, eq, grid, integrator)");
  Variation v{text.substr(0, dot), text.substr(dot + 1, eq - dot - 1), {}};
  std::string rest = text.substr(eq + 1);
  std::size_t start = 0;
  for (std::size_t i = 0; i <= rest.size(); ++i) {
    if (i == rest.size() || rest[i] == ',') {
      v.values.push_back(rest.substr(start, i - start));
      start = i + 1;
    }
  }
  for (const auto& value : v.values) require(!value.empty(), ErrorKind::ParseError, "empty value in --vary");
  static const std::vector<std::string> targets{"ic", "eq", "grid", "integrator"};
  require(std::find(targets.begin(), targets.end(), v.target) != targets.end(), ErrorKind::ParseError,
          "unknown --vary target '" + v.target + "'");
  return v;
}

void apply_variation(RunConfig& cfg, const Variation& v, const std::string& value) {
  auto number = [&] { return Descriptor::to_number(value, v.key); };
  if (v.target == "ic" || v.target == "eq") {
    auto& text = v.target == "ic" ? cfg.initial : cfg.equation;
    auto d = parse_descriptor(text);
    number();
    d.params[v.key] = value;
    text = to_string(d);
  } else if (v.target == "grid") {
    if (v.key == "L") cfg.half_length = number();
    else if (v.key == "N") cfg.nodes = static_cast<std::size_t>(number());
    else fail(ErrorKind::ParseError, "grid keys are L and N");
  } else {
    auto& ic = cfg.integrator;
    if (v.key == "dt") ic.dt = number();
    else if (v.key == "t0") ic.t0 = number();
    else if (v.key == "t1" || v.key == "T") ic.t1 = number();
    else if (v.key == "decay_gate") ic.decay_gate = number();
    else fail(ErrorKind::ParseError, "integrator keys are dt, t0, t1, decay_gate");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edgesol: edge-soliton equations, exact solutions, maps and integrability checks"};
  app.require_subcommand(1);
  Output out;
  std::string output_dir;
  app.add_flag("--json", out.json_mode, "machine-readable output; errors as one JSON line");
  app.fallthrough();
  app.add_option("-o,--output-dir", output_dir, std::string("output directory (default $") + kOutputDirEnv + ")");

  // simulate (the same run options are accepted by sweep)
  auto* sim = app.add_subcommand("simulate", "evolve an initial condition and write trajectory artifacts");
  auto* swp = app.add_subcommand("sweep", "run simulate over a parameter grid with a worker pool");
  std::string config_path, sim_eq, sim_ic, sim_scheme, sim_name;
  double sim_L = 0, sim_dt = 0, sim_t0 = 0, sim_t1 = 0, sim_gate = 0;
  std::size_t sim_N = 0, sim_every = 0;
  bool sim_no_dealias = false, sim_no_traj = false;
  EquationFlags sim_flags;
  struct RunOptions {
    CLI::Option *eq, *ic, *L, *N, *dt, *t0, *t1, *scheme, *every, *gate, *name;
  };
  auto add_run_options = [&](CLI::App* cmd) {
    RunOptions o{};
    cmd->add_option("--config", config_path, "JSON config file; flags override its values");
    o.eq = cmd->add_option("--eq", sim_eq, "equation descriptor, e.g. current-nls:kappa=1");
    o.ic = cmd->add_option("--ic", sim_ic, "initial condition, e.g. chiral:v=2,w=1 or file:psi.csv");
    o.L = cmd->add_option("--L", sim_L, "half box length");
    o.N = cmd->add_option("--N", sim_N, "grid nodes (power of two)");
    o.dt = cmd->add_option("--dt", sim_dt, "time step");
    o.t0 = cmd->add_option("--t0", sim_t0, "start time");
    o.t1 = cmd->add_option("--T,--t1", sim_t1, "end time");
    o.scheme = cmd->add_option("--scheme", sim_scheme, "ifrk4 or rk4");
    o.every = cmd->add_option("--record-every", sim_every, "record every n-th step");
    o.gate = cmd->add_option("--decay-gate", sim_gate, "largest |psi| tolerated at the grid edge");
    o.name = cmd->add_option("--name", sim_name, "file name prefix");
    cmd->add_flag("--no-dealias", sim_no_dealias, "disable the 2/3 rule");
    cmd->add_flag("--no-trajectory", sim_no_traj, "skip the trajectory CSV");
    sim_flags.add_to(cmd);
    return o;
  };
  const RunOptions sim_opts = add_run_options(sim);
  const RunOptions swp_opts = add_run_options(swp);

  auto build_run_config = [&](const RunOptions& o) {
    RunConfig cfg;
    if (!config_path.empty()) load_config(config_path, cfg);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (cfg.output_dir.empty()) cfg.output_dir = default_output_dir();
    if (o.eq->count()) cfg.equation = sim_eq;
    auto d = parse_descriptor(cfg.equation);
    sim_flags.apply(d);
    cfg.equation = to_string(d);
    if (o.ic->count()) cfg.initial = sim_ic;
    if (o.L->count()) cfg.half_length = sim_L;
    if (o.N->count()) cfg.nodes = sim_N;
    if (o.dt->count()) cfg.integrator.dt = sim_dt;
    if (o.t0->count()) cfg.integrator.t0 = sim_t0;
    if (o.t1->count()) cfg.integrator.t1 = sim_t1;
    if (o.scheme->count()) cfg.integrator.scheme = parse_scheme(sim_scheme);
    if (o.every->count()) cfg.integrator.record_every = sim_every;
    if (o.gate->count()) cfg.integrator.decay_gate = sim_gate;
    if (o.name->count()) cfg.name = sim_name;
    if (sim_no_dealias) cfg.integrator.dealias = false;
    if (sim_no_traj) cfg.write_trajectory = false;
    return cfg;
  };

  // verify
  auto* ver = app.add_subcommand("verify", "run a named claim at pinned parameters");
  std::vector<std::string> claim_names;
  bool list_claims = false;
  ver->add_option("claims", claim_names, "claim names, or 'all'");
  ver->add_flag("--list", list_claims, "list registered claims");

  // transform
  auto* tr = app.add_subcommand("transform", "map a closed-form solution and check it against the target equation");
  std::string map_expr, tr_input = "standing", tr_window = "t=1:2", tr_direction = "forward", tr_compare,
                        tr_name = "transform";
  double tr_L = Grid1D::kDefaultHalfLength;
  std::size_t tr_N = Grid1D::kDefaultPoints, tr_samples = 11;
  tr->add_option("map", map_expr, "map chain, e.g. D or shift:e=1+expand:k=1+shift:e=1")->required();
  tr->add_option("--input", tr_input, "source solution (chiral, standing, lens, extended, gaussian)");
  tr->add_option("--window", tr_window, "sample window, e.g. t=1:2");
  tr->add_option("--samples", tr_samples, "number of sample times in the window");
  tr->add_option("--direction", tr_direction, "gauge direction: forward or backward");
  tr->add_option("--compare", tr_compare, "second map chain; reports the largest pointwise difference");
  tr->add_option("--L", tr_L, "half box length");
  tr->add_option("--N", tr_N, "grid nodes (power of two)");
  tr->add_option("--name", tr_name, "file name prefix");

  // classify
  auto* cls = app.add_subcommand("classify", "integrability and transformability verdicts as JSON");
  std::vector<std::string> cc_triples, families, potentials, equations;
  cls->add_option("--cc", cc_triples, "DNLS coefficients a,b,c");
  cls->add_option("--family", families, "coupling family: const:F=..., inverse-linear:a=..,b=.., other:<text>");
  cls->add_option("--potential", potentials, "potential, e.g. x1=const,x2=time,drive=0");
  cls->add_option("--eq", equations, "catalog equation descriptor");

  // sweep
  std::vector<std::string> variations;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  swp->add_option("--vary", variations, "target.key=v1,v2,... (target: ic, eq, grid, integrator)")->required();
  swp->add_option("--workers", workers, "concurrent runs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    // A subcommand's help request surfaces here too.
    out.error("UsageError", e.what(), kExitConfig);
    return kExitConfig;
  }

  try {
    if (*sim) {
      const auto cfg = build_run_config(sim_opts);
      const auto manifest = run_simulation(cfg);
      if (out.json_mode) {
        std::cout << manifest.dump() << std::endl;
      } else {
        std::printf("%s: %zu steps, relative mass drift %s\n", manifest["equation"].get<std::string>().c_str(),
                    manifest["steps"].get<std::size_t>(),
                    num(manifest["diagnostics"]["relative_mass_drift"].get<double>()).c_str());
        for (const auto& [k, v] : manifest["files"].items()) std::printf("  %s: %s\n", k.c_str(), v.get<std::string>().c_str());
      }
      return kExitOk;
    }

    if (*ver) {
      if (list_claims) {
        for (const auto& c : claim_registry()) std::printf("%-30s %s\n", c.name.c_str(), c.summary.c_str());
        return kExitOk;
      }
      require(!claim_names.empty(), ErrorKind::InvalidArgument, "verify needs a claim name (or --list)");
      std::vector<const Claim*> selected;
      for (const auto& n : claim_names) {
        if (n == "all") {
          for (const auto& c : claim_registry()) selected.push_back(&c);
        } else {
          selected.push_back(&find_claim(n));
        }
      }
      bool all_passed = true;
      json results = json::array();
      for (const auto* c : selected) {
        const auto r = c->run();
        all_passed = all_passed && r.passed();
        if (out.json_mode) results.push_back(to_json(r));
        else print_checks(r);
      }
      if (out.json_mode) std::cout << json{{"passed", all_passed}, {"results", results}}.dump() << std::endl;
      return all_passed ? kExitOk : kExitNumerical;
    }

    if (*tr) {
      require(tr_direction == "forward" || tr_direction == "backward", ErrorKind::ParseError,
              "--direction must be forward or backward");
      require(tr_samples >= 1, ErrorKind::InvalidArgument, "--samples must be positive");
      const Grid1D grid(tr_L, tr_N);
      const auto dir = tr_direction == "forward" ? GaugeDirection::forward : GaugeDirection::backward;
      const auto [t0, t1] = parse_window(tr_window);
      const auto source = parse_solution(tr_input);
      const auto mapped = apply_map_chain(parse_map_chain(map_expr, dir, -grid.half_length()), source);
      const auto report = pde_residual_window(mapped.solves(), mapped, t0, t1, tr_samples, grid);

      TrajectoryRecord samples{mapped.solves(), {}, {}, {}, {}, {}, 0, 0.0};
      for (std::size_t i = 0; i < tr_samples; ++i) {
        const double t = tr_samples == 1 ? t0 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(tr_samples - 1);
        samples.times.push_back(t);
        samples.fields.push_back(mapped.sample(grid, t));
      }
      const fs::path outdir = output_dir.empty() ? default_output_dir() : fs::path(output_dir);
      const auto csv = outdir / (tr_name + "_samples.csv");
      write_trajectory_csv(csv, samples);

      json doc{{"map", map_expr},       {"input", source.name()},          {"solution", mapped.name()},
               {"target", mapped.solves().name()}, {"residual", edgesol::to_json(report)}, {"samples", csv.string()}};
      if (!tr_compare.empty()) {
        const auto other = apply_map_chain(parse_map_chain(tr_compare, dir, -grid.half_length()), source);
        double diff = 0.0;
        for (std::size_t i = 0; i < samples.times.size(); ++i) {
          diff = std::max(diff, max_abs_difference(samples.fields[i], other.sample(grid, samples.times[i])));
        }
        doc["compare"] = {{"map", tr_compare}, {"solution", other.name()}, {"max_difference", diff}};
      }
      const auto report_path = outdir / (tr_name + "_report.json");
      write_json(report_path, doc);
      if (out.json_mode) {
        std::cout << doc.dump() << std::endl;
      } else {
        std::printf("%s -> %s\n  residual L-inf %s over t in [%s, %s] (%s, %zu edge nodes excluded, decay gate %s)\n",
                    mapped.name().c_str(), mapped.solves().name().c_str(), num(report.linf).c_str(), num(t0).c_str(),
                    num(t1).c_str(), report.spatial_scheme.c_str(), report.excluded_edge_nodes,
                    report.decay_gate_passed ? "passed" : "FAILED");
        if (doc.contains("compare")) {
          std::printf("  max |%s - %s| = %s\n", map_expr.c_str(), tr_compare.c_str(),
                      num(doc["compare"]["max_difference"].get<double>()).c_str());
        }
        std::printf("  samples: %s\n  report: %s\n", csv.string().c_str(), report_path.string().c_str());
      }
      return kExitOk;
    }

    if (*cls) {
      require(!cc_triples.empty() || !families.empty() || !potentials.empty() || !equations.empty(),
              ErrorKind::InvalidArgument, "classify needs --cc, --family, --potential or --eq");
      json verdicts = json::array();
      for (const auto& t : cc_triples) {
        const auto c = parse_cc_triple(t);
        auto v = edgesol::to_json(clarkson_cosgrove(c));
        v["kind"] = "clarkson-cosgrove";
        v["input"] = {c.a, c.b, c.c};
        verdicts.push_back(v);
      }
      for (const auto& f : families) {
        verdicts.push_back({{"kind", "painleve-vnls"}, {"input", f}, {"integrable", painleve_vnls(parse_family(f))}});
      }
      for (const auto& p : potentials) {
        auto v = edgesol::to_json(classify_potential(parse_potential(p)));
        v["kind"] = "potential";
        v["input"] = p;
        verdicts.push_back(v);
      }
      for (const auto& e : equations) {
        const auto eq = parse_equation(e);
        const auto verdict = integrability_verdict(eq);
        json v{{"kind", "equation"}, {"input", e}, {"equation", eq.name()},
               {"integrable", verdict ? json(*verdict) : json(nullptr)}};
        if (auto coeffs = dnls_coefficients(eq)) v["dnls_coefficients"] = {coeffs->a, coeffs->b, coeffs->c};
        verdicts.push_back(v);
      }
      const json doc = verdicts.size() == 1 ? verdicts[0] : json{{"verdicts", verdicts}};
      std::cout << (out.json_mode ? doc.dump() : doc.dump(2)) << std::endl;
      return kExitOk;
    }

    if (*swp) {
      std::vector<Variation> vars;
      for (const auto& v : variations) vars.push_back(parse_variation(v));
      auto base = build_run_config(swp_opts);
      const std::string sweep_name = base.name == RunConfig{}.name ? std::string("sweep") : base.name;

      // Cartesian product, first variation slowest.
      std::vector<std::vector<std::string>> points{{}};
      for (const auto& v : vars) {
        std::vector<std::vector<std::string>> next;
        for (const auto& p : points) {
          for (const auto& value : v.values) {
            next.push_back(p);
            next.back().push_back(value);
          }
        }
        points = std::move(next);
      }
      std::vector<RunConfig> runs;
      for (std::size_t i = 0; i < points.size(); ++i) {
        RunConfig cfg = base;
        for (std::size_t j = 0; j < vars.size(); ++j) apply_variation(cfg, vars[j], points[i][j]);
        cfg.name = sweep_name + "_" + std::to_string(i);
        runs.push_back(cfg);
      }

      std::vector<json> results(runs.size());
      std::vector<int> codes(runs.size(), kExitOk);
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next++; i < runs.size(); i = next++) {
          json entry{{"index", i}, {"config", to_json(runs[i])}};
          try {
            const auto m = run_simulation(runs[i]);
            entry["status"] = "ok";
            entry["diagnostics"] = m["diagnostics"];
            entry["manifest"] = m["files"]["manifest"];
          } catch (const Error& e) {
            codes[i] = exit_code_for(e);
            entry["status"] = "failed";
            entry["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
          } catch (const std::exception& e) {
            codes[i] = kExitConfig;
            entry["status"] = "failed";
            entry["error"] = {{"kind", "InternalError"}, {"message", e.what()}};
          }
          entry["exit_code"] = codes[i];
          results[i] = std::move(entry);
        }
      };
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < std::min(workers, runs.size()); ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();

      const int code = *std::max_element(codes.begin(), codes.end());
      json summary{{"points", results}, {"workers", workers}, {"exit_code", code}};
      const fs::path outdir = base.output_dir;
      write_json(outdir / (sweep_name + "_summary.json"), summary);
      if (out.json_mode) {
        std::cout << summary.dump() << std::endl;
      } else {
        for (const auto& r : results) {
          std::printf("%-12s %-7s %s\n", (sweep_name + "_" + std::to_string(r["index"].get<std::size_t>())).c_str(),
                      r["status"].get<std::string>().c_str(),
                      r.contains("error") ? r["error"]["message"].get<std::string>().c_str()
                                          : ("mass drift " + num(r["diagnostics"]["relative_mass_drift"].get<double>())).c_str());
        }
      }
      return code;
    }
  } catch (const Error& e) {
    out.error(e);
    return exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    out.error("IoError", e.what(), kExitConfig);
    return kExitConfig;
  } catch (const std::exception& e) {
    out.error("InternalError", e.what(), kExitConfig);
    return kExitConfig;
  }
  return kExitConfig;
}
