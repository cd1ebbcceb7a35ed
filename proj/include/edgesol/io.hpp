#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "edgesol/error.hpp"
#include "edgesol/integrability.hpp"
#include "edgesol/integrator.hpp"
#include "edgesol/residuals.hpp"
#include "edgesol/trajectory.hpp"

namespace edgesol {

using json = nlohmann::json;

namespace detail {
inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  require(out.good(), ErrorKind::InvalidArgument, "cannot open " + path.string() + " for writing");
  return out;
}

inline void put17(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}
}  // namespace detail

/// One row per (record, node): t,x,re,im,rho,j.
inline void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryRecord& traj) {
  auto out = detail::open_output(path);
  out << "t,x,re,im,rho,j\n";
  for (const auto& f : traj.fields) {
    const auto j = current(f);
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double row[] = {f.time_tag(), f.grid().x(k), f[k].real(), f[k].imag(), std::norm(f[k]), j[k]};
      for (std::size_t c = 0; c < 6; ++c) {
        if (c) out << ',';
        detail::put17(out, row[c]);
      }
      out << '\n';
    }
  }
}

/// One row per record; continuity is empty where the time stencil does not fit.
inline void write_observables_csv(const std::filesystem::path& path, const TrajectoryRecord& traj) {
  auto out = detail::open_output(path);
  out << "t,mass,momentum,peak_position,continuity\n";
  std::size_t c = 0;
  for (const auto& o : traj.observables) {
    detail::put17(out, o.t);
    out << ',';
    detail::put17(out, o.mass);
    out << ',';
    detail::put17(out, o.momentum);
    out << ',';
    detail::put17(out, o.peak_position);
    out << ',';
    while (c < traj.continuity_times.size() && traj.continuity_times[c] < o.t) ++c;
    if (c < traj.continuity_times.size() && traj.continuity_times[c] == o.t) detail::put17(out, traj.continuity[c]);
    out << '\n';
  }
}

inline void write_json(const std::filesystem::path& path, const json& doc) {
  auto out = detail::open_output(path);
  out << doc.dump(2) << '\n';
}

// JSON has no NaN or infinity.
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const ResidualReport& r) {
  return {{"equation", r.equation},
          {"solution", r.solution},
          {"t_begin", r.t_begin},
          {"t_end", r.t_end},
          {"time_samples", r.time_samples},
          {"linf", finite_or_null(r.linf)},
          {"l2", finite_or_null(r.l2)},
          {"excluded_edge_nodes", r.excluded_edge_nodes},
          {"spatial_scheme", r.spatial_scheme},
          {"time_scheme", r.time_scheme},
          {"time_step", r.time_step},
          {"boundary_amplitude", finite_or_null(r.boundary_amplitude)},
          {"decay_gate_passed", r.decay_gate_passed}};
}

inline json to_json(const ClarksonCosgroveReport& r) {
  return {{"integrable", r.integrable}, {"required_c", r.required_c}, {"deviation", r.deviation}};
}

inline json to_json(const PotentialVerdict& v) {
  json j{{"transformable", v.transformable}, {"reason", v.reason}};
  j["map"] = v.transformable ? json(to_string(v.hint)) : json(nullptr);
  return j;
}

inline json to_json(const ConvergenceReport& r) {
  return {{"order", finite_or_null(r.order)},
          {"coarse_difference", r.coarse_difference},
          {"fine_difference", r.fine_difference},
          {"at_floor", r.at_floor}};
}

inline json to_json(const IntegratorConfig& c) {
  return {{"dt", c.dt},
          {"t0", c.t0},
          {"t1", c.t1},
          {"scheme", to_string(c.scheme)},
          {"dealias", c.dealias},
          {"record_every", c.record_every},
          {"decay_gate", c.decay_gate},
          {"blowup_threshold", c.blowup_threshold}};
}

inline json to_json(const Grid1D& g) { return {{"L", g.half_length()}, {"N", g.size()}}; }

}  // namespace edgesol
