#pragma once

#include <vector>

#include "edgesol/equations.hpp"
#include "edgesol/grid.hpp"

namespace edgesol {

struct ObservableSample {
  double t;
  double mass;
  double momentum;
  double peak_position;
};

/// Recorded snapshots of one evolution. times are strictly increasing and
/// fields.front() is the initial condition.
struct TrajectoryRecord {
  EquationSpec equation;
  std::vector<double> times;
  std::vector<ComplexField> fields;
  std::vector<ObservableSample> observables;
  /// L-infinity continuity residual at recorded steps, from the surrounding
  /// steps (absent for the first two and last two steps).
  std::vector<double> continuity_times;
  std::vector<double> continuity;
  std::size_t steps = 0;
  double dt = 0.0;

  const ComplexField& final_field() const { return fields.back(); }
};

}  // namespace edgesol
