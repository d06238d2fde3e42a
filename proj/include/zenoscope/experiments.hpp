#pragma once

#include <string>
#include <vector>

#include "zenoscope/config.hpp"
#include "zenoscope/trajectory.hpp"
#include "zenoscope/volterra.hpp"

namespace zenoscope {

/// gamma(x) from the closed form when the model has one, else by double integral.
cplx effective_rate(const MemoryKernel& kernel, double x);

/// |a(tau)|^(2 t / tau), the null-conditioned population continued between grid points.
double null_population(const NullConditionedCurve& curve, double t);

/// sup_t |P_a(t) - P_b(t)| over the grid of `a`.
double null_curve_deviation(const NullConditionedCurve& a, const NullConditionedCurve& b);

/// sup_t |P(n tau) - exp(-Re(rate) n tau)| over the curve grid.
double null_curve_vs_rate(const NullConditionedCurve& curve, cplx rate);

/// Largest |a - b| / |b| over paired values.
double max_relative_deviation(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Null factor, update interval and run length for a monitored-trajectory experiment.
struct TrajectorySetup {
  DriveConfig drive;
  NullFactor null_factor;
  AtomState initial;
};
TrajectorySetup make_trajectory_setup(const RunConfig& config);

struct ExperimentResult {
  bool is_check = false;
  bool passed = true;
  std::string summary;
  std::vector<std::string> files;
};

/// Runs one experiment and writes its CSV artifact(s). Throws
/// config_error / model errors on invalid input.
ExperimentResult run_experiment(const RunConfig& config);

}  // namespace zenoscope
