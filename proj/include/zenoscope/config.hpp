#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zenoscope/memory_kernel.hpp"
#include "zenoscope/spectral_density.hpp"
#include "zenoscope/volterra.hpp"

namespace zenoscope {

enum class Experiment { Decay, NullDecay, GammaCurve, ScalingCheck, Trajectory, Ensemble, KkCheck };
std::string_view to_string(Experiment e);

/// Where the per-step null factor a_bar(dt) comes from.
enum class NullFactorMode { Scaling, Memory };

enum class InitialState { Excited, Ground, Superposition };

/// One experiment, read from `key = value` lines. Rates are in units of
/// gamma (default 1), times in units of 1/gamma.
struct RunConfig {
  Experiment experiment = Experiment::Decay;

  Shape shape = Shape::Lorentzian;
  double gamma = 1.0;
  double lambda = 100.0;
  double c = 0.0;
  double b = 1.0;
  std::string table;
  KernelMode kernel = KernelMode::Analytic;
  std::optional<double> quad_half_width;  // overrides default_quadrature(shape)
  std::optional<int> quad_panels;
  VolterraScheme scheme = VolterraScheme::Trapezoid;

  std::optional<double> dt;
  double t_max = 10.0;
  std::optional<double> x;
  std::optional<double> tau;
  std::optional<double> delta_t;
  double omega = 1.0;
  std::size_t n_traj = 5000;
  std::uint64_t seed = 1;
  std::vector<double> lambdas{5.0, 100.0};
  double x_min = 0.01;
  double x_max = 20.0;
  std::size_t x_points = 200;
  NullFactorMode null_factor = NullFactorMode::Scaling;
  InitialState initial = InitialState::Excited;
  unsigned threads = 1;  // ensemble experiment only
  std::string out;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parse error carrying the offending line (0 when not tied to a line).
class config_error : public std::invalid_argument {
 public:
  config_error(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// `#` starts a comment; blank lines are ignored; unknown or repeated keys
/// are rejected. `experiment` is required.
RunConfig parse_config(std::string_view text);
/// Relative `table` paths are resolved against the directory of `path`.
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& config);

/// Applies one `key = value` assignment (used for command-line overrides).
void set_config_value(RunConfig& config, std::string_view key, std::string_view value, std::size_t line = 0);

/// Kernel of the model with the configured mode and quadrature overrides.
MemoryKernel make_kernel(const RunConfig& config);
MemoryKernel make_kernel(const RunConfig& config, SpectralDensity density);

/// Spectral model described by the config (loads the table when tabulated).
SpectralDensity make_density(const RunConfig& config);

/// tau from `tau`, or from `x` as x / lambda. Throws config_error if neither is set.
double resolve_tau(const RunConfig& config);
/// x from `x`, or from `tau` as lambda * tau.
double resolve_x(const RunConfig& config);

}  // namespace zenoscope
