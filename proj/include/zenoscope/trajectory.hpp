#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "zenoscope/atom_state.hpp"
#include "zenoscope/memory_kernel.hpp"

namespace zenoscope {

/// Per-step parameters of the driven, continuously monitored atom.
struct DriveConfig {
  double omega = 0.0;      // Rabi parameter of the drive omega * sigma_x
  double gamma_eff = 0.0;  // effective emission rate under frequent detection
  double dt_step = 0.0;    // update interval, at most one photon per step
  std::size_t n_steps = 0;

  /// Throws configuration_error unless gamma_eff * dt and omega * dt are both <= 0.05.
  void validate() const;
};

inline constexpr double kMaxStepProbability = 0.05;

/// exp(-i omega sigma_x dt) applied to the state.
AtomState unitary_drive(const AtomState& state, double omega, double dt);

struct StepOutcome {
  AtomState state;
  bool jump = false;
};

/// One measurement-plus-drive update. A photon is registered when
/// epsilon < |alpha|^2 gamma_eff dt; the state then resets to the ground state,
/// otherwise it is conditioned with diag(a_bar, 1) and renormalized. The drive
/// acts after the measurement in both cases.
StepOutcome mc_step(const AtomState& state, const DriveConfig& cfg, cplx a_bar_dt, double epsilon);

/// Uniform doubles in [0, 1) from a 64-bit Mersenne twister, 53 bits per draw.
/// The engine is seeded with splitmix64(seed) so nearby seeds decorrelate.
class EpsilonStream {
 public:
  explicit EpsilonStream(std::uint64_t seed);
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of trajectory `index` in an ensemble: splitmix64(splitmix64(master) + index).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// Populations at t_k = k dt, k = 0..n_steps. jumps[k] flags a photon in
/// (t_{k-1}, t_k]; jumps[0] is always false.
struct TrajectoryRecord {
  double dt_step = 0.0;
  std::vector<double> times;
  std::vector<double> p_e;
  std::vector<bool> jumps;
  std::uint64_t seed = 0;

  std::size_t jump_count() const;
};

TrajectoryRecord simulate_trajectory(const AtomState& initial, const DriveConfig& cfg, cplx a_bar_dt,
                                     std::uint64_t seed);

/// Same loop with a caller-supplied epsilon source (used to force outcomes).
template <typename Source>
TrajectoryRecord simulate_trajectory_with(const AtomState& initial, const DriveConfig& cfg, cplx a_bar_dt,
                                          Source&& next_epsilon, std::uint64_t seed_label = 0) {
  cfg.validate();
  TrajectoryRecord rec;
  rec.dt_step = cfg.dt_step;
  rec.seed = seed_label;
  rec.times.reserve(cfg.n_steps + 1);
  rec.p_e.reserve(cfg.n_steps + 1);
  rec.jumps.reserve(cfg.n_steps + 1);
  AtomState state = initial;
  rec.times.push_back(0.0);
  rec.p_e.push_back(state.excited_population());
  rec.jumps.push_back(false);
  for (std::size_t k = 1; k <= cfg.n_steps; ++k) {
    const auto out = mc_step(state, cfg, a_bar_dt, next_epsilon());
    state = out.state;
    rec.times.push_back(cfg.dt_step * static_cast<double>(k));
    rec.p_e.push_back(state.excited_population());
    rec.jumps.push_back(out.jump);
  }
  return rec;
}

struct EnsembleResult {
  std::vector<double> times;
  std::vector<double> p_e_mean;
  std::vector<double> p_e_stderr;
  double mean_jumps = 0.0;
  double jumps_stderr = 0.0;
  std::size_t n_traj = 0;
};

/// Trajectories are grouped in fixed blocks of this many indices; sums run in
/// index order within a block and in block order across blocks, so the result
/// does not depend on the thread count.
inline constexpr std::size_t kEnsembleBlock = 64;

EnsembleResult ensemble_average(const AtomState& initial, const DriveConfig& cfg, cplx a_bar_dt,
                                std::size_t n_traj, std::uint64_t master_seed, unsigned threads = 1);

/// Null-result factor over one update interval and the matching rate.
struct NullFactor {
  cplx a_bar{1.0, 0.0};
  double dt = 0.0;
  double gamma_eff = 0.0;
};

/// a_bar(dt) = exp(-gamma dt / 2) from an effective rate gamma(x).
NullFactor scaling_null_factor(cplx gamma_x, double dt);

/// a_bar(dt) = a(tau)^n with a(tau) from the Volterra solve, dt = n tau.
NullFactor memory_null_factor(const MemoryKernel& kernel, double tau, std::int64_t n_per_step);

/// dt = min(0.05 / rate, 0.05 / omega), or `fallback` when both vanish.
double select_time_step(double rate, double omega, double fallback);

/// select_time_step rounded down to a multiple of tau (at least one tau).
std::int64_t measurements_per_step(double dt, double tau);

}  // namespace zenoscope
