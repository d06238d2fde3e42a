#include "zenoscope/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "zenoscope/errors.hpp"
#include "zenoscope/scaling_rates.hpp"
#include "zenoscope/volterra.hpp"

namespace zenoscope {

void DriveConfig::validate() const {
  if (!(dt_step > 0.0)) throw configuration_error("drive: dt_step must be > 0");
  if (!(gamma_eff >= 0.0)) throw configuration_error("drive: gamma_eff must be >= 0");
  if (!(omega >= 0.0)) throw configuration_error("drive: omega must be >= 0");
  if (gamma_eff * dt_step > kMaxStepProbability * (1.0 + 1e-12))
    throw configuration_error("drive: gamma_eff * dt exceeds 0.05 (more than one photon per step)");
  if (omega * dt_step > kMaxStepProbability * (1.0 + 1e-12))
    throw configuration_error("drive: omega * dt exceeds 0.05");
}

AtomState unitary_drive(const AtomState& s, double omega, double dt) {
  const double phi = omega * dt;
  const double c = std::cos(phi);
  const cplx mis(0.0, -std::sin(phi));
  return {c * s.alpha + mis * s.beta, mis * s.alpha + c * s.beta};
}

StepOutcome mc_step(const AtomState& state, const DriveConfig& cfg, cplx a_bar_dt, double epsilon) {
  const double p_jump = state.excited_population() * cfg.gamma_eff * cfg.dt_step;
  if (p_jump >= 1.0) throw configuration_error("mc_step: jump probability >= 1; dt too coarse");
  AtomState measured;
  bool jump = false;
  if (epsilon < p_jump) {
    measured = AtomState::ground();
    jump = true;
  } else {
    const cplx alpha = a_bar_dt * state.alpha;
    const double norm = std::sqrt(std::norm(alpha) + std::norm(state.beta));
    if (norm == 0.0) throw invalid_state_error("mc_step: conditioned state vanishes");
    measured = {alpha / norm, state.beta / norm};
  }
  return {unitary_drive(measured, cfg.omega, cfg.dt_step), jump};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) + index);
}

EpsilonStream::EpsilonStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

std::size_t TrajectoryRecord::jump_count() const {
  return static_cast<std::size_t>(std::count(jumps.begin(), jumps.end(), true));
}

TrajectoryRecord simulate_trajectory(const AtomState& initial, const DriveConfig& cfg, cplx a_bar_dt,
                                     std::uint64_t seed) {
  EpsilonStream eps(seed);
  return simulate_trajectory_with(initial, cfg, a_bar_dt, eps, seed);
}

namespace {

struct BlockSums {
  std::vector<double> p;
  std::vector<double> p2;
  double jumps = 0.0;
  double jumps2 = 0.0;
};

}  // namespace

EnsembleResult ensemble_average(const AtomState& initial, const DriveConfig& cfg, cplx a_bar_dt,
                                std::size_t n_traj, std::uint64_t master_seed, unsigned threads) {
  if (n_traj < 1) throw configuration_error("ensemble_average: need at least one trajectory");
  cfg.validate();
  const std::size_t points = cfg.n_steps + 1;
  const std::size_t n_blocks = (n_traj + kEnsembleBlock - 1) / kEnsembleBlock;
  std::vector<BlockSums> blocks(n_blocks);

  auto run_block = [&](std::size_t b) {
    BlockSums sums{std::vector<double>(points, 0.0), std::vector<double>(points, 0.0), 0.0, 0.0};
    const std::size_t end = std::min(n_traj, (b + 1) * kEnsembleBlock);
    for (std::size_t i = b * kEnsembleBlock; i < end; ++i) {
      const auto rec = simulate_trajectory(initial, cfg, a_bar_dt, derive_seed(master_seed, i));
      for (std::size_t k = 0; k < points; ++k) {
        sums.p[k] += rec.p_e[k];
        sums.p2[k] += rec.p_e[k] * rec.p_e[k];
      }
      const auto jumps = static_cast<double>(rec.jump_count());
      sums.jumps += jumps;
      sums.jumps2 += jumps * jumps;
    }
    blocks[b] = std::move(sums);
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_blocks)));
  if (threads == 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t b = next++; b < n_blocks; b = next++) run_block(b);
      });
    }
  }

  std::vector<double> s1(points, 0.0), s2(points, 0.0);
  double j1 = 0.0, j2 = 0.0;
  for (const auto& blk : blocks) {
    for (std::size_t k = 0; k < points; ++k) {
      s1[k] += blk.p[k];
      s2[k] += blk.p2[k];
    }
    j1 += blk.jumps;
    j2 += blk.jumps2;
  }

  const auto n = static_cast<double>(n_traj);
  EnsembleResult res;
  res.n_traj = n_traj;
  res.times.resize(points);
  res.p_e_mean.resize(points);
  res.p_e_stderr.resize(points);
  auto stderr_of = [n](double sum, double sum2) {
    if (n < 2.0) return 0.0;
    const double mean = sum / n;
    const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0));
    return std::sqrt(var / n);
  };
  for (std::size_t k = 0; k < points; ++k) {
    res.times[k] = cfg.dt_step * static_cast<double>(k);
    res.p_e_mean[k] = s1[k] / n;
    res.p_e_stderr[k] = stderr_of(s1[k], s2[k]);
  }
  res.mean_jumps = j1 / n;
  res.jumps_stderr = stderr_of(j1, j2);
  return res;
}

NullFactor scaling_null_factor(cplx gamma_x, double dt) {
  if (!(dt > 0.0)) throw domain_error("scaling_null_factor: dt must be > 0");
  const cplx a_bar = std::exp(-0.5 * gamma_x * dt);
  return {a_bar, dt, gamma_eff(a_bar, dt)};
}

NullFactor memory_null_factor(const MemoryKernel& kernel, double tau, std::int64_t n_per_step) {
  if (n_per_step < 1) throw domain_error("memory_null_factor: need at least one measurement per step");
  const cplx a_tau = decay_at(kernel, tau);
  const double dt = tau * static_cast<double>(n_per_step);
  const cplx a_bar = null_conditioned_power(a_tau, n_per_step);
  return {a_bar, dt, gamma_eff(a_bar, dt)};
}

double select_time_step(double rate, double omega, double fallback) {
  double dt = std::numeric_limits<double>::infinity();
  if (rate > 0.0) dt = std::min(dt, kMaxStepProbability / rate);
  if (omega > 0.0) dt = std::min(dt, kMaxStepProbability / omega);
  return std::isfinite(dt) ? dt : fallback;
}

std::int64_t measurements_per_step(double dt, double tau) {
  if (!(tau > 0.0) || !(dt > 0.0)) throw domain_error("measurements_per_step: dt and tau must be > 0");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(dt / tau + 1e-9)));
}

}  // namespace zenoscope
