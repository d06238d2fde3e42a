#include "zenoscope/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "zenoscope/errors.hpp"

namespace zenoscope {

namespace {

constexpr cplx kI{0.0, 1.0};

std::size_t step_count(double t_max, double dt) {
  return static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
}

// sinh(z) / z, with its Taylor series near zero.
cplx sinhc(cplx z) {
  if (std::abs(z) < 1e-3) {
    const cplx z2 = z * z;
    return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0);
  }
  return std::sinh(z) / z;
}

}  // namespace

double default_time_step(const SpectralDensity& density) {
  double dt = 0.02 / density.lambda;
  if (density.gamma > 0.0) dt = std::min(dt, 0.002 / density.gamma);
  return dt;
}

DecaySeries solve_decay(const MemoryKernel& kernel, double t_max, double dt, VolterraScheme scheme) {
  if (!(dt > 0.0)) throw domain_error("solve_decay: dt must be > 0");
  if (!(t_max > 0.0)) throw domain_error("solve_decay: t_max must be > 0");
  if (dt > t_max) throw domain_error("solve_decay: dt must not exceed t_max");
  if (dt * kernel.density().lambda > kMaxStepTimesLambda)
    throw step_size_error("solve_decay: dt * lambda exceeds 0.5; the kernel is not resolved");

  const std::size_t n = step_count(t_max, dt);
  std::vector<cplx> f(n + 1);
  for (std::size_t j = 0; j <= n; ++j) f[j] = kernel.value(dt * static_cast<double>(j));

  std::vector<cplx> a(n + 1);
  a[0] = 1.0;
  const double dt2 = dt * dt;

  if (scheme == VolterraScheme::Paper) {
    for (std::size_t k = 1; k <= n; ++k) {
      cplx conv = 0.0;
      for (std::size_t j = 1; j <= k; ++j) conv += f[j] * a[k - j];
      a[k] = a[k - 1] - kI * dt2 * conv;
    }
  } else {
    // rhs[k] = -i I(t_k), I the convolution integral at t_k.
    std::vector<cplx> rhs(n + 1);
    rhs[0] = 0.0;
    const cplx denom = 1.0 + 0.25 * kI * dt2 * f[0];
    for (std::size_t k = 1; k <= n; ++k) {
      cplx partial = 0.5 * f[k] * a[0];
      for (std::size_t j = 1; j < k; ++j) partial += f[j] * a[k - j];
      a[k] = (a[k - 1] + 0.5 * dt * rhs[k - 1] - 0.5 * kI * dt2 * partial) / denom;
      rhs[k] = -kI * dt * (0.5 * f[0] * a[k] + partial);
    }
  }
  return DecaySeries{dt, std::move(a), kernel};
}

DecaySeries solve_decay(const MemoryKernel& kernel, double t_max, VolterraScheme scheme) {
  return solve_decay(kernel, t_max, std::min(default_time_step(kernel.density()), t_max), scheme);
}

cplx analytic_lorentzian_a(double t, double gamma, double lambda, double energy) {
  if (!(t >= 0.0)) throw domain_error("analytic_lorentzian_a: t must be >= 0");
  const cplx base(lambda, -energy);
  const cplx root = std::sqrt(base * base - 2.0 * gamma * lambda);
  const cplx mean = 0.5 * base;
  if (std::abs(root) < 1e-12 * lambda) return (1.0 + mean * t) * std::exp(-mean * t);
  const cplx half = 0.5 * root;
  const cplx z = half * t;
  if (std::abs(z) <= 1.0) return std::exp(-mean * t) * (std::cosh(z) + mean * t * sinhc(z));
  // Large |d t|: expand cosh/sinh into the two root exponentials.
  const cplx ratio = mean / half;
  return 0.5 * ((1.0 + ratio) * std::exp(-(mean - half) * t) + (1.0 - ratio) * std::exp(-(mean + half) * t));
}

cplx null_conditioned_power(cplx a_tau, std::int64_t n) {
  if (n < 0) throw domain_error("null_conditioned_power: n must be >= 0");
  const double modulus = std::abs(a_tau);
  if (modulus > 1.0 + kNormTolerance) throw domain_error("null_conditioned_power: |a_tau| exceeds 1");
  if (n == 0) return 1.0;
  if (modulus == 0.0) return 0.0;
  const double nd = static_cast<double>(n);
  return std::polar(std::exp(nd * std::log(modulus)), std::remainder(nd * std::arg(a_tau), 2.0 * std::numbers::pi));
}

AtomState conditioned_state(cplx alpha0, cplx beta0, cplx a_bar) {
  const double norm0 = std::norm(alpha0) + std::norm(beta0);
  if (norm0 == 0.0) throw invalid_state_error("conditioned_state: zero state");
  if (std::abs(norm0 - 1.0) > kNormTolerance) throw invalid_state_error("conditioned_state: state not normalized");
  const cplx alpha = a_bar * alpha0;
  const double norm = std::sqrt(std::norm(alpha) + std::norm(beta0));
  if (norm == 0.0) throw invalid_state_error("conditioned_state: conditioned state vanishes");
  return {alpha / norm, beta0 / norm};
}

namespace {

double tau_step(const MemoryKernel& kernel, double tau, int min_steps_per_tau) {
  if (!(tau > 0.0)) throw domain_error("null-conditioned decay: tau must be > 0");
  if (min_steps_per_tau < 1) throw domain_error("null-conditioned decay: need at least one step per tau");
  const double policy = default_time_step(kernel.density());
  const double steps = std::max<double>(min_steps_per_tau, std::ceil(tau / policy));
  return tau / steps;
}

}  // namespace

cplx decay_at(const MemoryKernel& kernel, double tau, int min_steps_per_tau, VolterraScheme scheme) {
  const double dt = tau_step(kernel, tau, min_steps_per_tau);
  return solve_decay(kernel, tau, dt, scheme).values.back();
}

NullConditionedCurve null_conditioned_decay(const MemoryKernel& kernel, double tau, double t_max,
                                            int min_steps_per_tau, VolterraScheme scheme) {
  if (!(t_max > 0.0)) throw domain_error("null-conditioned decay: t_max must be > 0");
  NullConditionedCurve curve;
  curve.tau = tau;
  curve.a_tau = decay_at(kernel, tau, min_steps_per_tau, scheme);
  const auto n_max = static_cast<std::int64_t>(std::floor(t_max / tau + 1e-9));
  curve.times.reserve(static_cast<std::size_t>(n_max) + 1);
  curve.p_e.reserve(static_cast<std::size_t>(n_max) + 1);
  for (std::int64_t n = 0; n <= n_max; ++n) {
    curve.times.push_back(tau * static_cast<double>(n));
    curve.p_e.push_back(std::norm(null_conditioned_power(curve.a_tau, n)));
  }
  return curve;
}

}  // namespace zenoscope
