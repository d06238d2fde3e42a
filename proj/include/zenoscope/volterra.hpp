#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "zenoscope/atom_state.hpp"
#include "zenoscope/memory_kernel.hpp"

namespace zenoscope {

/// Discretizations of da/dt = -i int_0^t F~(u) a(t-u) du on a uniform grid.
///
/// `Paper` is the explicit rectangle rule
///   a_N = a_{N-1} - i dt^2 sum_{j=1..N} F~(j dt) a_{N-j}     (first order).
/// `Trapezoid` integrates the outer derivative with the trapezoid rule and the
/// inner convolution with half-weight end points; the F~(0) a_N term makes each
/// step a scalar implicit solve (second order).
enum class VolterraScheme { Trapezoid, Paper };

/// Decay factor a(k dt), k = 0..N, with a(0) = 1.
struct DecaySeries {
  double dt = 0.0;
  std::vector<cplx> values;
  MemoryKernel kernel;

  double time(std::size_t k) const { return dt * static_cast<double>(k); }
  std::size_t size() const { return values.size(); }
};

/// Step policy min(0.02 / lambda, 0.002 / gamma).
double default_time_step(const SpectralDensity& density);

/// Largest accepted dt * lambda.
inline constexpr double kMaxStepTimesLambda = 0.5;

DecaySeries solve_decay(const MemoryKernel& kernel, double t_max, double dt,
                        VolterraScheme scheme = VolterraScheme::Trapezoid);
/// Same, with dt from default_time_step.
DecaySeries solve_decay(const MemoryKernel& kernel, double t_max,
                        VolterraScheme scheme = VolterraScheme::Trapezoid);

/// Closed-form decay factor for a Lorentzian spectrum,
///   a(t) = (A+ exp(-A- t) - A- exp(-A+ t)) / (A+ - A-),
///   A+- = [lambda - iE +- sqrt((lambda - iE)^2 - 2 gamma lambda)] / 2,
/// evaluated in the equivalent form exp(-A t) [cosh(d t) + A sinh(d t) / d]
/// (A the mean root, d the half split) so that near-degenerate roots stay accurate.
cplx analytic_lorentzian_a(double t, double gamma, double lambda, double energy);

/// [a_tau]^n through n log|a_tau| and n arg(a_tau).
cplx null_conditioned_power(cplx a_tau, std::int64_t n);

/// State after n null results: (a_bar alpha0, beta0) normalized.
AtomState conditioned_state(cplx alpha0, cplx beta0, cplx a_bar);

/// Excited population conditioned on successive null results at interval tau,
/// P_e(n tau) = |a(tau)|^(2n), with a(tau) from the Volterra solve.
struct NullConditionedCurve {
  double tau = 0.0;
  cplx a_tau{1.0, 0.0};
  std::vector<double> times;
  std::vector<double> p_e;
};

/// Default resolution of the (0, tau) solve.
inline constexpr int kMinStepsPerTau = 200;

NullConditionedCurve null_conditioned_decay(const MemoryKernel& kernel, double tau, double t_max,
                                            int min_steps_per_tau = kMinStepsPerTau,
                                            VolterraScheme scheme = VolterraScheme::Trapezoid);

/// a(tau) alone, on the grid null_conditioned_decay uses.
cplx decay_at(const MemoryKernel& kernel, double tau, int min_steps_per_tau = kMinStepsPerTau,
              VolterraScheme scheme = VolterraScheme::Trapezoid);

}  // namespace zenoscope
