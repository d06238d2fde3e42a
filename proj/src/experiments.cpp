#include "zenoscope/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "zenoscope/csv.hpp"
#include "zenoscope/errors.hpp"
#include "zenoscope/lindblad.hpp"
#include "zenoscope/scaling_rates.hpp"

namespace zenoscope {

cplx effective_rate(const MemoryKernel& kernel, double x) {
  if (auto closed = gamma_closed_form(kernel.density(), x)) return *closed;
  return gamma_numeric(kernel, x);
}

double null_population(const NullConditionedCurve& curve, double t) {
  const double modulus = std::abs(curve.a_tau);
  if (modulus == 0.0) return t == 0.0 ? 1.0 : 0.0;
  return std::exp(2.0 * (t / curve.tau) * std::log(modulus));
}

double null_curve_deviation(const NullConditionedCurve& a, const NullConditionedCurve& b) {
  double dev = 0.0;
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    dev = std::max(dev, std::abs(a.p_e[k] - null_population(b, a.times[k])));
  }
  return dev;
}

double null_curve_vs_rate(const NullConditionedCurve& curve, cplx rate) {
  double dev = 0.0;
  for (std::size_t k = 0; k < curve.times.size(); ++k) {
    dev = std::max(dev, std::abs(curve.p_e[k] - std::exp(-rate.real() * curve.times[k])));
  }
  return dev;
}

double max_relative_deviation(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    const double scale = std::abs(b[i]);
    dev = std::max(dev, scale > 0.0 ? std::abs(a[i] - b[i]) / scale : std::abs(a[i]));
  }
  return dev;
}

namespace {

std::string output_path(const RunConfig& c) {
  return c.out.empty() ? std::string(to_string(c.experiment)) + ".csv" : c.out;
}

std::string sidecar_path(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  const auto stem = p.stem().string();
  return (p.parent_path() / (stem + "_" + suffix + p.extension().string())).string();
}

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}


ExperimentResult check_result(std::string name, double value, double tol, std::vector<std::string> files) {
  ExperimentResult r;
  r.is_check = true;
  r.passed = value < tol;
  r.summary = name + " = " + sci(value) + " (tol " + sci(tol) + ") " + (r.passed ? "PASS" : "FAIL");
  r.files = std::move(files);
  return r;
}

ExperimentResult run_decay(const RunConfig& c) {
  const auto kernel = make_kernel(c);
  const auto series = c.dt ? solve_decay(kernel, c.t_max, *c.dt, c.scheme) : solve_decay(kernel, c.t_max, c.scheme);
  const auto path = output_path(c);
  auto out = csv::open_output(path);
  csv::write_decay(out, series);
  if (c.shape != Shape::Lorentzian) {
    ExperimentResult r;
    r.summary = "decay: " + std::to_string(series.size()) + " points, |a(t_max)|^2 = " +
                sci(std::norm(series.values.back()));
    r.files = {path};
    return r;
  }
  double dev = 0.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto exact = analytic_lorentzian_a(series.time(k), c.gamma, c.lambda, c.c * c.lambda);
    dev = std::max(dev, std::abs(std::norm(series.values[k]) - std::norm(exact)));
  }
  return check_result("max_dev(|a|^2)", dev, 1e-3, {path});
}

ExperimentResult run_null_decay(const RunConfig& c) {
  const auto kernel = make_kernel(c);
  const double tau = resolve_tau(c);
  const auto curve = null_conditioned_decay(kernel, tau, c.t_max, kMinStepsPerTau, c.scheme);
  const cplx rate = effective_rate(kernel, c.lambda * tau);
  const auto path = output_path(c);
  auto out = csv::open_output(path);
  out.precision(17);
  out << "t,p_e,p_e_scaling\n";
  for (std::size_t k = 0; k < curve.times.size(); ++k) {
    out << curve.times[k] << ',' << curve.p_e[k] << ',' << std::exp(-rate.real() * curve.times[k]) << '\n';
  }
  ExperimentResult r;
  r.summary = "x = " + sci(c.lambda * tau) + ", Re gamma(x) = " + sci(rate.real()) +
              ", max_dev vs scaling form = " + sci(null_curve_vs_rate(curve, rate));
  r.files = {path};
  return r;
}

std::vector<double> rate_grid(const RunConfig& c) {
  if (!(c.x_min > 0.0) || !(c.x_max >= c.x_min) || c.x_points < 1)
    throw config_error(0, "rate grid needs 0 < x_min <= x_max and x_points >= 1");
  return linear_grid(c.x_min, c.x_max, c.x_points);
}

ExperimentResult run_gamma_curve(const RunConfig& c) {
  const auto kernel = make_kernel(c);
  const auto grid = rate_grid(c);
  const auto dbl = rate_curve(kernel, grid, RateSource::DoubleIntegral, 1);
  const auto kk = rate_curve(kernel, grid, RateSource::KkIntegral, 1);
  const bool has_closed = gamma_closed_form(kernel.density(), 1.0).has_value();
  const auto path = output_path(c);
  auto out = csv::open_output(path);
  csv::write_rate_header(out);
  std::optional<RateCurve> closed;
  if (has_closed) {
    closed = rate_curve(kernel, grid, RateSource::ClosedForm);
    csv::write_rate_rows(out, *closed);
  }
  csv::write_rate_rows(out, dbl);
  csv::write_rate_rows(out, kk);
  if (!closed) {
    ExperimentResult r;
    r.summary = "gamma_curve: no closed form for this model; max_rel_dev(double, kk) = " +
                sci(max_relative_deviation(dbl.values, kk.values));
    r.files = {path};
    return r;
  }
  return check_result("max_rel_dev(closed_form, double_integral)", max_relative_deviation(dbl.values, closed->values),
                      1e-6, {path});
}

ExperimentResult run_kk_check(const RunConfig& c) {
  const auto kernel = make_kernel(c);
  const auto grid = rate_grid(c);
  const auto dbl = rate_curve(kernel, grid, RateSource::DoubleIntegral, 1);
  const auto kk = rate_curve(kernel, grid, RateSource::KkIntegral, 1);
  const auto path = output_path(c);
  auto out = csv::open_output(path);
  csv::write_rate_header(out);
  csv::write_rate_rows(out, dbl);
  csv::write_rate_rows(out, kk);
  return check_result("max_rel_dev(double_integral, kk_integral)", max_relative_deviation(kk.values, dbl.values), 1e-8,
                      {path});
}

ExperimentResult run_scaling_check(const RunConfig& c) {
  if (c.lambdas.size() < 2) throw config_error(0, "scaling_check needs at least two entries in 'lambdas'");
  const double x = resolve_x(c);
  const auto base = make_density(c);
  std::vector<NullConditionedCurve> curves;
  for (double lam : c.lambdas) {
    const auto kernel = make_kernel(c, base.with_lambda(lam));
    curves.push_back(null_conditioned_decay(kernel, x / lam, c.t_max, kMinStepsPerTau, c.scheme));
  }
  // Compare every curve on the grid of the coarsest one.
  const auto coarsest = std::max_element(curves.begin(), curves.end(),
                                         [](const auto& a, const auto& b) { return a.tau < b.tau; });
  double dev = 0.0;
  for (const auto& curve : curves) dev = std::max(dev, null_curve_deviation(*coarsest, curve));
  const auto path = output_path(c);
  auto out = csv::open_output(path);
  out.precision(17);
  out << "t,lambda,p_e\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t k = 0; k < curves[i].times.size(); ++k) {
      out << curves[i].times[k] << ',' << c.lambdas[i] << ',' << curves[i].p_e[k] << '\n';
    }
  }
  return check_result("max_dev", dev, 0.02, {path});
}

ExperimentResult run_trajectory(const RunConfig& c) {
  const auto setup = make_trajectory_setup(c);
  const auto rec = simulate_trajectory(setup.initial, setup.drive, setup.null_factor.a_bar, c.seed);
  const auto path = output_path(c);
  auto out = csv::open_output(path);
  csv::write_trajectory(out, rec);
  ExperimentResult r;
  r.summary = std::to_string(rec.jump_count()) + " jumps in " + std::to_string(setup.drive.n_steps) +
              " steps, gamma_eff = " + sci(setup.drive.gamma_eff) + ", dt = " + sci(setup.drive.dt_step);
  r.files = {path};
  return r;
}

ExperimentResult run_ensemble(const RunConfig& c) {
  const auto setup = make_trajectory_setup(c);
  const auto ens =
      ensemble_average(setup.initial, setup.drive, setup.null_factor.a_bar, c.n_traj, c.seed, c.threads);
  const auto master = solve_master(DensityMatrix2::from_state(setup.initial), setup.drive.omega,
                                   setup.drive.gamma_eff, setup.drive.dt_step * setup.drive.n_steps,
                                   setup.drive.dt_step);
  const auto reference = master.p_e();
  double dev = 0.0;
  for (std::size_t k = 0; k < ens.p_e_mean.size() && k < reference.size(); ++k) {
    dev = std::max(dev, std::abs(ens.p_e_mean[k] - reference[k]));
  }
  const auto path = output_path(c);
  const auto ref_path = sidecar_path(path, "lindblad");
  {
    auto out = csv::open_output(path);
    csv::write_ensemble(out, ens);
    auto ref = csv::open_output(ref_path);
    csv::write_populations(ref, master.times, reference);
  }
  auto r = check_result("max_dev(ensemble, lindblad)", dev, 0.03, {path, ref_path});
  r.summary += ", mean jumps = " + sci(ens.mean_jumps) + " +- " + sci(ens.jumps_stderr);
  return r;
}

}  // namespace

TrajectorySetup make_trajectory_setup(const RunConfig& c) {
  const auto kernel = make_kernel(c);
  const double x = resolve_x(c);
  const double tau = resolve_tau(c);
  const cplx rate = effective_rate(kernel, x);
  if (!(c.t_max > 0.0)) throw config_error(0, "t_max must be > 0");
  double dt = c.delta_t.value_or(select_time_step(rate.real(), c.omega, 0.05 / c.gamma));
  NullFactor factor;
  if (c.null_factor == NullFactorMode::Memory) {
    const auto n = measurements_per_step(dt, tau);
    factor = memory_null_factor(kernel, tau, n);
  } else {
    factor = scaling_null_factor(rate, dt);
  }
  TrajectorySetup setup;
  setup.null_factor = factor;
  setup.drive.omega = c.omega;
  setup.drive.gamma_eff = factor.gamma_eff;
  setup.drive.dt_step = factor.dt;
  setup.drive.n_steps = static_cast<std::size_t>(std::ceil(c.t_max / factor.dt - 1e-9));
  switch (c.initial) {
    case InitialState::Excited: setup.initial = AtomState::excited(); break;
    case InitialState::Ground: setup.initial = AtomState::ground(); break;
    case InitialState::Superposition: setup.initial = {{1.0 / std::numbers::sqrt2, 0.0}, {1.0 / std::numbers::sqrt2, 0.0}}; break;
  }
  setup.drive.validate();
  return setup;
}

ExperimentResult run_experiment(const RunConfig& c) {
  switch (c.experiment) {
    case Experiment::Decay: return run_decay(c);
    case Experiment::NullDecay: return run_null_decay(c);
    case Experiment::GammaCurve: return run_gamma_curve(c);
    case Experiment::ScalingCheck: return run_scaling_check(c);
    case Experiment::Trajectory: return run_trajectory(c);
    case Experiment::Ensemble: return run_ensemble(c);
    case Experiment::KkCheck: return run_kk_check(c);
  }
  throw config_error(0, "unknown experiment");
}

}  // namespace zenoscope
