#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zenoscope/config.hpp"
#include "zenoscope/errors.hpp"
#include "zenoscope/experiments.hpp"
#include "zenoscope/lindblad.hpp"
#include "zenoscope/memory_kernel.hpp"
#include "zenoscope/scaling_rates.hpp"
#include "zenoscope/spectral_density.hpp"
#include "zenoscope/trajectory.hpp"
#include "zenoscope/verify.hpp"
#include "zenoscope/volterra.hpp"

namespace py = pybind11;
using namespace zenoscope;

namespace {

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
  py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<bool> to_array(const std::vector<bool>& v) {
  py::array_t<bool> out(static_cast<py::ssize_t>(v.size()));
  auto* p = out.mutable_data();
  for (std::size_t i = 0; i < v.size(); ++i) p[i] = v[i];
  return out;
}

// Applies f elementwise over a float array, returning a complex array.
template <typename F>
py::array_t<cplx> map_complex(py::array_t<double, py::array::c_style | py::array::forcecast> xs, F&& f) {
  py::array_t<cplx> out(xs.request().shape);
  const double* in = xs.data();
  cplx* o = out.mutable_data();
  for (py::ssize_t i = 0; i < xs.size(); ++i) o[i] = f(in[i]);
  return out;
}

std::vector<double> times_of(const DecaySeries& s) {
  std::vector<double> t(s.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = s.time(k);
  return t;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spontaneous emission of a two-level atom under frequent photon detection";

  py::register_exception<step_size_error>(m, "StepSizeError", PyExc_ValueError);
  py::register_exception<configuration_error>(m, "ConfigurationError", PyExc_ValueError);
  py::register_exception<invalid_model_error>(m, "InvalidModelError", PyExc_ValueError);
  py::register_exception<invalid_state_error>(m, "InvalidStateError", PyExc_ValueError);
  py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);

  py::enum_<Shape>(m, "Shape")
      .value("LORENTZIAN", Shape::Lorentzian)
      .value("GAUSSIAN", Shape::Gaussian)
      .value("RECTANGULAR", Shape::Rectangular)
      .value("DOUBLE_LORENTZIAN", Shape::DoubleLorentzian)
      .value("TABULATED", Shape::Tabulated);
  py::enum_<KernelMode>(m, "KernelMode").value("ANALYTIC", KernelMode::Analytic).value("QUADRATURE", KernelMode::Quadrature);
  py::enum_<VolterraScheme>(m, "VolterraScheme")
      .value("TRAPEZOID", VolterraScheme::Trapezoid)
      .value("PAPER", VolterraScheme::Paper);
  py::enum_<RateSource>(m, "RateSource")
      .value("CLOSED_FORM", RateSource::ClosedForm)
      .value("DOUBLE_INTEGRAL", RateSource::DoubleIntegral)
      .value("KK_INTEGRAL", RateSource::KkIntegral);

  py::class_<TabulatedProfile>(m, "TabulatedProfile")
      .def(py::init([](std::vector<double> w, std::vector<double> d) { return TabulatedProfile{std::move(w), std::move(d)}; }),
           py::arg("omega_tilde"), py::arg("d_tilde"))
      .def_readonly("omega_tilde", &TabulatedProfile::omega_tilde)
      .def_readonly("d_tilde", &TabulatedProfile::d_tilde)
      .def("__call__", &TabulatedProfile::operator());
  m.def("load_tabulated_profile", [](const std::string& p) { return load_tabulated_profile(p); }, py::arg("path"));

  py::class_<SpectralDensity>(m, "SpectralDensity")
      .def_static("lorentzian", &SpectralDensity::lorentzian, py::arg("gamma"), py::arg("lam"), py::arg("c") = 0.0)
      .def_static("gaussian", &SpectralDensity::gaussian, py::arg("gamma"), py::arg("lam"), py::arg("c") = 0.0)
      .def_static("rectangular", &SpectralDensity::rectangular, py::arg("gamma"), py::arg("lam"), py::arg("c") = 0.0)
      .def_static("double_lorentzian", &SpectralDensity::double_lorentzian, py::arg("gamma"), py::arg("lam"),
                  py::arg("c") = 0.0, py::arg("b") = 1.0)
      .def_static("tabulated", &SpectralDensity::tabulated, py::arg("profile"), py::arg("gamma"), py::arg("lam"),
                  py::arg("c") = 0.0)
      .def_readonly("shape", &SpectralDensity::shape)
      .def_readonly("gamma", &SpectralDensity::gamma)
      .def_readonly("lam", &SpectralDensity::lambda)
      .def_readonly("c", &SpectralDensity::c)
      .def_readonly("b", &SpectralDensity::b)
      .def("with_lambda", &SpectralDensity::with_lambda, py::arg("lam"))
      .def("__call__", [](const SpectralDensity& d, py::array_t<double, py::array::c_style | py::array::forcecast> w) {
        py::array_t<double> out(w.request().shape);
        for (py::ssize_t i = 0; i < w.size(); ++i) out.mutable_data()[i] = sdf_value(d, w.data()[i]);
        return out;
      });

  py::class_<MemoryKernel>(m, "MemoryKernel")
      .def(py::init<SpectralDensity, KernelMode>(), py::arg("density"), py::arg("mode") = KernelMode::Analytic)
      .def_property_readonly("density", &MemoryKernel::density)
      .def("value", [](const MemoryKernel& k, py::array_t<double, py::array::c_style | py::array::forcecast> u) {
        return map_complex(u, [&](double x) { return k.value(x); });
      }, py::arg("u"), "F~(u) elementwise")
      .def("scaled", [](const MemoryKernel& k, py::array_t<double, py::array::c_style | py::array::forcecast> x) {
        return map_complex(x, [&](double v) { return k.scaled(v); });
      }, py::arg("x"), "g(x) = F~(x / lambda) / lambda elementwise");

  m.def("default_time_step", &default_time_step, py::arg("density"));
  m.def("solve_decay", [](const MemoryKernel& k, double t_max, std::optional<double> dt, VolterraScheme scheme) {
        const auto s = dt ? solve_decay(k, t_max, *dt, scheme) : solve_decay(k, t_max, scheme);
        return py::make_tuple(to_array(times_of(s)), to_array(s.values));
      }, py::arg("kernel"), py::arg("t_max"), py::arg("dt") = py::none(), py::arg("scheme") = VolterraScheme::Trapezoid,
      "(t, a) on a uniform grid");
  m.def("analytic_lorentzian_a", &analytic_lorentzian_a, py::arg("t"), py::arg("gamma"), py::arg("lam"),
        py::arg("energy") = 0.0);
  m.def("null_conditioned_decay", [](const MemoryKernel& k, double tau, double t_max, int min_steps) {
        const auto c = null_conditioned_decay(k, tau, t_max, min_steps);
        return py::make_tuple(to_array(c.times), to_array(c.p_e), c.a_tau);
      }, py::arg("kernel"), py::arg("tau"), py::arg("t_max"), py::arg("min_steps_per_tau") = kMinStepsPerTau,
      "(t, p_e, a_tau) at t = n tau");

  m.def("gamma_numeric", &gamma_numeric, py::arg("kernel"), py::arg("x"));
  m.def("kk_rate", &kk_rate, py::arg("kernel"), py::arg("x"));
  m.def("gamma_closed_form", &gamma_closed_form, py::arg("density"), py::arg("x"));
  m.def("gamma_eff", &gamma_eff, py::arg("a_bar"), py::arg("dt"));
  m.def("rate_curve", [](const MemoryKernel& k, std::vector<double> xs, RateSource src, unsigned threads) {
        return to_array(rate_curve(k, xs, src, threads).values);
      }, py::arg("kernel"), py::arg("x"), py::arg("source") = RateSource::DoubleIntegral, py::arg("threads") = 1);

  py::class_<AtomState>(m, "AtomState")
      .def(py::init<cplx, cplx>(), py::arg("alpha") = cplx{1.0, 0.0}, py::arg("beta") = cplx{0.0, 0.0})
      .def_readwrite("alpha", &AtomState::alpha)
      .def_readwrite("beta", &AtomState::beta)
      .def_property_readonly("excited_population", &AtomState::excited_population)
      .def("__repr__", [](const AtomState& s) {
        return "AtomState(" + py::repr(py::cast(s.alpha)).cast<std::string>() + ", " +
               py::repr(py::cast(s.beta)).cast<std::string>() + ")";
      });

  py::class_<DriveConfig>(m, "DriveConfig")
      .def(py::init([](double omega, double gamma_eff, double dt, std::size_t n) { return DriveConfig{omega, gamma_eff, dt, n}; }),
           py::arg("omega"), py::arg("gamma_eff"), py::arg("dt"), py::arg("n_steps"))
      .def_readwrite("omega", &DriveConfig::omega)
      .def_readwrite("gamma_eff", &DriveConfig::gamma_eff)
      .def_readwrite("dt", &DriveConfig::dt_step)
      .def_readwrite("n_steps", &DriveConfig::n_steps);

  py::class_<NullFactor>(m, "NullFactor")
      .def_readonly("a_bar", &NullFactor::a_bar)
      .def_readonly("dt", &NullFactor::dt)
      .def_readonly("gamma_eff", &NullFactor::gamma_eff);
  m.def("scaling_null_factor", &scaling_null_factor, py::arg("gamma_x"), py::arg("dt"));
  m.def("memory_null_factor", &memory_null_factor, py::arg("kernel"), py::arg("tau"), py::arg("n_per_step"));

  m.def("simulate_trajectory", [](const AtomState& s, const DriveConfig& cfg, cplx a_bar, std::uint64_t seed) {
        const auto r = simulate_trajectory(s, cfg, a_bar, seed);
        return py::make_tuple(to_array(r.times), to_array(r.p_e), to_array(r.jumps));
      }, py::arg("initial"), py::arg("drive"), py::arg("a_bar"), py::arg("seed"), "(t, p_e, jump) per step");
  m.def("ensemble_average", [](const AtomState& s, const DriveConfig& cfg, cplx a_bar, std::size_t n, std::uint64_t seed,
                               unsigned threads) {
        EnsembleResult r;
        {
          py::gil_scoped_release release;
          r = ensemble_average(s, cfg, a_bar, n, seed, threads);
        }
        py::dict d;
        d["t"] = to_array(r.times);
        d["p_e_mean"] = to_array(r.p_e_mean);
        d["p_e_stderr"] = to_array(r.p_e_stderr);
        d["mean_jumps"] = r.mean_jumps;
        d["jumps_stderr"] = r.jumps_stderr;
        return d;
      }, py::arg("initial"), py::arg("drive"), py::arg("a_bar"), py::arg("n_traj"), py::arg("seed"), py::arg("threads") = 1);

  m.def("solve_master", [](const AtomState& s, double omega, double gamma_eff, double t_max, double dt) {
        const auto sol = solve_master(DensityMatrix2::from_state(s), omega, gamma_eff, t_max, dt);
        return py::make_tuple(to_array(sol.times), to_array(sol.p_e()));
      }, py::arg("initial"), py::arg("omega"), py::arg("gamma_eff"), py::arg("t_max"), py::arg("dt"),
      "(t, p_e) of the master equation from a pure initial state");

  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("dump_config", &dump_config, py::arg("config"));
  py::class_<RunConfig>(m, "RunConfig")
      .def("set", [](RunConfig& c, const std::string& k, const std::string& v) { set_config_value(c, k, v); })
      .def("__str__", &dump_config);
  m.def("run_experiment", [](const RunConfig& c) {
        ExperimentResult r;
        {
          py::gil_scoped_release release;
          r = run_experiment(c);
        }
        py::dict d;
        d["is_check"] = r.is_check;
        d["passed"] = r.passed;
        d["summary"] = r.summary;
        d["files"] = r.files;
        return d;
      }, py::arg("config"));

  m.def("verify", [](const std::string& suite, std::uint64_t seed, unsigned threads) {
        std::vector<verify::Criterion> res;
        {
          py::gil_scoped_release release;
          res = verify::run_suite(suite, {seed, threads});
        }
        py::list out;
        for (const auto& c : res) {
          py::dict d;
          d["id"] = c.id;
          d["value"] = c.value;
          d["tolerance"] = c.tolerance;
          d["seconds"] = c.seconds;
          d["passed"] = c.passed();
          d["line"] = c.line();
          out.append(d);
        }
        return out;
      }, py::arg("suite"), py::arg("seed") = verify::Options{}.seed, py::arg("threads") = 1);
}
