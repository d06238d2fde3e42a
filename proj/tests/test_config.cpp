#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "zenoscope/config.hpp"
#include "zenoscope/errors.hpp"
#include "zenoscope/experiments.hpp"

using namespace zenoscope;
namespace fs = std::filesystem;

namespace {

const fs::path kData = ZENOSCOPE_TEST_DATA;

fs::path scratch_dir() {
  static const fs::path dir = [] {
    std::random_device rd;
    auto p = fs::temp_directory_path() / ("zenoscope_test_" + std::to_string(rd()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

std::size_t error_line(std::string_view text) {
  try {
    parse_config(text);
  } catch (const config_error& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("minimal config uses defaults") {
  const auto c = parse_config("experiment = gamma_curve\n");
  CHECK(c.experiment == Experiment::GammaCurve);
  CHECK(c.shape == Shape::Lorentzian);
  CHECK(c.lambda == 100.0);
  CHECK(c.n_traj == 5000);
  CHECK(c.initial == InitialState::Excited);
  CHECK_FALSE(c.dt.has_value());
}

TEST_CASE("values, comments and whitespace") {
  const auto c = parse_config(
      "# header\n"
      "experiment = ensemble   # trailing\n"
      "\n"
      "  shape=double_lorentzian\n"
      "b = 2.5\n"
      "lambdas = 5, 20 ,100\n"
      "seed = 18446744073709551615\n"
      "kernel = quadrature\n"
      "scheme = paper\n"
      "null_factor = memory\n"
      "initial = superposition\n"
      "dt = 1e-3\n");
  CHECK(c.shape == Shape::DoubleLorentzian);
  CHECK(c.b == 2.5);
  CHECK(c.lambdas == std::vector<double>{5.0, 20.0, 100.0});
  CHECK(c.seed == 18446744073709551615ULL);
  CHECK(c.kernel == KernelMode::Quadrature);
  CHECK(c.scheme == VolterraScheme::Paper);
  CHECK(c.null_factor == NullFactorMode::Memory);
  CHECK(c.initial == InitialState::Superposition);
  CHECK(c.dt == 1e-3);
}

TEST_CASE("errors carry the line number") {
  CHECK(error_line("experiment = decay\nlamda = 3\n") == 2);
  CHECK(error_line("experiment = decay\n\nlambda = 3\nlambda = 4\n") == 4);
  CHECK(error_line("experiment = decay\nlambda = fast\n") == 2);
  CHECK(error_line("experiment = decay\nshape = voigt\n") == 2);
  CHECK(error_line("experiment = decay\nn_traj = -5\n") == 2);
  CHECK(error_line("experiment = decay\nno equals sign\n") == 2);
  CHECK(error_line("experiment = decay\nlambdas =\n") == 2);
  CHECK(error_line("experiment = teleport\n") == 1);
  CHECK_THROWS_AS(parse_config("shape = gaussian\n"), config_error);
  try {
    parse_config("experiment = decay\nlamda = 3\n");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("lamda") != std::string::npos);
  }
}

TEST_CASE("dump and parse round-trip") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.001, 50.0);
  for (int i = 0; i < 200; ++i) {
    RunConfig c;
    c.experiment = static_cast<Experiment>(rng() % 7);
    c.shape = static_cast<Shape>(rng() % 4);
    c.gamma = u(rng);
    c.lambda = u(rng);
    c.c = u(rng) - 25.0;
    c.b = u(rng);
    if (rng() % 2) c.dt = u(rng) * 1e-4;
    if (rng() % 2) c.x = u(rng);
    if (rng() % 2) c.tau = u(rng) * 1e-3;
    if (rng() % 2) c.delta_t = u(rng) * 1e-3;
    c.t_max = u(rng);
    c.omega = u(rng);
    c.n_traj = rng() % 100000 + 1;
    c.seed = rng();
    c.lambdas = {u(rng), u(rng)};
    c.x_points = rng() % 1000 + 2;
    c.kernel = rng() % 2 ? KernelMode::Analytic : KernelMode::Quadrature;
    if (rng() % 2) c.quad_half_width = u(rng);
    if (rng() % 2) c.quad_panels = static_cast<int>(2 * (rng() % 5000) + 2);
    c.null_factor = rng() % 2 ? NullFactorMode::Scaling : NullFactorMode::Memory;
    c.initial = static_cast<InitialState>(rng() % 3);
    c.threads = static_cast<unsigned>(rng() % 16 + 1);
    if (rng() % 2) c.out = "results/run_" + std::to_string(i) + ".csv";
    CHECK(parse_config(dump_config(c)) == c);
  }
}

TEST_CASE("command-line overrides") {
  auto c = parse_config("experiment = decay\nlambda = 5\n");
  set_config_value(c, "lambda", "7.5");
  set_config_value(c, "out", "x.csv");
  CHECK(c.lambda == 7.5);
  CHECK(c.out == "x.csv");
  CHECK_THROWS_AS(set_config_value(c, "bogus", "1"), config_error);
}

TEST_CASE("quadrature overrides reach the kernel") {
  const auto plain = make_kernel(parse_config("experiment = decay\nshape = gaussian\nkernel = quadrature\n"));
  CHECK(plain.settings().half_width == default_quadrature(Shape::Gaussian).half_width);
  const auto tuned = make_kernel(
      parse_config("experiment = decay\nshape = gaussian\nkernel = quadrature\nquad_half_width = 10\nquad_panels = 4096\n"));
  CHECK(tuned.settings().half_width == 10.0);
  CHECK(tuned.settings().panels == 4096);
  CHECK(tuned.mode() == KernelMode::Quadrature);
  CHECK_THROWS_AS(make_kernel(parse_config("experiment = decay\nkernel = quadrature\nquad_panels = 7\n")),
                  invalid_model_error);
}

TEST_CASE("tau and x resolution") {
  auto c = parse_config("experiment = null_decay\nlambda = 50\nx = 2\n");
  CHECK(resolve_tau(c) == doctest::Approx(0.04));
  CHECK(resolve_x(c) == 2.0);
  c = parse_config("experiment = null_decay\nlambda = 50\ntau = 0.1\n");
  CHECK(resolve_x(c) == doctest::Approx(5.0));
  CHECK_THROWS_AS(resolve_tau(parse_config("experiment = null_decay\n")), config_error);
  CHECK_THROWS_AS(resolve_tau(parse_config("experiment = null_decay\nlambda = 10\nx = 1\ntau = 0.5\n")),
                  config_error);
}

TEST_CASE("density from config") {
  const auto d = make_density(parse_config("experiment = decay\nshape = gaussian\ngamma = 2\nlambda = 3\nc = 0.5\n"));
  CHECK(d.shape == Shape::Gaussian);
  CHECK(d.detuning() == doctest::Approx(1.5));
  CHECK_THROWS(make_density(parse_config("experiment = decay\nshape = tabulated\n")));
  CHECK_THROWS_AS(make_density(parse_config("experiment = decay\nlambda = -1\n")), invalid_model_error);
  const auto tab = load_config((kData / "tabulated.conf").string());
  CHECK(fs::path(tab.table).parent_path() == kData);
  CHECK(make_density(tab).table->omega_tilde.size() == 3);
  CHECK_THROWS_AS(load_config((kData / "missing.conf").string()), config_error);
}

TEST_CASE("decay experiment writes its table and passes its check") {
  auto c = parse_config("experiment = decay\nlambda = 5\nt_max = 2\n");
  c.out = (scratch_dir() / "decay.csv").string();
  const auto r = run_experiment(c);
  CHECK(r.is_check);
  CHECK(r.passed);
  REQUIRE(r.files.size() == 1);
  CHECK(first_line(r.files[0]) == "t,re_a,im_a,abs2_a");
  CHECK(line_count(r.files[0]) == 1001 + 1);
}

TEST_CASE("rate curve experiment") {
  auto c = parse_config("experiment = gamma_curve\nshape = rectangular\nlambda = 10\nx_points = 20\nx_max = 5\n");
  c.out = (scratch_dir() / "sub" / "gamma.csv").string();
  const auto r = run_experiment(c);
  CHECK(r.passed);
  CHECK(first_line(r.files[0]) == "x,re_gamma_over_Gamma,im_gamma_over_Gamma,source");
  const auto text = read_file(r.files[0]);
  CHECK(text.find(",closed_form\n") != std::string::npos);
  CHECK(text.find(",double_integral\n") != std::string::npos);
  CHECK(text.find(",kk_integral\n") != std::string::npos);
}

TEST_CASE("kk check experiment") {
  auto c = parse_config("experiment = kk_check\nshape = gaussian\nc = 0.3\nx_points = 10\nx_max = 4\n");
  c.out = (scratch_dir() / "kk.csv").string();
  CHECK(run_experiment(c).passed);
}

TEST_CASE("null decay and scaling experiments") {
  auto c = parse_config("experiment = null_decay\nshape = tabulated\nlambda = 20\ntau = 0.01\nt_max = 1\n");
  c.table = (kData / "triangle.csv").string();
  c.out = (scratch_dir() / "null.csv").string();
  auto r = run_experiment(c);
  CHECK(first_line(r.files[0]) == "t,p_e,p_e_scaling");
  CHECK(line_count(r.files[0]) == 102);

  c = parse_config("experiment = scaling_check\nshape = lorentzian\nx = 1\nlambdas = 5, 50\nt_max = 3\n");
  c.out = (scratch_dir() / "scaling.csv").string();
  r = run_experiment(c);
  CHECK(r.is_check);
  CHECK(r.passed);
  CHECK(first_line(r.files[0]) == "t,lambda,p_e");
  CHECK_THROWS_AS(run_experiment(parse_config("experiment = scaling_check\nlambdas = 5\nx = 1\n")), config_error);
}

TEST_CASE("trajectory and ensemble experiments") {
  auto c = parse_config("experiment = trajectory\nshape = rectangular\nlambda = 100\nx = 2\nt_max = 3\nseed = 4\n");
  c.out = (scratch_dir() / "traj.csv").string();
  auto r = run_experiment(c);
  CHECK(first_line(r.files[0]) == "t,p_e,jump");
  const auto once = read_file(r.files[0]);
  run_experiment(c);
  CHECK(read_file(r.files[0]) == once);

  c = parse_config("experiment = ensemble\nshape = rectangular\nlambda = 100\nx = 1\nt_max = 3\nn_traj = 2000\n");
  c.out = (scratch_dir() / "ens.csv").string();
  r = run_experiment(c);
  CHECK(r.is_check);
  CHECK(r.passed);
  REQUIRE(r.files.size() == 2);
  CHECK(first_line(r.files[0]) == "t,p_e_mean,p_e_stderr");
  CHECK(first_line(r.files[1]) == "t,p_e");
  CHECK(fs::path(r.files[1]).filename() == "ens_lindblad.csv");
}

TEST_CASE("trajectory setup") {
  auto c = parse_config("experiment = trajectory\nshape = lorentzian\nlambda = 10\ntau = 0.01\nomega = 1\nt_max = 2\n");
  auto s = make_trajectory_setup(c);
  CHECK(s.drive.dt_step * s.drive.gamma_eff <= 0.05 + 1e-12);
  CHECK(s.drive.dt_step * s.drive.omega <= 0.05 + 1e-12);
  CHECK(static_cast<double>(s.drive.n_steps) * s.drive.dt_step >= 2.0);
  c.null_factor = NullFactorMode::Memory;
  s = make_trajectory_setup(c);
  const double ratio = s.drive.dt_step / 0.01;
  CHECK(ratio == doctest::Approx(std::round(ratio)));
  c.initial = InitialState::Superposition;
  CHECK(make_trajectory_setup(c).initial.excited_population() == doctest::Approx(0.5));
  c.delta_t = 0.2;
  c.null_factor = NullFactorMode::Scaling;
  CHECK_THROWS_AS(make_trajectory_setup(c), configuration_error);
}
