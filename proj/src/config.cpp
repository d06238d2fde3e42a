#include "zenoscope/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "zenoscope/errors.hpp"

namespace zenoscope {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string where(std::size_t line) { return line > 0 ? "line " + std::to_string(line) + ": " : ""; }

double to_double(std::string_view v, std::string_view key, std::size_t line) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw config_error(line, "invalid number '" + std::string(v) + "' for key '" + std::string(key) + "'");
  return out;
}

template <typename Int>
Int to_integer(std::string_view v, std::string_view key, std::size_t line) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw config_error(line, "invalid integer '" + std::string(v) + "' for key '" + std::string(key) + "'");
  return out;
}

std::vector<double> to_list(std::string_view v, std::string_view key, std::size_t line) {
  std::vector<double> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    out.push_back(to_double(trim(v.substr(0, comma)), key, line));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  if (out.empty()) throw config_error(line, "empty list for key '" + std::string(key) + "'");
  return out;
}

template <typename Enum>
Enum to_enum(std::string_view v, std::string_view key, std::size_t line,
             std::initializer_list<std::pair<std::string_view, Enum>> names) {
  for (const auto& [name, value] : names) {
    if (name == v) return value;
  }
  std::string allowed;
  for (const auto& [name, value] : names) allowed += (allowed.empty() ? "" : "|") + std::string(name);
  throw config_error(line, "invalid value '" + std::string(v) + "' for key '" + std::string(key) + "' (expected " +
                               allowed + ")");
}

constexpr std::pair<std::string_view, Experiment> kExperiments[] = {
    {"decay", Experiment::Decay},
    {"null_decay", Experiment::NullDecay},
    {"gamma_curve", Experiment::GammaCurve},
    {"scaling_check", Experiment::ScalingCheck},
    {"trajectory", Experiment::Trajectory},
    {"ensemble", Experiment::Ensemble},
    {"kk_check", Experiment::KkCheck},
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

config_error::config_error(std::size_t line, const std::string& message)
    : std::invalid_argument(where(line) + message), line_(line) {}

std::string_view to_string(Experiment e) {
  for (const auto& [name, value] : kExperiments) {
    if (value == e) return name;
  }
  return "unknown";
}

void set_config_value(RunConfig& c, std::string_view key, std::string_view v, std::size_t line) {
  v = trim(v);
  if (v.empty()) throw config_error(line, "missing value for key '" + std::string(key) + "'");
  if (key == "experiment") {
    c.experiment = to_enum(v, key, line,
                           {kExperiments[0], kExperiments[1], kExperiments[2], kExperiments[3], kExperiments[4],
                            kExperiments[5], kExperiments[6]});
  } else if (key == "shape") {
    const auto s = parse_shape(v);
    if (!s) throw config_error(line, "unknown shape '" + std::string(v) + "'");
    c.shape = *s;
  } else if (key == "gamma") {
    c.gamma = to_double(v, key, line);
  } else if (key == "lambda") {
    c.lambda = to_double(v, key, line);
  } else if (key == "c") {
    c.c = to_double(v, key, line);
  } else if (key == "b") {
    c.b = to_double(v, key, line);
  } else if (key == "table") {
    c.table = std::string(v);
  } else if (key == "kernel") {
    c.kernel = to_enum<KernelMode>(v, key, line, {{"analytic", KernelMode::Analytic}, {"quadrature", KernelMode::Quadrature}});
  } else if (key == "quad_half_width") {
    c.quad_half_width = to_double(v, key, line);
  } else if (key == "quad_panels") {
    c.quad_panels = to_integer<int>(v, key, line);
  } else if (key == "scheme") {
    c.scheme = to_enum<VolterraScheme>(v, key, line,
                       {{"trapezoid", VolterraScheme::Trapezoid}, {"paper", VolterraScheme::Paper}});
  } else if (key == "dt") {
    c.dt = to_double(v, key, line);
  } else if (key == "t_max") {
    c.t_max = to_double(v, key, line);
  } else if (key == "x") {
    c.x = to_double(v, key, line);
  } else if (key == "tau") {
    c.tau = to_double(v, key, line);
  } else if (key == "delta_t") {
    c.delta_t = to_double(v, key, line);
  } else if (key == "omega") {
    c.omega = to_double(v, key, line);
  } else if (key == "n_traj") {
    c.n_traj = to_integer<std::size_t>(v, key, line);
  } else if (key == "seed") {
    c.seed = to_integer<std::uint64_t>(v, key, line);
  } else if (key == "lambdas") {
    c.lambdas = to_list(v, key, line);
  } else if (key == "x_min") {
    c.x_min = to_double(v, key, line);
  } else if (key == "x_max") {
    c.x_max = to_double(v, key, line);
  } else if (key == "x_points") {
    c.x_points = to_integer<std::size_t>(v, key, line);
  } else if (key == "null_factor") {
    c.null_factor = to_enum<NullFactorMode>(v, key, line,
                            {{"scaling", NullFactorMode::Scaling}, {"memory", NullFactorMode::Memory}});
  } else if (key == "initial") {
    c.initial = to_enum<InitialState>(v, key, line,
                        {{"excited", InitialState::Excited},
                         {"ground", InitialState::Ground},
                         {"superposition", InitialState::Superposition}});
  } else if (key == "threads") {
    c.threads = to_integer<unsigned>(v, key, line);
  } else if (key == "out") {
    c.out = std::string(v);
  } else {
    throw config_error(line, "unknown key '" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw config_error(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw config_error(line_no, "missing key before '='");
    if (!seen.insert(std::string(key)).second) throw config_error(line_no, "duplicate key '" + std::string(key) + "'");
    set_config_value(config, key, line.substr(eq + 1), line_no);
  }
  if (!seen.contains("experiment")) throw config_error(0, "missing required key 'experiment'");
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(0, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  RunConfig config = parse_config(buf.str());
  // table paths are relative to the config file
  if (!config.table.empty() && std::filesystem::path(config.table).is_relative())
    config.table = (std::filesystem::path(path).parent_path() / config.table).string();
  return config;
}

std::string dump_config(const RunConfig& c) {
  std::ostringstream s;
  auto kv = [&](std::string_view k, const std::string& v) { s << k << " = " << v << '\n'; };
  kv("experiment", std::string(to_string(c.experiment)));
  kv("shape", std::string(to_string(c.shape)));
  kv("gamma", fmt(c.gamma));
  kv("lambda", fmt(c.lambda));
  kv("c", fmt(c.c));
  kv("b", fmt(c.b));
  if (!c.table.empty()) kv("table", c.table);
  kv("kernel", c.kernel == KernelMode::Analytic ? "analytic" : "quadrature");
  kv("scheme", c.scheme == VolterraScheme::Trapezoid ? "trapezoid" : "paper");
  if (c.quad_half_width) kv("quad_half_width", fmt(*c.quad_half_width));
  if (c.quad_panels) kv("quad_panels", std::to_string(*c.quad_panels));
  if (c.dt) kv("dt", fmt(*c.dt));
  kv("t_max", fmt(c.t_max));
  if (c.x) kv("x", fmt(*c.x));
  if (c.tau) kv("tau", fmt(*c.tau));
  if (c.delta_t) kv("delta_t", fmt(*c.delta_t));
  kv("omega", fmt(c.omega));
  kv("n_traj", std::to_string(c.n_traj));
  kv("seed", std::to_string(c.seed));
  std::string list;
  for (double l : c.lambdas) list += (list.empty() ? "" : ",") + fmt(l);
  kv("lambdas", list);
  kv("x_min", fmt(c.x_min));
  kv("x_max", fmt(c.x_max));
  kv("x_points", std::to_string(c.x_points));
  kv("null_factor", c.null_factor == NullFactorMode::Scaling ? "scaling" : "memory");
  kv("initial", c.initial == InitialState::Excited ? "excited"
                : c.initial == InitialState::Ground ? "ground"
                                                     : "superposition");
  kv("threads", std::to_string(c.threads));
  if (!c.out.empty()) kv("out", c.out);
  return s.str();
}

SpectralDensity make_density(const RunConfig& c) {
  if (c.shape == Shape::Tabulated) {
    if (c.table.empty()) throw config_error(0, "shape 'tabulated' requires key 'table'");
    return SpectralDensity::tabulated(load_tabulated_profile(c.table), c.gamma, c.lambda, c.c);
  }
  SpectralDensity d{c.shape, c.gamma, c.lambda, 0.0, c.c, c.b, std::nullopt};
  d.validate();
  return d;
}

MemoryKernel make_kernel(const RunConfig& c, SpectralDensity density) {
  auto settings = default_quadrature(density.shape);
  if (c.quad_half_width) settings.half_width = *c.quad_half_width;
  if (c.quad_panels) settings.panels = *c.quad_panels;
  return MemoryKernel(std::move(density), c.kernel, settings);
}

MemoryKernel make_kernel(const RunConfig& c) { return make_kernel(c, make_density(c)); }

namespace {

void check_x_tau_consistent(const RunConfig& c) {
  if (c.x && c.tau && std::abs(*c.x - *c.tau * c.lambda) > 1e-12 * std::max(1.0, std::abs(*c.x)))
    throw config_error(0, "keys 'x' and 'tau' disagree (x must equal lambda * tau)");
}

}  // namespace

double resolve_tau(const RunConfig& c) {
  check_x_tau_consistent(c);
  if (c.tau) return *c.tau;
  if (c.x) return *c.x / c.lambda;
  throw config_error(0, "experiment '" + std::string(to_string(c.experiment)) + "' requires key 'x' or 'tau'");
}

double resolve_x(const RunConfig& c) {
  check_x_tau_consistent(c);
  if (c.x) return *c.x;
  if (c.tau) return *c.tau * c.lambda;
  throw config_error(0, "experiment '" + std::string(to_string(c.experiment)) + "' requires key 'x' or 'tau'");
}

}  // namespace zenoscope
