#include "zenoscope/spectral_density.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "zenoscope/errors.hpp"

namespace zenoscope {

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::Lorentzian: return "lorentzian";
    case Shape::Gaussian: return "gaussian";
    case Shape::Rectangular: return "rectangular";
    case Shape::DoubleLorentzian: return "double_lorentzian";
    case Shape::Tabulated: return "tabulated";
  }
  return "unknown";
}

std::optional<Shape> parse_shape(std::string_view name) {
  for (Shape s : {Shape::Lorentzian, Shape::Gaussian, Shape::Rectangular, Shape::DoubleLorentzian,
                  Shape::Tabulated}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

double TabulatedProfile::operator()(double w) const {
  if (omega_tilde.empty() || w < omega_tilde.front() || w > omega_tilde.back()) return 0.0;
  if (omega_tilde.size() == 1) return d_tilde.front();
  auto it = std::upper_bound(omega_tilde.begin(), omega_tilde.end(), w);
  if (it == omega_tilde.end()) return d_tilde.back();
  const auto hi = static_cast<std::size_t>(it - omega_tilde.begin());
  const auto lo = hi - 1;
  const double t = (w - omega_tilde[lo]) / (omega_tilde[hi] - omega_tilde[lo]);
  return d_tilde[lo] + t * (d_tilde[hi] - d_tilde[lo]);
}

SpectralDensity SpectralDensity::lorentzian(double gamma, double lambda, double c) {
  SpectralDensity d{Shape::Lorentzian, gamma, lambda, 0.0, c, 1.0, std::nullopt};
  d.validate();
  return d;
}

SpectralDensity SpectralDensity::gaussian(double gamma, double lambda, double c) {
  SpectralDensity d{Shape::Gaussian, gamma, lambda, 0.0, c, 1.0, std::nullopt};
  d.validate();
  return d;
}

SpectralDensity SpectralDensity::rectangular(double gamma, double lambda, double c) {
  SpectralDensity d{Shape::Rectangular, gamma, lambda, 0.0, c, 1.0, std::nullopt};
  d.validate();
  return d;
}

SpectralDensity SpectralDensity::double_lorentzian(double gamma, double lambda, double c, double b) {
  SpectralDensity d{Shape::DoubleLorentzian, gamma, lambda, 0.0, c, b, std::nullopt};
  d.validate();
  return d;
}

SpectralDensity SpectralDensity::tabulated(TabulatedProfile profile, double gamma, double lambda, double c) {
  SpectralDensity d{Shape::Tabulated, gamma, lambda, 0.0, c, 1.0, std::move(profile)};
  d.validate();
  return d;
}

SpectralDensity SpectralDensity::with_lambda(double new_lambda) const {
  SpectralDensity d = *this;
  d.lambda = new_lambda;
  d.validate();
  return d;
}

double SpectralDensity::peak_height() const { return gamma / (2.0 * std::numbers::pi); }

void SpectralDensity::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw invalid_model_error("spectral density: gamma must be >= 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw invalid_model_error("spectral density: lambda must be > 0");
  if (!std::isfinite(c) || !std::isfinite(omega0)) throw invalid_model_error("spectral density: c and omega0 must be finite");
  if (shape == Shape::DoubleLorentzian && !(b >= 0.0 && std::isfinite(b)))
    throw invalid_model_error("spectral density: b must be >= 0");
  if (shape == Shape::Tabulated) {
    if (!table || table->omega_tilde.size() < 2)
      throw invalid_model_error("tabulated spectral density: need at least two grid points");
    if (table->omega_tilde.size() != table->d_tilde.size())
      throw invalid_model_error("tabulated spectral density: column length mismatch");
    for (std::size_t i = 1; i < table->omega_tilde.size(); ++i) {
      if (!(table->omega_tilde[i] > table->omega_tilde[i - 1]))
        throw invalid_model_error("tabulated spectral density: grid must be strictly increasing");
    }
    for (double v : table->d_tilde) {
      if (!(v >= 0.0) || !std::isfinite(v))
        throw invalid_model_error("tabulated spectral density: samples must be finite and nonnegative");
    }
  }
}

double profile_value(const SpectralDensity& density, double w) {
  switch (density.shape) {
    case Shape::Lorentzian:
      return 1.0 / (1.0 + w * w);
    case Shape::Gaussian:
      return std::exp(-0.5 * w * w);
    case Shape::Rectangular:
      return std::abs(w) <= 0.5 ? 1.0 : 0.0;
    case Shape::DoubleLorentzian: {
      const double lo = w - density.b;
      const double hi = w + density.b;
      return 1.0 / (1.0 + lo * lo) + 1.0 / (1.0 + hi * hi);
    }
    case Shape::Tabulated:
      return (*density.table)(w);
  }
  return 0.0;
}

double sdf_value(const SpectralDensity& density, double omega_r) {
  density.validate();
  return density.peak_height() * profile_value(density, (omega_r - density.omega0) / density.lambda);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw invalid_model_error("tabulated spectrum line " + std::to_string(line) + ": bad number '" +
                              std::string(field) + "'");
  return value;
}

}  // namespace

TabulatedProfile parse_tabulated_profile(std::string_view text) {
  TabulatedProfile profile;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "omega_tilde,d_tilde")
        throw invalid_model_error("tabulated spectrum: expected header 'omega_tilde,d_tilde'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      throw invalid_model_error("tabulated spectrum line " + std::to_string(line_no) + ": expected two columns");
    profile.omega_tilde.push_back(parse_number(line.substr(0, comma), line_no));
    profile.d_tilde.push_back(parse_number(line.substr(comma + 1), line_no));
  }
  if (!header_seen) throw invalid_model_error("tabulated spectrum: missing header");
  SpectralDensity probe{Shape::Tabulated, 1.0, 1.0, 0.0, 0.0, 1.0, profile};
  probe.validate();
  return profile;
}

TabulatedProfile load_tabulated_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw invalid_model_error("cannot open tabulated spectrum '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tabulated_profile(buf.str());
}

}  // namespace zenoscope
