#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zenoscope {

enum class Shape { Lorentzian, Gaussian, Rectangular, DoubleLorentzian, Tabulated };

std::string_view to_string(Shape shape);
/// Accepts the snake_case names used in config files ("double_lorentzian", ...).
std::optional<Shape> parse_shape(std::string_view name);

/// Samples of a dimensionless profile D~(w~), w~ = (omega_r - omega0) / lambda.
/// Linear interpolation between samples, zero outside the sampled range.
struct TabulatedProfile {
  std::vector<double> omega_tilde;
  std::vector<double> d_tilde;

  double operator()(double w) const;
};

/// Spectral density D(omega_r) of the reservoir coupled to the atom.
///
/// Every shape is written as D(omega_r) = D0 * profile((omega_r - omega0) / lambda)
/// with D0 = gamma / (2 pi), so that changing lambda deforms the spectrum by pure
/// rescaling. The transition detuning from the spectral center is E = c * lambda;
/// the double-Lorentzian peaks sit at omega0 -/+ b * lambda.
struct SpectralDensity {
  Shape shape = Shape::Lorentzian;
  double gamma = 1.0;
  double lambda = 1.0;
  double omega0 = 0.0;
  double c = 0.0;
  double b = 1.0;
  std::optional<TabulatedProfile> table;

  static SpectralDensity lorentzian(double gamma, double lambda, double c = 0.0);
  static SpectralDensity gaussian(double gamma, double lambda, double c = 0.0);
  static SpectralDensity rectangular(double gamma, double lambda, double c = 0.0);
  static SpectralDensity double_lorentzian(double gamma, double lambda, double c = 0.0, double b = 1.0);
  static SpectralDensity tabulated(TabulatedProfile profile, double gamma, double lambda, double c = 0.0);

  /// Same model with a different width; tabulated profiles carry over unchanged.
  SpectralDensity with_lambda(double new_lambda) const;

  double peak_height() const;   // D0
  double detuning() const { return c * lambda; }

  /// Throws invalid_model_error when invariants are violated. gamma = 0 is
  /// accepted as the decoupled limit.
  void validate() const;
};

/// Dimensionless profile D~(w~) of the model, D(omega_r) = D0 * D~.
double profile_value(const SpectralDensity& density, double w_tilde);

/// D(omega_r) at an absolute mode frequency.
double sdf_value(const SpectralDensity& density, double omega_r);

/// Parses the `omega_tilde,d_tilde` two-column format.
TabulatedProfile parse_tabulated_profile(std::string_view text);
TabulatedProfile load_tabulated_profile(const std::filesystem::path& path);

}  // namespace zenoscope
