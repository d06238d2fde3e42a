#pragma once

#include <complex>
#include <vector>

#include "zenoscope/spectral_density.hpp"

namespace zenoscope {

using cplx = std::complex<double>;

enum class KernelMode { Analytic, Quadrature };

/// Frequency-domain quadrature for the kernel, in units of the width lambda.
///
/// The dimensionless profile is sampled on [-half_width, half_width] with
/// `panels` (even) uniform intervals and integrated against exp(-i w x) by a
/// Filon-Simpson rule (piecewise-quadratic profile, exact oscillatory factor).
/// With `tail_correction`, the part beyond the window is added assuming a
/// D~ ~ A / w^2 tail matched at the window edges.
struct QuadratureSettings {
  double half_width = 12.0;
  int panels = 8192;
  bool tail_correction = false;
};

/// Defaults per shape: rectangular integrates exactly over its support,
/// Gaussian truncates at 12 widths, the Lorentzian family uses a wide window
/// plus the algebraic tail.
QuadratureSettings default_quadrature(Shape shape);

/// Time-domain memory kernel F~(u) of the decay-amplitude equation
///   da/dt = -i int_0^t F~(u) a(t - u) du,
/// with F~(u) = -i int D(omega_r) exp(-i (omega_r - omega0 - E) u) d omega_r.
///
/// Immutable after construction. Tabulated spectra are always transformed
/// exactly for their piecewise-linear interpolant, whatever the mode.
class MemoryKernel {
 public:
  explicit MemoryKernel(SpectralDensity density, KernelMode mode = KernelMode::Analytic);
  MemoryKernel(SpectralDensity density, KernelMode mode, QuadratureSettings settings);

  /// F~(u), u >= 0.
  cplx value(double u) const;
  /// g(x) = F~(x / lambda) / lambda.
  cplx scaled(double x) const;

  const SpectralDensity& density() const { return density_; }
  KernelMode mode() const { return mode_; }
  const QuadratureSettings& settings() const { return settings_; }

  /// Frequency integral int D~(w) exp(-i w x) dw of the dimensionless profile.
  cplx profile_transform(double x) const;

 private:
  cplx analytic(double u) const;
  cplx filon_transform(double x) const;
  cplx tabulated_transform(double x) const;

  SpectralDensity density_;
  KernelMode mode_;
  QuadratureSettings settings_;
  std::vector<double> samples_;
};

cplx kernel_value(const MemoryKernel& kernel, double u);
cplx scaled_kernel_g(const MemoryKernel& kernel, double x);

}  // namespace zenoscope
