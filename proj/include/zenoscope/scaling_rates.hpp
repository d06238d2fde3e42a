#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "zenoscope/memory_kernel.hpp"

namespace zenoscope {

/// Effective decay rate gamma(x) of the null-result conditioned amplitude
/// a_bar(t) = exp(-gamma(x) t / 2), x = lambda * tau.

/// (2i/x) int_0^x dx' int_0^x' g(x'') dx'' by nested composite Simpson.
cplx gamma_numeric(const MemoryKernel& kernel, double x);

/// (2i/x) int_0^x (x - x') g(x') dx' by composite Simpson.
cplx kk_rate(const MemoryKernel& kernel, double x);

/// Closed forms (gamma = rate scale Gamma). Lorentzian takes any detuning
/// ratio c; the others are for c = 0 (and b = 1 for the double Lorentzian).
cplx gamma_lorentzian(double x, double c, double gamma = 1.0);
cplx gamma_gaussian(double x, double gamma = 1.0);
cplx gamma_rectangular(double x, double gamma = 1.0);
cplx gamma_double_lorentzian(double x, double gamma = 1.0);

/// Closed form for the model if one exists for its (shape, c, b).
std::optional<cplx> gamma_closed_form(const SpectralDensity& density, double x);

/// [1 - |a_bar(dt)|^2] / dt.
double gamma_eff(cplx a_bar_dt, double dt_total);

/// Simpson resolution for the rate integrals.
inline constexpr int kPanelsPerUnitX = 2048;
inline constexpr int kMaxRatePoints = 1 << 20;

enum class RateSource { ClosedForm, DoubleIntegral, KkIntegral };
std::string_view to_string(RateSource source);

struct RateCurve {
  std::vector<double> x_grid;
  std::vector<cplx> values;
  RateSource source = RateSource::DoubleIntegral;
  SpectralDensity model;
};

/// Evaluates gamma(x) on the grid from the chosen source. Grid points are
/// independent; with threads > 1 they are split across workers and written
/// back by index. Throws invalid_model_error for ClosedForm without one.
RateCurve rate_curve(const MemoryKernel& kernel, const std::vector<double>& x_grid, RateSource source,
                     unsigned threads = 1);

/// n points spaced uniformly between lo and hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

}  // namespace zenoscope
