#include "zenoscope/memory_kernel.hpp"

#include <cmath>
#include <numbers>

#include "zenoscope/errors.hpp"
#include "zenoscope/special_functions.hpp"

namespace zenoscope {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// Moments int_{-1}^{1} s^m exp(-i theta s) ds for m = 0, 1, 2.
struct Moments {
  cplx m0, m1, m2;
};

Moments filon_moments(double theta) {
  if (std::abs(theta) < 1.0) {
    const double t2 = theta * theta;
    double even = 1.0;  // theta^(2k) / (2k)!
    double odd = theta; // theta^(2k+1) / (2k+1)!
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (int k = 0; k < 12; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      m0 += sign * even / (2 * k + 1);
      m2 += sign * even / (2 * k + 3);
      m1 += sign * odd / (2 * k + 3);
      even *= t2 / ((2 * k + 1) * (2 * k + 2));
      odd *= t2 / ((2 * k + 2) * (2 * k + 3));
    }
    return {2.0 * m0, cplx(0.0, -2.0 * m1), 2.0 * m2};
  }
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double t2 = theta * theta;
  return {2.0 * s / theta, cplx(0.0, -2.0 * (s - theta * c) / t2),
          2.0 * ((t2 - 2.0) * s + 2.0 * theta * c) / (t2 * theta)};
}

// int_W^inf exp(-i w x) / w^2 dw.
cplx tail_integral(double width, double x) {
  if (x == 0.0) return 1.0 / width;
  const double p = width * x;
  const auto sc = special::sine_cosine_integrals(p);
  const double re = std::cos(p) - p * (kPi / 2 - sc.si);
  const double im = -(std::sin(p) - p * sc.ci);
  return cplx(re, im) / width;
}

}  // namespace

QuadratureSettings default_quadrature(Shape shape) {
  switch (shape) {
    case Shape::Rectangular: return {0.5, 8192, false};
    case Shape::Gaussian: return {12.0, 8192, false};
    case Shape::Lorentzian:
    case Shape::DoubleLorentzian: return {200.0, 16384, true};
    case Shape::Tabulated: return {0.0, 0, false};
  }
  return {};
}

MemoryKernel::MemoryKernel(SpectralDensity density, KernelMode mode)
    : MemoryKernel(density, mode, default_quadrature(density.shape)) {}

MemoryKernel::MemoryKernel(SpectralDensity density, KernelMode mode, QuadratureSettings settings)
    : density_(std::move(density)), mode_(mode), settings_(settings) {
  density_.validate();
  if (density_.shape == Shape::Tabulated) {
    mode_ = KernelMode::Quadrature;
    return;
  }
  if (mode_ == KernelMode::Quadrature) {
    if (settings_.panels < 2 || settings_.panels % 2 != 0 || !(settings_.half_width > 0.0))
      throw invalid_model_error("quadrature settings: need an even panel count and a positive window");
    samples_.resize(static_cast<std::size_t>(settings_.panels) + 1);
    const double h = 2.0 * settings_.half_width / settings_.panels;
    for (std::size_t k = 0; k < samples_.size(); ++k) {
      samples_[k] = profile_value(density_, -settings_.half_width + h * static_cast<double>(k));
    }
  }
}

cplx MemoryKernel::value(double u) const {
  if (!(u >= 0.0)) throw domain_error("kernel_value: u must be >= 0");
  if (mode_ == KernelMode::Analytic) return analytic(u);
  const double lambda = density_.lambda;
  const double x = lambda * u;
  const cplx prefactor = -kI * density_.peak_height() * lambda * std::polar(1.0, density_.c * x);
  return prefactor * profile_transform(x);
}

cplx MemoryKernel::scaled(double x) const {
  if (!(x >= 0.0)) throw domain_error("scaled_kernel_g: x must be >= 0");
  return value(x / density_.lambda) / density_.lambda;
}

cplx MemoryKernel::analytic(double u) const {
  const double g = density_.gamma;
  const double l = density_.lambda;
  const cplx phase = std::polar(1.0, density_.detuning() * u);
  switch (density_.shape) {
    case Shape::Lorentzian:
      return -kI * (0.5 * g * l) * phase * std::exp(-l * u);
    case Shape::Gaussian:
      return -kI * (g * l / std::sqrt(2.0 * kPi)) * phase * std::exp(-0.5 * l * l * u * u);
    case Shape::Rectangular:
      if (u == 0.0) return -kI * (g * l / (2.0 * kPi));
      return -kI * (g / (kPi * u)) * phase * std::sin(0.5 * l * u);
    case Shape::DoubleLorentzian:
      return -kI * (g * l) * phase * std::exp(-l * u) * std::cos(density_.b * l * u);
    case Shape::Tabulated:
      break;
  }
  return -kI * density_.peak_height() * l * phase * tabulated_transform(l * u);
}

cplx MemoryKernel::profile_transform(double x) const {
  if (density_.shape == Shape::Tabulated) return tabulated_transform(x);
  if (mode_ == KernelMode::Analytic) {
    // Closed forms of int D~(w) exp(-i w x) dw.
    switch (density_.shape) {
      case Shape::Lorentzian: return kPi * std::exp(-std::abs(x));
      case Shape::Gaussian: return std::sqrt(2.0 * kPi) * std::exp(-0.5 * x * x);
      case Shape::Rectangular: return x == 0.0 ? 1.0 : 2.0 * std::sin(0.5 * x) / x;
      case Shape::DoubleLorentzian: return 2.0 * kPi * std::exp(-std::abs(x)) * std::cos(density_.b * x);
      case Shape::Tabulated: break;
    }
  }
  return filon_transform(x);
}

cplx MemoryKernel::filon_transform(double x) const {
  const double width = settings_.half_width;
  const double h = 2.0 * width / settings_.panels;
  const Moments m = filon_moments(h * x);
  cplx sum = 0.0;
  for (std::size_t k = 1; k + 1 < samples_.size(); k += 2) {
    const double lo = samples_[k - 1];
    const double mid = samples_[k];
    const double hi = samples_[k + 1];
    // Quadratic through the three samples, in the local coordinate s = (w - center) / h.
    const cplx local = mid * m.m0 + 0.5 * (hi - lo) * m.m1 + 0.5 * (hi - 2.0 * mid + lo) * m.m2;
    const double center = -width + h * static_cast<double>(k);
    sum += std::polar(1.0, -x * center) * local;
  }
  sum *= h;
  if (settings_.tail_correction) {
    const double w2 = width * width;
    const double upper = profile_value(density_, width) * w2;
    const double lower = profile_value(density_, -width) * w2;
    const cplx j = tail_integral(width, x);
    sum += upper * j + lower * std::conj(j);
  }
  return sum;
}

cplx MemoryKernel::tabulated_transform(double x) const {
  const auto& w = density_.table->omega_tilde;
  const auto& d = density_.table->d_tilde;
  cplx sum = 0.0;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    const double half = 0.5 * (w[k + 1] - w[k]);
    const double center = 0.5 * (w[k + 1] + w[k]);
    const Moments m = filon_moments(half * x);
    // Linear segment: mean value * m0 + half-difference * m1.
    const cplx local = 0.5 * (d[k] + d[k + 1]) * m.m0 + 0.5 * (d[k + 1] - d[k]) * m.m1;
    sum += half * std::polar(1.0, -x * center) * local;
  }
  return sum;
}

cplx kernel_value(const MemoryKernel& kernel, double u) { return kernel.value(u); }

cplx scaled_kernel_g(const MemoryKernel& kernel, double x) { return kernel.scaled(x); }

}  // namespace zenoscope
