#include "zenoscope/scaling_rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "zenoscope/errors.hpp"
#include "zenoscope/special_functions.hpp"

namespace zenoscope {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// Even number of Simpson panels for [0, x].
std::size_t panel_count(double x) {
  auto panels = static_cast<std::size_t>(std::ceil(kPanelsPerUnitX * x));
  panels = std::clamp<std::size_t>(panels, 2, kMaxRatePoints - 1);
  if (panels % 2 != 0) ++panels;
  if (panels >= static_cast<std::size_t>(kMaxRatePoints)) panels -= 2;
  return panels;
}

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0)) throw domain_error(std::string(what) + ": x must be >= 0");
}

}  // namespace

cplx gamma_numeric(const MemoryKernel& kernel, double x) {
  require_nonnegative(x, "gamma_numeric");
  if (x == 0.0) return 0.0;
  // Outer Simpson on nodes 0..2m with step h; each inner integral G(x_k) is
  // composite Simpson with step h/2, accumulated interval by interval.
  const std::size_t panels = panel_count(x);
  const double h = x / static_cast<double>(panels);
  cplx inner = 0.0;
  cplx g_prev = kernel.scaled(0.0);
  cplx outer = 0.0;  // Simpson sum over G, G(0) = 0
  for (std::size_t k = 1; k <= panels; ++k) {
    const double xk = h * static_cast<double>(k);
    const cplx g_mid = kernel.scaled(xk - 0.5 * h);
    const cplx g_here = kernel.scaled(xk);
    inner += (h / 6.0) * (g_prev + 4.0 * g_mid + g_here);
    g_prev = g_here;
    const double weight = (k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    outer += weight * inner;
  }
  outer *= h / 3.0;
  return 2.0 * kI / x * outer;
}

cplx kk_rate(const MemoryKernel& kernel, double x) {
  require_nonnegative(x, "kk_rate");
  if (x == 0.0) return 0.0;
  const std::size_t panels = panel_count(x);
  const double h = x / static_cast<double>(panels);
  cplx sum = x * kernel.scaled(0.0);
  for (std::size_t k = 1; k <= panels; ++k) {
    const double xk = h * static_cast<double>(k);
    const double weight = (k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += weight * (x - xk) * kernel.scaled(xk);
  }
  sum *= h / 3.0;
  return 2.0 * kI / x * sum;
}

cplx gamma_lorentzian(double x, double c, double gamma) {
  require_nonnegative(x, "gamma_lorentzian");
  if (x == 0.0) return 0.0;
  const cplx kappa(1.0, -c);
  // 1/kappa - (1 - exp(-kappa x)) / (kappa^2 x), grouped to avoid cancellation at small x.
  const cplx kx = kappa * x;
  cplx bracket;
  if (std::abs(kx) < 1e-3) {
    // series: x/2 - kappa x^2/6 + kappa^2 x^3/24
    bracket = x * (0.5 - kx / 6.0 + kx * kx / 24.0);
  } else {
    bracket = (1.0 - (1.0 - std::exp(-kx)) / kx) / kappa;
  }
  return gamma * bracket;
}

cplx gamma_gaussian(double x, double gamma) {
  require_nonnegative(x, "gamma_gaussian");
  if (x == 0.0) return 0.0;
  const double correction = 2.0 / (std::sqrt(2.0 * kPi) * x) * std::expm1(-0.5 * x * x);
  return gamma * (special::erf(x / std::sqrt(2.0)) + correction);
}

cplx gamma_rectangular(double x, double gamma) {
  require_nonnegative(x, "gamma_rectangular");
  if (x == 0.0) return 0.0;
  const double half = 0.5 * x;
  // (2/x)(cos(x/2) - 1) = -(4/x) sin^2(x/4)
  const double s = std::sin(0.25 * x);
  return gamma * (2.0 / kPi) * (special::sine_integral(half) - 4.0 / x * s * s);
}

cplx gamma_double_lorentzian(double x, double gamma) {
  require_nonnegative(x, "gamma_double_lorentzian");
  if (x == 0.0) return 0.0;
  const double sinc = std::sin(x) / x;
  return gamma * (1.0 - std::exp(-x) * sinc);
}

std::optional<cplx> gamma_closed_form(const SpectralDensity& d, double x) {
  switch (d.shape) {
    case Shape::Lorentzian: return gamma_lorentzian(x, d.c, d.gamma);
    case Shape::Gaussian:
      if (d.c == 0.0) return gamma_gaussian(x, d.gamma);
      break;
    case Shape::Rectangular:
      if (d.c == 0.0) return gamma_rectangular(x, d.gamma);
      break;
    case Shape::DoubleLorentzian:
      if (d.c == 0.0 && d.b == 1.0) return gamma_double_lorentzian(x, d.gamma);
      break;
    case Shape::Tabulated: break;
  }
  return std::nullopt;
}

double gamma_eff(cplx a_bar_dt, double dt_total) {
  if (!(dt_total > 0.0)) throw domain_error("gamma_eff: dt must be > 0");
  if (std::abs(a_bar_dt) > 1.0 + 1e-9) throw domain_error("gamma_eff: |a_bar| exceeds 1");
  return (1.0 - std::norm(a_bar_dt)) / dt_total;
}

std::string_view to_string(RateSource source) {
  switch (source) {
    case RateSource::ClosedForm: return "closed_form";
    case RateSource::DoubleIntegral: return "double_integral";
    case RateSource::KkIntegral: return "kk_integral";
  }
  return "unknown";
}

RateCurve rate_curve(const MemoryKernel& kernel, const std::vector<double>& x_grid, RateSource source,
                     unsigned threads) {
  const auto& model = kernel.density();
  if (source == RateSource::ClosedForm && !gamma_closed_form(model, 1.0))
    throw invalid_model_error("no closed-form rate for shape '" + std::string(to_string(model.shape)) +
                              "' at these parameters");
  RateCurve curve{x_grid, std::vector<cplx>(x_grid.size()), source, model};
  auto eval = [&](std::size_t i) {
    const double x = x_grid[i];
    switch (source) {
      case RateSource::ClosedForm: curve.values[i] = *gamma_closed_form(model, x); break;
      case RateSource::DoubleIntegral: curve.values[i] = gamma_numeric(kernel, x); break;
      case RateSource::KkIntegral: curve.values[i] = kk_rate(kernel, x); break;
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(x_grid.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < x_grid.size(); ++i) eval(i);
    return curve;
  }
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t i = t; i < x_grid.size(); i += threads) eval(i);
    });
  }
  workers.clear();
  return curve;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return grid;
}

}  // namespace zenoscope
