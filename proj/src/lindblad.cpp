#include "zenoscope/lindblad.hpp"

#include <algorithm>
#include <cmath>

#include "zenoscope/errors.hpp"

namespace zenoscope {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

DensityMatrix2 DensityMatrix2::from_state(const AtomState& s) {
  return {s.alpha * std::conj(s.alpha), s.alpha * std::conj(s.beta), s.beta * std::conj(s.alpha),
          s.beta * std::conj(s.beta)};
}

double DensityMatrix2::hermiticity_error() const {
  return std::max({std::abs(ee.imag()) * 2.0, std::abs(gg.imag()) * 2.0, std::abs(ge - std::conj(eg))});
}

double DensityMatrix2::min_eigenvalue() const {
  const double a = ee.real();
  const double d = gg.real();
  const std::complex<double> off = 0.5 * (eg + std::conj(ge));
  const double mean = 0.5 * (a + d);
  const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(off));
  return mean - half_gap;
}

DensityMatrix2& DensityMatrix2::operator+=(const DensityMatrix2& o) {
  ee += o.ee;
  eg += o.eg;
  ge += o.ge;
  gg += o.gg;
  return *this;
}

DensityMatrix2 operator*(double s, DensityMatrix2 a) {
  a.ee *= s;
  a.eg *= s;
  a.ge *= s;
  a.gg *= s;
  return a;
}

DensityMatrix2 lindblad_rhs(const DensityMatrix2& r, double omega, double gamma_eff) {
  DensityMatrix2 d;
  d.ee = -kI * omega * (r.ge - r.eg) - gamma_eff * r.ee;
  d.gg = -kI * omega * (r.eg - r.ge) + gamma_eff * r.ee;
  d.eg = -kI * omega * (r.gg - r.ee) - 0.5 * gamma_eff * r.eg;
  d.ge = -kI * omega * (r.ee - r.gg) - 0.5 * gamma_eff * r.ge;
  return d;
}

std::vector<double> MasterSolution::p_e() const {
  std::vector<double> out(rho.size());
  std::transform(rho.begin(), rho.end(), out.begin(), [](const DensityMatrix2& r) { return r.ee.real(); });
  return out;
}

MasterSolution solve_master(const DensityMatrix2& rho0, double omega, double gamma_eff, double t_max, double dt) {
  if (!(dt > 0.0) || !(t_max > 0.0)) throw domain_error("solve_master: dt and t_max must be > 0");
  if (dt * std::max(omega, gamma_eff) > 0.05 * (1.0 + 1e-12))
    throw step_size_error("solve_master: dt * max(omega, gamma_eff) exceeds 0.05");
  const auto n = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
  MasterSolution sol;
  sol.times.reserve(n + 1);
  sol.rho.reserve(n + 1);
  DensityMatrix2 rho = rho0;
  sol.times.push_back(0.0);
  sol.rho.push_back(rho);
  auto f = [&](const DensityMatrix2& r) { return lindblad_rhs(r, omega, gamma_eff); };
  for (std::size_t k = 1; k <= n; ++k) {
    const auto k1 = f(rho);
    const auto k2 = f(rho + (0.5 * dt) * k1);
    const auto k3 = f(rho + (0.5 * dt) * k2);
    const auto k4 = f(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho.ee = rho.ee.real();
    rho.gg = rho.gg.real();
    const auto coherence = 0.5 * (rho.eg + std::conj(rho.ge));
    rho.eg = coherence;
    rho.ge = std::conj(coherence);
    sol.times.push_back(dt * static_cast<double>(k));
    sol.rho.push_back(rho);
  }
  return sol;
}

}  // namespace zenoscope
