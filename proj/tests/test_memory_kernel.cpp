#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "zenoscope/errors.hpp"
#include "zenoscope/memory_kernel.hpp"

using namespace zenoscope;
using std::numbers::pi;

namespace {

const cplx I{0.0, 1.0};

SpectralDensity all_models(int k, double lambda) {
  switch (k) {
    case 0: return SpectralDensity::lorentzian(1.0, lambda);
    case 1: return SpectralDensity::gaussian(1.0, lambda);
    case 2: return SpectralDensity::rectangular(1.0, lambda);
    default: return SpectralDensity::double_lorentzian(1.0, lambda);
  }
}

}  // namespace

TEST_CASE("kernel at zero lag equals -i times the integrated density") {
  const double G = 0.7, L = 40.0;
  CHECK(std::abs(MemoryKernel(SpectralDensity::lorentzian(G, L)).value(0.0) - (-I * G * L / 2.0)) < 1e-12);
  CHECK(std::abs(MemoryKernel(SpectralDensity::gaussian(G, L)).value(0.0) - (-I * G * L / std::sqrt(2 * pi))) < 1e-12);
  CHECK(std::abs(MemoryKernel(SpectralDensity::rectangular(G, L)).value(0.0) - (-I * G * L / (2 * pi))) < 1e-12);
  CHECK(std::abs(MemoryKernel(SpectralDensity::double_lorentzian(G, L)).value(0.0) - (-I * G * L)) < 1e-12);
}

TEST_CASE("rectangular kernel is continuous at zero lag") {
  const MemoryKernel k(SpectralDensity::rectangular(1.0, 100.0));
  CHECK(std::abs(k.value(1e-9) - k.value(0.0)) < 1e-9);
}

TEST_CASE("closed-form kernels at finite lag") {
  const double L = 3.0, u = 0.4;
  CHECK(std::abs(MemoryKernel(SpectralDensity::lorentzian(1.0, L)).value(u) - (-I * L / 2.0 * std::exp(-L * u))) < 1e-14);
  CHECK(std::abs(MemoryKernel(SpectralDensity::gaussian(1.0, L)).value(u) -
                 (-I * L / std::sqrt(2 * pi) * std::exp(-L * L * u * u / 2))) < 1e-14);
  CHECK(std::abs(MemoryKernel(SpectralDensity::rectangular(1.0, L)).value(u) - (-I * std::sin(L * u / 2) / (pi * u))) < 1e-14);
  // detuning only adds the phase exp(i E u)
  const auto det = SpectralDensity::lorentzian(1.0, L, 0.5);
  const cplx phase = std::exp(I * (0.5 * L * u));
  CHECK(std::abs(MemoryKernel(det).value(u) - phase * (-I * L / 2.0 * std::exp(-L * u))) < 1e-14);
}

TEST_CASE("symmetric double Lorentzian reduces to -i Gamma exp(-x) cos x") {
  const MemoryKernel k(SpectralDensity::double_lorentzian(1.3, 7.0));
  for (double x = 0.0; x <= 20.0; x += 0.25)
    CHECK(std::abs(k.scaled(x) - (-I * 1.3 * std::exp(-x) * std::cos(x))) < 1e-13);
}

TEST_CASE("scaled kernel g(x) does not depend on lambda") {
  for (int m = 0; m < 4; ++m) {
    const MemoryKernel narrow(all_models(m, 5.0));
    const MemoryKernel wide(all_models(m, 100.0));
    double worst = 0.0;
    for (double x = 0.0; x <= 20.0; x += 0.01) worst = std::max(worst, std::abs(narrow.scaled(x) - wide.scaled(x)));
    CAPTURE(m);
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("frequency quadrature reproduces the closed forms") {
  const double L = 50.0;
  for (int m = 0; m < 4; ++m) {
    const auto density = all_models(m, L);
    const MemoryKernel exact(density, KernelMode::Analytic);
    const MemoryKernel quad(density, KernelMode::Quadrature);
    double worst = 0.0;
    for (double x = 0.0; x <= 20.0; x += 0.05)
      worst = std::max(worst, std::abs(exact.value(x / L) - quad.value(x / L)));
    CAPTURE(m);
    CHECK(worst < 1e-6 * density.gamma * L);
  }
}

TEST_CASE("quadrature handles detuned spectra") {
  const double L = 20.0;
  for (auto density : {SpectralDensity::lorentzian(1.0, L, 0.8), SpectralDensity::gaussian(1.0, L, -0.4),
                       SpectralDensity::rectangular(1.0, L, 0.3), SpectralDensity::double_lorentzian(1.0, L, 0.2, 2.0)}) {
    const MemoryKernel exact(density, KernelMode::Analytic);
    const MemoryKernel quad(density, KernelMode::Quadrature);
    for (double x : {0.0, 0.3, 1.7, 6.0, 15.0}) CHECK(std::abs(exact.value(x / L) - quad.value(x / L)) < 1e-6 * L);
  }
}

TEST_CASE("tabulated triangle matches its exact Fourier transform") {
  // D~(w) = 1 - |w| on [-1, 1]: transform 4 sin^2(x/2) / x^2.
  const TabulatedProfile tri{{-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0}};
  const double G = 1.0, L = 10.0;
  const MemoryKernel k(SpectralDensity::tabulated(tri, G, L));
  const double D0 = G / (2 * pi);
  for (double x : {0.0, 1e-4, 0.5, 2.0, 9.0, 31.0}) {
    const double transform = x == 0.0 ? 1.0 : 4.0 * std::pow(std::sin(0.5 * x), 2) / (x * x);
    CAPTURE(x);
    CHECK(std::abs(k.value(x / L) - (-I * D0 * L * transform)) < 1e-12);
  }
}

TEST_CASE("tabulated box agrees with the rectangular model") {
  const TabulatedProfile box{{-0.5 - 1e-9, -0.5, 0.5, 0.5 + 1e-9}, {0.0, 1.0, 1.0, 0.0}};
  const MemoryKernel tab(SpectralDensity::tabulated(box, 1.0, 8.0));
  const MemoryKernel rect(SpectralDensity::rectangular(1.0, 8.0));
  for (double u = 0.0; u < 3.0; u += 0.1) CHECK(std::abs(tab.value(u) - rect.value(u)) < 1e-8);
}

TEST_CASE("kernel magnitude never exceeds its zero-lag value") {
  for (int m = 0; m < 4; ++m) {
    for (auto mode : {KernelMode::Analytic, KernelMode::Quadrature}) {
      const MemoryKernel k(all_models(m, 10.0), mode);
      const double bound = std::abs(k.value(0.0));
      for (double u = 0.0; u < 5.0; u += 0.013) CHECK(std::abs(k.value(u)) <= bound * (1 + 1e-9));
    }
  }
}

TEST_CASE("negative lag is a domain error") {
  const MemoryKernel k(SpectralDensity::lorentzian(1.0, 10.0));
  CHECK_THROWS_AS(k.value(-1e-3), zenoscope::domain_error);
  CHECK_THROWS_AS(kernel_value(k, -1.0), zenoscope::domain_error);
}

TEST_CASE("free functions forward to the kernel") {
  const MemoryKernel k(SpectralDensity::gaussian(1.0, 10.0));
  CHECK(kernel_value(k, 0.2) == k.value(0.2));
  CHECK(scaled_kernel_g(k, 2.0) == k.scaled(2.0));
  CHECK(std::abs(k.scaled(2.0) - k.value(0.2) / 10.0) < 1e-15);
}

TEST_CASE("invalid models are rejected at construction") {
  CHECK_THROWS_AS(MemoryKernel(SpectralDensity::lorentzian(1.0, 0.0)), invalid_model_error);
  CHECK_THROWS_AS(MemoryKernel(SpectralDensity::gaussian(1.0, 1.0), KernelMode::Quadrature, {12.0, 7, false}),
                  invalid_model_error);
}
