#include <cmath>
#include <complex>

#include "doctest.h"
#include "zenoscope/errors.hpp"
#include "zenoscope/scaling_rates.hpp"

using namespace zenoscope;

namespace {

// gamma(x) / Gamma from 50-digit mpmath double integrals of the closed-form g.
constexpr double kX[] = {0.01, 0.5, 1.0, 2.0, 7.5, 20.0};
constexpr double kRef[4][6] = {
    {0.0049833749168053574, 0.21306131942526685, 0.36787944117144232, 0.56766764161830635, 0.86674041124935304,
     0.95000000010305768},
    {0.0039893895591567423, 0.19541710799949341, 0.36874638037250724, 0.60954842221539696, 0.89361539189295238,
     0.96010577195985673},
    {0.0015915483256768456, 0.0794394887699719, 0.15805520906099609, 0.30964254750185157, 0.83763006637532734,
     0.93865793811711066},
    {0.0099666669988904762, 0.4184274235746163, 0.6904401243468878, 0.93846998759711163, 0.99993082758315291,
     0.99999999990591398},
};

struct DetunedRef {
  SpectralDensity density;
  double x;
  cplx value;
};

SpectralDensity model(int k, double lambda) {
  switch (k) {
    case 0: return SpectralDensity::lorentzian(1.0, lambda);
    case 1: return SpectralDensity::gaussian(1.0, lambda);
    case 2: return SpectralDensity::rectangular(1.0, lambda);
    default: return SpectralDensity::double_lorentzian(1.0, lambda);
  }
}

}  // namespace

TEST_CASE("numerical rates match high-precision references") {
  for (int m = 0; m < 4; ++m) {
    const MemoryKernel k(model(m, 10.0));
    for (int i = 0; i < 6; ++i) {
      CAPTURE(m);
      CAPTURE(kX[i]);
      const cplx g = gamma_numeric(k, kX[i]);
      CHECK(std::abs(g.real() - kRef[m][i]) < 1e-11);
      CHECK(std::abs(g.imag()) < 1e-11);
    }
  }
}

TEST_CASE("closed forms match high-precision references") {
  for (int i = 0; i < 6; ++i) {
    const double x = kX[i];
    CHECK(std::abs(gamma_lorentzian(x, 0.0) - kRef[0][i]) < 1e-14);
    CHECK(std::abs(gamma_gaussian(x) - kRef[1][i]) < 1e-14);
    CHECK(std::abs(gamma_rectangular(x) - kRef[2][i]) < 1e-14);
    CHECK(std::abs(gamma_double_lorentzian(x) - kRef[3][i]) < 1e-14);
  }
}

TEST_CASE("detuned and split spectra give complex rates") {
  const DetunedRef refs[] = {
      {SpectralDensity::lorentzian(1.0, 10.0, 1.0), 0.3, {0.13512207720942145, 0.012884463377251268}},
      {SpectralDensity::lorentzian(1.0, 10.0, 1.0), 3.0, {0.49882900808510831, 0.32511852931468022}},
      {SpectralDensity::gaussian(1.0, 10.0, 0.5), 0.3, {0.11857282836306088, 0.0058976201848036576}},
      {SpectralDensity::gaussian(1.0, 10.0, 0.5), 3.0, {0.67770382323317623, 0.22046505388644317}},
      {SpectralDensity::rectangular(1.0, 10.0, -0.3), 0.3, {0.047684482921867983, -0.0014302049341361236}},
      {SpectralDensity::rectangular(1.0, 10.0, -0.3), 3.0, {0.42194934223222143, -0.12321910645741071}},
      {SpectralDensity::double_lorentzian(1.0, 10.0, 0.2, 2.0), 0.3, {0.26460699435131462, 0.0049130870201306036}},
      {SpectralDensity::double_lorentzian(1.0, 10.0, 0.2, 2.0), 3.0, {0.4849587147113056, -0.026324773476879787}},
  };
  for (const auto& r : refs) {
    CAPTURE(to_string(r.density.shape));
    CHECK(std::abs(gamma_numeric(MemoryKernel(r.density), r.x) - r.value) < 1e-11);
  }
  CHECK(std::abs(gamma_lorentzian(3.0, 1.0) - refs[1].value) < 1e-14);
}

TEST_CASE("Lorentzian closed-form limits") {
  CHECK(gamma_lorentzian(1.0, 0.0).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  const cplx far = gamma_lorentzian(1e8, 1.0);
  CHECK(std::abs(far - cplx{0.5, 0.5}) < 1e-7);
  CHECK(gamma_lorentzian(2.0, 0.0, 3.0) == gamma_lorentzian(2.0, 0.0) * 3.0);
}

TEST_CASE("rates vanish linearly at small x") {
  for (int m = 0; m < 4; ++m) {
    const MemoryKernel k(model(m, 10.0));
    const double x = 1e-3;
    // gamma ~ x |g(0)| at the onset
    const double slope = std::abs(k.scaled(0.0));
    CHECK(gamma_numeric(k, x).real() == doctest::Approx(slope * x).epsilon(0.05));
  }
  CHECK(gamma_lorentzian(1e-3, 0.0).real() == doctest::Approx(5e-4).epsilon(0.05));
}

TEST_CASE("Gaussian rate from the frequency quadrature matches its closed form") {
  const MemoryKernel quad(SpectralDensity::gaussian(1.0, 30.0), KernelMode::Quadrature);
  for (double x : {0.1, 1.0, 3.0, 10.0}) CHECK(std::abs(gamma_numeric(quad, x) - gamma_gaussian(x)) < 1e-6);
}

TEST_CASE("rates rise monotonically at onset and saturate at Gamma") {
  for (int m = 0; m < 4; ++m) {
    const MemoryKernel k(model(m, 10.0));
    double prev = 0.0;
    for (double x = 0.02; x <= 1.0; x += 0.02) {
      const double g = gamma_numeric(k, x).real();
      CHECK(g > prev);
      prev = g;
    }
    // finite-support and Lorentzian-family rates approach Gamma like 1/x
    CHECK(std::abs(1.0 - gamma_numeric(k, 50.0).real()) < 1.5 / 50.0);
    CHECK(gamma_numeric(k, 200.0).real() == doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("rates depend on x only") {
  for (int m = 0; m < 4; ++m) {
    const MemoryKernel a(model(m, 5.0));
    const MemoryKernel b(model(m, 100.0));
    for (double x : {0.05, 0.7, 4.0, 15.0}) CHECK(std::abs(gamma_numeric(a, x) - gamma_numeric(b, x)) < 1e-10);
  }
}

TEST_CASE("double integral and single-integral forms agree") {
  for (int m = 0; m < 4; ++m) {
    const MemoryKernel k(model(m, 3.0));
    for (double x : {0.2, 2.0, 12.0}) CHECK(std::abs(gamma_numeric(k, x) - kk_rate(k, x)) < 1e-8);
  }
}

TEST_CASE("closed-form lookup") {
  CHECK(gamma_closed_form(SpectralDensity::lorentzian(1.0, 5.0, 0.3), 1.0).has_value());
  CHECK(gamma_closed_form(SpectralDensity::gaussian(2.0, 5.0), 1.0) == gamma_gaussian(1.0, 2.0));
  CHECK_FALSE(gamma_closed_form(SpectralDensity::gaussian(1.0, 5.0, 0.1), 1.0).has_value());
  CHECK_FALSE(gamma_closed_form(SpectralDensity::double_lorentzian(1.0, 5.0, 0.0, 2.0), 1.0).has_value());
  CHECK_FALSE(gamma_closed_form(SpectralDensity::tabulated({{0.0, 1.0}, {1.0, 1.0}}, 1.0, 5.0), 1.0).has_value());
}

TEST_CASE("effective rate from a null factor") {
  CHECK(gamma_eff(std::exp(-0.05), 0.1) == doctest::Approx((1.0 - std::exp(-0.1)) / 0.1));
  CHECK(gamma_eff(1.0, 0.1) == 0.0);
  CHECK(gamma_eff(0.0, 0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(gamma_eff(0.5, 0.0), zenoscope::domain_error);
  CHECK_THROWS_AS(gamma_eff(1.1, 0.1), zenoscope::domain_error);
}

TEST_CASE("rate curves are independent of the thread count") {
  const MemoryKernel k(SpectralDensity::rectangular(1.0, 10.0));
  const auto grid = linear_grid(0.1, 10.0, 23);
  const auto one = rate_curve(k, grid, RateSource::DoubleIntegral, 1);
  const auto four = rate_curve(k, grid, RateSource::DoubleIntegral, 4);
  CHECK(one.values == four.values);
  CHECK(one.x_grid == grid);
  const auto closed = rate_curve(k, grid, RateSource::ClosedForm);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(closed.values[i] - one.values[i]) < 1e-10);
  CHECK_THROWS_AS(rate_curve(MemoryKernel(SpectralDensity::gaussian(1.0, 1.0, 0.2)), grid, RateSource::ClosedForm),
                  invalid_model_error);
}

TEST_CASE("grids and sources") {
  const auto g = linear_grid(1.0, 2.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 2.0);
  CHECK(g[2] == doctest::Approx(1.5));
  CHECK(to_string(RateSource::KkIntegral) == "kk_integral");
  CHECK_THROWS_AS(gamma_numeric(MemoryKernel(SpectralDensity::lorentzian(1.0, 1.0)), -1.0), zenoscope::domain_error);
}
