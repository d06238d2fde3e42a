#pragma once

namespace zenoscope::special {

/// Sine integral Si(x) = int_0^x sin(t)/t dt, odd in x.
double sine_integral(double x);

/// Cosine integral Ci(x) = gamma_E + ln x + int_0^x (cos t - 1)/t dt, for x > 0.
double cosine_integral(double x);

/// Both integrals at once; cheaper than two separate calls for x > 2.
struct SiCi {
  double si;
  double ci;
};
SiCi sine_cosine_integrals(double x);

/// Standard error function (2/sqrt(pi) normalization).
double erf(double x);

}  // namespace zenoscope::special
