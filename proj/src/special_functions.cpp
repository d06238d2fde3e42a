#include "zenoscope/special_functions.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "zenoscope/errors.hpp"

namespace zenoscope::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr int kMaxIter = 200;

// Power series for 0 < x <= 2. Both sums run until the shared term falls
// below eps relative to the smaller of the two scales (x for Si, x^2 for Ci).
SiCi series(double x) {
  if (x < std::sqrt(std::numeric_limits<double>::min())) {
    return {x, kEulerGamma + std::log(x)};
  }
  double si = 0.0;
  double ci = 0.0;
  const double floor = 0.25 * kEps * x * x;
  double term = x;  // x^k / k!
  for (int k = 1; k < kMaxIter; ++k) {
    const double contrib = term / k;
    const bool negative = (k / 2) % 2 == 1;
    if (k % 2 == 1) {
      si += negative ? -contrib : contrib;
    } else {
      ci += negative ? -contrib : contrib;
    }
    if (k > 2 && contrib < floor) break;
    term *= x / (k + 1);
  }
  return {si, kEulerGamma + std::log(x) + ci};
}

// E1(ix) by the modified Lentz continued fraction, valid for x > 2:
// Ci(x) + i(Si(x) - pi/2) = -E1(ix).
SiCi continued_fraction(double x) {
  using cplx = std::complex<double>;
  const double tiny = std::numeric_limits<double>::min() / kEps;
  cplx b(1.0, x);
  cplx c(1.0 / tiny, 0.0);
  cplx d = 1.0 / b;
  cplx h = d;
  int i = 1;
  for (; i < kMaxIter; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
  }
  if (i == kMaxIter) throw std::runtime_error("sine/cosine integral continued fraction did not converge");
  h *= cplx(std::cos(x), -std::sin(x));
  return {std::numbers::pi / 2 + h.imag(), -h.real()};
}

}  // namespace

SiCi sine_cosine_integrals(double x) {
  if (!(x > 0.0)) throw domain_error("sine_cosine_integrals: x must be positive");
  return x > 2.0 ? continued_fraction(x) : series(x);
}

double sine_integral(double x) {
  if (x == 0.0) return 0.0;
  const double s = sine_cosine_integrals(std::abs(x)).si;
  return x < 0.0 ? -s : s;
}

double cosine_integral(double x) { return sine_cosine_integrals(x).ci; }

double erf(double x) { return std::erf(x); }

}  // namespace zenoscope::special
