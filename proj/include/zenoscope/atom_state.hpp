#pragma once

#include <complex>
#include <cmath>

namespace zenoscope {

/// Two-level atom amplitudes in the (excited, ground) column-vector convention.
struct AtomState {
  std::complex<double> alpha{1.0, 0.0};
  std::complex<double> beta{0.0, 0.0};

  double excited_population() const { return std::norm(alpha); }
  double norm2() const { return std::norm(alpha) + std::norm(beta); }

  static AtomState excited() { return {{1.0, 0.0}, {0.0, 0.0}}; }
  static AtomState ground() { return {{0.0, 0.0}, {1.0, 0.0}}; }

  friend bool operator==(const AtomState&, const AtomState&) = default;
};

/// Normalization tolerance on |alpha|^2 + |beta|^2.
inline constexpr double kNormTolerance = 1e-9;

}  // namespace zenoscope
