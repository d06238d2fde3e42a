#pragma once

#include <complex>
#include <vector>

#include "zenoscope/atom_state.hpp"

namespace zenoscope {

/// 2x2 density matrix in the (excited, ground) basis.
struct DensityMatrix2 {
  std::complex<double> ee{1.0, 0.0};
  std::complex<double> eg{0.0, 0.0};
  std::complex<double> ge{0.0, 0.0};
  std::complex<double> gg{0.0, 0.0};

  static DensityMatrix2 from_state(const AtomState& s);

  std::complex<double> trace() const { return ee + gg; }
  /// max(|ee - conj(ee)|, |gg - conj(gg)|, |ge - conj(eg)|)
  double hermiticity_error() const;
  /// Smaller eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

  DensityMatrix2& operator+=(const DensityMatrix2& o);
  friend DensityMatrix2 operator+(DensityMatrix2 a, const DensityMatrix2& b) { return a += b; }
  friend DensityMatrix2 operator*(double s, DensityMatrix2 a);
};

/// d rho/dt = -i [omega sigma_x, rho] + gamma_eff (sigma- rho sigma+ - {sigma+ sigma-, rho} / 2).
DensityMatrix2 lindblad_rhs(const DensityMatrix2& rho, double omega, double gamma_eff);

struct MasterSolution {
  std::vector<double> times;
  std::vector<DensityMatrix2> rho;

  std::vector<double> p_e() const;
};

/// Classical RK4 on a uniform grid t_k = k dt up to t_max, re-symmetrizing
/// the Hermitian structure after every step. Requires dt * max(omega, gamma_eff) <= 0.05.
MasterSolution solve_master(const DensityMatrix2& rho0, double omega, double gamma_eff, double t_max, double dt);

}  // namespace zenoscope
