#pragma once

#include <complex>

#include <Eigen/Dense>

namespace otfsisac {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kC0 = 299792458.0;  // speed of light, m/s
inline constexpr double kPi = 3.14159265358979323846;

/// Delay-Doppler grid and carrier layout shared by every module.
/// M delay bins and N Doppler bins per frame; delta_f is the subcarrier
/// spacing in Hz, f_c the carrier frequency in Hz.
struct GridConfig {
  int M = 64;
  int N = 64;
  double delta_f = 120e3;
  double f_c = 40e9;

  int size() const { return M * N; }
};

// Throws std::invalid_argument listing every bad field.
void validate_grid(const GridConfig& g);

// Unitary DFT: F(k, l) = exp(-j 2 pi k l / n) / sqrt(n). F * F.adjoint() == I.
CMat unitary_dft(int n);

}  // namespace otfsisac
