#pragma once

#include <vector>

namespace leakywire::oracle {

// phi_breve_a(kappa) through p = kappa sinh u:
//   (alpha/2pi) int_0^inf e^{-2 a kappa cosh u} / (2 kappa cosh u - alpha) du,
// by exp-sinh quadrature. kappa = alpha/2 + gap, gap > 0.
double phi_breve_sinh(double gap, double a, double alpha);

// int_0^inf e^{-2 sqrt(t+1)} / ((2 sqrt(t+1) - 1) sqrt(t+1)) dt evaluated as
// int_1^inf 2 e^{-2v} / (2v - 1) dv.
double line_kernel_example();

// Decoupled two-point levels by a dense sign-change scan in kappa with plain
// bisection, K0 from boost's real-argument Bessel function:
//   s_breve(kappa) = +- c K0(2 a kappa),  c = green_factor.
// Returns the roots of the '-' branch (symmetric) and the '+' branch
// (antisymmetric), each in increasing kappa.
struct ScannedLevels {
  std::vector<double> symmetric_kappas;
  std::vector<double> antisymmetric_kappas;
};
ScannedLevels two_point_levels_scan(double a, double beta, double green_factor, double kappa_max,
                                    int points = 20000);

}  // namespace leakywire::oracle
