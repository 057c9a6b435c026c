#pragma once

#include <complex>
#include <numbers>

namespace leakywire {

using cplx = std::complex<double>;

// psi(1) = -(Euler-Mascheroni constant).
inline constexpr double kPsi1 = -0.57721566490153286;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Square root with the cut on [0, inf): for z = r e^{i theta}, theta in
// (0, 2 pi), returns sqrt(r) e^{i theta / 2}, so Im sqrt_cut(z) > 0.
// Throws DomainError when z is real and nonnegative.
cplx sqrt_cut(cplx z);

// kappa(z) = -i sqrt_cut(z), the decay rate of the free Green's function.
// Re kappa(z) > 0 off the cut and kappa(-k^2) = k for k > 0.
cplx decay_rate(cplx z);

// Macdonald function K0 and K1 for Re w > 0.
//
// |w| <= 2 : ascending series in double precision
// |w| <= 25: Steed/Temme continued fraction (CF2)
// otherwise: Hankel asymptotic expansion
//
// Throws DomainError for Re w <= 0.
cplx macdonald_k0(cplx w);
cplx macdonald_k1(cplx w);

struct BesselK01 {
  cplx k0;
  cplx k1;
};
BesselK01 macdonald_k01(cplx w);

// d/dw K0(w) = -K1(w).
cplx k0_prime(cplx w);

// s(z) = (1/2pi)(ln(sqrt(z)/2i) - psi(1)) and s_beta(z) = beta + s(z).
cplx s_beta(cplx z, double beta);

// Real-axis form: s_beta(-kappa^2) for kappa > 0.
double s_breve(double kappa, double beta);

// d/dkappa s_breve(kappa, beta) = 1/(2 pi kappa).
double s_breve_prime(double kappa);

}  // namespace leakywire
