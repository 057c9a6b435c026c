#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "leakywire/quadrature.hpp"
#include "leakywire/specfun.hpp"

namespace leakywire {

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

// Line Sigma = {x2 = 0} with attractive strength alpha plus point
// interactions at `dots`. betas are the boundary-condition parameters
// (2 pi beta Xi = Omega), not formal coupling constants.
struct ModelParams {
  double alpha = 1.0;
  std::vector<Point> dots;
  std::vector<double> betas;

  std::size_t size() const { return dots.size(); }
  double threshold() const { return -0.25 * alpha * alpha; }
  // Throws ConfigError unless alpha > 0, every dot is off the line, dots are
  // pairwise distinct and there is one beta per dot.
  void validate() const;

  static ModelParams single_dot(double alpha, double beta, double a);
};

// Reduced determinant D(z) = Gamma11 - Gamma10 Gamma00^{-1} Gamma01.
struct DMatrix {
  cplx z;
  Eigen::MatrixXcd entries;
  cplx det{1.0, 0.0};
  // 1-norm condition number estimate (infinite when numerically singular).
  double cond_estimate = 1.0;
};

// Default quadrature for the Fourier-space couplings.
QuadSpec coupling_quad_spec();

// Momentum-space multiplier of Gamma00(z) = 1/alpha - R_{0,0}(z):
// 1/alpha - 1/(2 sqrt(p^2 - z)). Throws ThresholdError if its modulus falls
// below 1e-14.
cplx gamma00_multiplier(double p, cplx z, double alpha);

// (Gamma10 Gamma00^{-1} Gamma01)_{kl}:
//   (alpha/4pi) int_R e^{ip(y1k - y1l)} e^{-q(|y2k| + |y2l|)} / (q (2q - alpha)) dp,
// q = sqrt(p^2 - z), Re q > 0. Throws PoleOnPathError for z in [-alpha^2/4, inf).
cplx phi_kl(cplx z, std::size_t k, std::size_t l, const ModelParams& model,
            const QuadSpec& spec = coupling_quad_spec());

DMatrix d_matrix(cplx z, const ModelParams& model, const QuadSpec& spec = coupling_quad_spec());

// Same quantities addressed by the offset zeta = z + alpha^2/4 from the line
// threshold. 2q - alpha is formed as 2(p^2 - zeta)/(q + alpha/2), which keeps
// full relative accuracy for states exponentially close to the threshold.
cplx phi_kl_offset(cplx zeta, std::size_t k, std::size_t l, const ModelParams& model,
                   const QuadSpec& spec = coupling_quad_spec());
DMatrix d_matrix_offset(cplx zeta, const ModelParams& model,
                        const QuadSpec& spec = coupling_quad_spec());

// Threshold offset of z = -kappa^2 with kappa = alpha/2 + gap.
inline double offset_from_gap(double gap, double alpha) { return -gap * (alpha + gap); }

// Real symmetric D(-kappa^2), kappa = alpha/2 + gap, gap > 0.
Eigen::MatrixXd d_matrix_below_threshold(double gap, const ModelParams& model,
                                         const QuadSpec& spec = coupling_quad_spec());

// Single dot at distance a from the line, on the real axis below threshold:
//   phi_breve_a(kappa) = (alpha/4pi) int_R e^{-2 q a} / ((2q - alpha) q) dp,
//   q = sqrt(p^2 + kappa^2),
// and gamma_breve_a(kappa) = s_breve_beta(kappa) - phi_breve_a(kappa).
double phi_breve(double gap, double a, double alpha, const QuadSpec& spec = coupling_quad_spec());
double gamma_breve(double gap, double a, double alpha, double beta,
                   const QuadSpec& spec = coupling_quad_spec());

// Free Green's function (1/2pi) K0(sqrt(-z) r).
cplx free_green(cplx z, double r);

}  // namespace leakywire
