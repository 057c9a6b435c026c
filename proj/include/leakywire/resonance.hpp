#pragma once

#include <optional>
#include <vector>

#include "leakywire/operator_model.hpp"
#include "leakywire/quadrature.hpp"

namespace leakywire {

// Branch label l(z) of the continued determinant.
enum class Sheet {
  physical,  // '+': Im z > 0 (or any z off [-alpha^2/4, inf) on the physical sheet)
  boundary,  // '0': z real in (-alpha^2/4, 0)
  second,    // '-': continued region below the window (-alpha^2/4, 0)
};

char sheet_symbol(Sheet s);

// Implemented second-sheet region: the rectangle
//   Re z in (re_min, re_max), Im z in (-depth, 0).
// Standard: re_min = -alpha^2/4 + delta, re_max = -delta, delta = 1e-3 alpha^2,
// depth = alpha^2/8. re_min may not go below -alpha^2/4.
struct SecondSheetRegion {
  double re_min = 0.0;
  double re_max = 0.0;
  double depth = 0.0;

  static SecondSheetRegion standard(double alpha);
  bool contains(cplx z, double alpha) const;
  // Iteration domain of the pole solvers: the rectangle mirrored into the
  // physical half-plane as well.
  bool contains_strip(cplx z, double alpha) const;
};

struct SheetPoint {
  cplx z;
  Sheet label = Sheet::physical;

  // l(z) from the position of z: Im z > 0 -> '+', real and inside the
  // window -> '0', real below the threshold -> '+', Im z < 0 -> '-'.
  static SheetPoint infer(cplx z, double alpha);
};

// A single dot at distance a from the line.
struct SingleDot {
  double alpha = 1.0;
  double beta = 0.0;
  double a = 1.0;

  static SingleDot from(const ModelParams& model);
  ModelParams model() const { return ModelParams::single_dot(alpha, beta, a); }
};

// Default quadrature for the continued t-integrals.
QuadSpec sheet_quad_spec();

// mu(z, t) = (alpha/16pi) (alpha + 2q) e^{-2aq} / (sqrt(t) q), q = sqrt(t - z),
// i.e. the (z - t)^{1/2} = i q branch. Continuous from Im z > 0
// onto the window, analytic across it. Throws DomainError for t <= 0.
cplx mu_kernel(cplx z, double t, double alpha, double a);

// Boundary value mu0(lambda, t) = lim mu(lambda + i eps, t), real and positive.
double mu0(double lambda, double t, double alpha, double a);

// g_{alpha,a}(z) = (i alpha / 4) e^{-alpha a} / sqrt(z + alpha^2/4).
cplx g_line(cplx z, double alpha, double a);

// phi^{l(z)}_a(z):
//   '+': int_0^inf mu(z,t)/(t - z - alpha^2/4) dt
//   '0': I(lambda) + g(lambda), I the principal value
//   '-': int_0^inf mu(z,t)/(t - z - alpha^2/4) dt + 2 g(z)
// The '-' branch is the analytic continuation of '+' through the window.
cplx phi_sheet(const SheetPoint& point, double alpha, double a, const QuadSpec& spec = sheet_quad_spec(),
               std::optional<SecondSheetRegion> region = std::nullopt);

// Principal-value part I(lambda) for lambda in (-alpha^2/4, 0).
double pv_integral(double lambda, double alpha, double a, const QuadSpec& spec = sheet_quad_spec());

// eta_a(z) = s_beta(z) - phi^{l(z)}_a(z).
cplx eta(const SheetPoint& point, const SingleDot& dot, const QuadSpec& spec = sheet_quad_spec(),
         std::optional<SecondSheetRegion> region = std::nullopt);

struct PoleSearchOptions {
  std::optional<cplx> initial_guess;
  int max_iterations = 80;
  // Acceptance: |residual| <= residual_tol * max(1, |s_beta(z)|).
  double residual_tol = 1e-10;
  std::optional<SecondSheetRegion> region;
  QuadSpec quad = sheet_quad_spec();
};

struct ResonancePole {
  cplx z;
  ModelParams model;
  double b = 0.0;  // e^{-a sigma_beta} (one dot) or the coupling offset (two dots)
  double residual = 0.0;
  int iterations = 0;
  std::vector<cplx> iterates;
  std::vector<double> residual_history;
};

// sigma_beta = sqrt(-epsilon_beta) and b = exp(-a sigma_beta).
double sigma_beta(double beta);
double reparametrized_b(double a, double beta);

// Second-sheet zero of eta_a, searched from epsilon_beta by a damped secant
// iteration (derivative fallback, step halving at the region boundary).
// Requires epsilon_beta in (-alpha^2/4, 0).
ResonancePole find_pole(const ModelParams& model, const PoleSearchOptions& options = {});

struct TrajectoryFit {
  double nu_slope = 0.0;       // d log|nu| / d log b
  double mu_slope = 0.0;       // d log|mu - eps_beta| / d log b
  double max_mu_over_b = 0.0;  // max |mu - eps_beta| / b
  double max_nu_over_b = 0.0;  // max |nu| / b
};
TrajectoryFit fit_trajectory(const std::vector<ResonancePole>& poles, double eps_beta);

// ---- Two mirror dots (0, a), (0, -a) with betas (beta, beta + b) ----

// Normalisation of the K0 Green's factors in the two-dot equation.
// `consistent` carries the 1/2pi of the free Green's function; `bare_k0`
// drops it.
enum class GreenNormalization { consistent, bare_k0 };

struct MirrorPair {
  double alpha = 1.0;
  double beta = 0.0;
  double a = 1.0;

  ModelParams model(double b = 0.0) const;
};

struct TwoPointLevels {
  double eps1 = 0.0;
  double eps2 = 0.0;  // larger level (antisymmetric branch)
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  bool two_levels = false;
};

// Levels of the two identical decoupled point interactions spaced 2a apart:
// s_breve_beta(kappa) = +-c K0(2 a kappa), c = 1/2pi (consistent) or 1.
template <GreenNormalization N = GreenNormalization::consistent>
TwoPointLevels two_point_levels(double a, double beta);

// s(s + b) - G^2 - (2s + b) phi - 2 G phi with G = c K0(2a sqrt(-z)).
template <GreenNormalization N = GreenNormalization::consistent>
cplx eta_hat2(double b, const SheetPoint& point, const MirrorPair& pair,
              const QuadSpec& spec = sheet_quad_spec(),
              std::optional<SecondSheetRegion> region = std::nullopt);

template <GreenNormalization N = GreenNormalization::consistent>
ResonancePole find_pole2(double b, const MirrorPair& pair, const PoleSearchOptions& options = {});

// Small-b expansion coefficients of z2(b) = mu2(b) + i nu2(b).
struct TwoDotExpansion {
  double eps2 = 0.0;
  double kappa2 = 0.0;
  double s_prime = 0.0;      // d/dkappa s_breve at kappa2
  double green_prime = 0.0;  // d/dkappa c K0(2 a kappa) at kappa2
  double g_tilde = 0.0;      // -i g(eps2)
  cplx phi0;                 // phi^0_a(eps2)
  double mu_slope = 0.0;     // kappa2 / (s_prime + green_prime)
  // Leading b^2 coefficient of nu2: the closed form
  //   -kappa2 g_tilde / (2 (s_prime + green_prime) |s_breve - phi0|^2)
  // and the coefficient of a direct second-order expansion of the
  // determinant, which has 4 in place of 2.
  double nu_curvature_closed_form = 0.0;
  double nu_curvature = 0.0;
};

template <GreenNormalization N = GreenNormalization::consistent>
TwoDotExpansion two_dot_expansion(const MirrorPair& pair, const QuadSpec& spec = sheet_quad_spec());

}  // namespace leakywire
