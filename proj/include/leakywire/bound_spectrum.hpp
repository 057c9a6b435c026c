#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "leakywire/operator_model.hpp"

namespace leakywire {

// An isolated eigenvalue -kappa^2 < -alpha^2/4. `gap` = kappa - alpha/2 is
// the primary coordinate; energy and kappa are derived from it.
struct BoundState {
  double energy = 0.0;
  double kappa = 0.0;
  double gap = 0.0;
  Eigen::VectorXcd null_vector;
  double solver_residual = 0.0;
};

// Eigenvalue of the point interaction alone: -4 exp(2(-2 pi beta + psi(1))).
double epsilon_beta(double beta);

// kappa of the point-interaction level, 2 exp(-2 pi beta + psi(1)).
double decoupled_kappa(double beta);

// Upper end of the bound-state scan: twice the largest decoupled kappa plus alpha.
double kappa_scan_max(const ModelParams& model);

// The unique root of gamma_breve_a in (alpha/2, inf) for one dot at
// distance a from the line. Bracketed in log(gap), refined by TOMS 748.
BoundState kappa_single(double alpha, double beta, double a,
                        const QuadSpec& spec = coupling_quad_spec());
// Same, for a one-dot model (dot at (x1, +-a)).
BoundState kappa_single(const ModelParams& model, const QuadSpec& spec = coupling_quad_spec());

struct BoundScanOptions {
  int grid_points = 400;
  QuadSpec quad = coupling_quad_spec();
};

struct BoundSpectrum {
  std::vector<BoundState> states;  // ascending energy
  double kappa_max = 0.0;
  double gap_min = 0.0;            // closest scanned approach to the threshold
  std::vector<std::string> warnings;
};

// All isolated eigenvalues of a model with n >= 1 dots. Tracks the sorted
// eigenvalues of the real symmetric D(-kappa^2) on a log grid in
// kappa - alpha/2 and polishes every zero crossing.
BoundSpectrum find_bound_states(const ModelParams& model, const BoundScanOptions& options = {});

// Eigenfunction of a single-dot model at `state`, normalised so that
// psi(y1, y2/2) = 1 (real, positive):
//   psi(x) ~ K0(kappa |x - y|)
//          + alpha int_0^inf cos(p (x1 - y1)) e^{-q(|y2| + |x2|)} / (q (2q - alpha)) dp.
// Throws DomainError at x = y.
double eigenfunction_value(Point x, const BoundState& state, const ModelParams& model,
                           const QuadSpec& spec = coupling_quad_spec());

}  // namespace leakywire
