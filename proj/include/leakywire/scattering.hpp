#pragma once

#include <vector>

#include "leakywire/resonance.hpp"

namespace leakywire {

// Guided-channel scattering at energy lambda in (-alpha^2/4, 0). Only the
// transverse mode e^{-alpha|x2|/2} is open there, so R and T form the whole
// (1x1) S-matrix.
struct ScatteringPoint {
  double lambda = 0.0;
  double momentum = 0.0;  // (lambda + alpha^2/4)^{1/2}
  cplx R;
  cplx T;
};

// R(lambda) = (i/4) alpha e^{-alpha a} / (eta(lambda) (lambda + alpha^2/4)^{1/2}),
// T = 1 + R. Throws ThresholdError at or outside the window ends.
ScatteringPoint amplitudes(double lambda, const ModelParams& model, const QuadSpec& spec = sheet_quad_spec());

// lambda grid on (-alpha^2/4, 0), ends kept 1e-6 alpha^2 away.
std::vector<double> lambda_grid(double alpha, int points);

// The same expression continued to complex z on M (label inferred).
cplx reflection_continued(cplx z, const ModelParams& model, const QuadSpec& spec = sheet_quad_spec(),
                          std::optional<SecondSheetRegion> region = std::nullopt);

struct AmplitudePole {
  cplx z;
  double spread = 0.0;  // |z(N nodes) - z(N/2 nodes)|
  int nodes = 0;
};

// Pole of the continued reflection amplitude inside the circle |z - center| =
// radius, from the contour moments  int z R dz / int R dz  (trapezoid rule).
// Requires exactly one simple pole inside; the circle must stay within the
// strip of the region.
AmplitudePole locate_amplitude_pole(const ModelParams& model, cplx center, double radius, int nodes = 128,
                                    const QuadSpec& spec = sheet_quad_spec(),
                                    std::optional<SecondSheetRegion> region = std::nullopt);

struct GuidedWave {
  cplx value;
  bool near_zone = false;  // |x1| below the far-field crossover: asymptotic form inaccurate
};

// Far-field form of the generalized eigenfunction,
//   x1 -> -inf: (e^{ik x1} + R e^{-ik x1}) e^{-alpha|x2|/2}
//   x1 -> +inf:  T e^{ik x1} e^{-alpha|x2|/2},
// k = (lambda + alpha^2/4)^{1/2}. near_zone is set for |x1| below
// guided_wave_crossover.
GuidedWave guided_wave(Point x, const ScatteringPoint& sp, const ModelParams& model);

// |x1| beyond which the evanescent remainder, decaying like
// e^{-sqrt(-lambda) |x - y|}, has dropped below 1e-6: a + ln(1e6)/sqrt(-lambda).
double guided_wave_crossover(double lambda, const ModelParams& model);

}  // namespace leakywire
