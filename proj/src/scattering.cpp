#include "leakywire/scattering.hpp"

#include <cmath>
#include <numbers>

#include "leakywire/errors.hpp"

namespace leakywire {

ScatteringPoint amplitudes(double lambda, const ModelParams& model, const QuadSpec& spec) {
  const SingleDot dot = SingleDot::from(model);
  const double zeta = lambda + 0.25 * dot.alpha * dot.alpha;
  if (!(zeta > 0.0)) throw ThresholdError("amplitudes: lambda at or below the line threshold");
  if (!(lambda < 0.0)) throw ThresholdError("amplitudes: lambda at or above the channel edge 0");
  ScatteringPoint sp;
  sp.lambda = lambda;
  sp.momentum = std::sqrt(zeta);
  const cplx e = eta({cplx(lambda), Sheet::boundary}, dot, spec);
  sp.R = cplx(0.0, 0.25 * dot.alpha) * std::exp(-dot.alpha * dot.a) / (e * sp.momentum);
  sp.T = 1.0 + sp.R;
  return sp;
}

std::vector<double> lambda_grid(double alpha, int points) {
  if (points < 1) throw ConfigError("lambda_grid: need at least one point");
  const double lo = -0.25 * alpha * alpha, margin = 1e-6 * alpha * alpha;
  const double a = lo + margin, b = -margin;
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i)
    out[i] = points == 1 ? 0.5 * (a + b) : a + (b - a) * static_cast<double>(i) / (points - 1);
  return out;
}

cplx reflection_continued(cplx z, const ModelParams& model, const QuadSpec& spec,
                          std::optional<SecondSheetRegion> region) {
  const SingleDot dot = SingleDot::from(model);
  return g_line(z, dot.alpha, dot.a) / eta(SheetPoint::infer(z, dot.alpha), dot, spec, region);
}

AmplitudePole locate_amplitude_pole(const ModelParams& model, cplx center, double radius, int nodes,
                                    const QuadSpec& spec, std::optional<SecondSheetRegion> region) {
  const double alpha = model.alpha;
  const SecondSheetRegion r = region.value_or(SecondSheetRegion::standard(alpha));
  if (nodes < 8 || nodes % 2) throw ConfigError("locate_amplitude_pole: nodes must be even and >= 8");
  if (!(radius > 0.0)) throw ConfigError("locate_amplitude_pole: radius must be positive");

  // Nodes offset by half a step so none lands on the real axis.
  std::vector<cplx> zs(nodes), rs(nodes);
  const double dth = 2.0 * std::numbers::pi / nodes;
  for (int j = 0; j < nodes; ++j) {
    const cplx w = std::polar(1.0, (j + 0.5) * dth);
    zs[j] = center + radius * w;
    if (!r.contains_strip(zs[j], alpha)) throw RegionError("locate_amplitude_pole: contour leaves the region");
    rs[j] = reflection_continued(zs[j], model, spec, r);
  }
  auto moments = [&](int stride) {
    cplx m0 = 0.0, m1 = 0.0;
    for (int j = 0; j < nodes; j += stride) {
      const cplx dz = zs[j] - center;  // proportional to i r e^{i theta} dtheta
      m0 += rs[j] * dz;
      m1 += zs[j] * rs[j] * dz;
    }
    if (std::abs(m0) == 0.0) throw ConvergenceError("locate_amplitude_pole: no pole inside the contour");
    return m1 / m0;
  };
  AmplitudePole p;
  p.nodes = nodes;
  p.z = moments(1);
  // Half-resolution estimate uses every other node, which sits at odd
  // multiples of a quarter step; still off the axis.
  p.spread = std::abs(p.z - moments(2));
  return p;
}

double guided_wave_crossover(double lambda, const ModelParams& model) {
  const SingleDot dot = SingleDot::from(model);
  if (!(lambda < 0.0)) throw ThresholdError("guided_wave: lambda must be negative");
  return dot.a + std::log(1e6) / std::sqrt(-lambda);
}

GuidedWave guided_wave(Point x, const ScatteringPoint& sp, const ModelParams& model) {
  const SingleDot dot = SingleDot::from(model);
  const double y1 = model.dots[0].x1;
  const double k = sp.momentum, s = x.x1 - y1;
  const double profile = std::exp(-0.5 * dot.alpha * std::abs(x.x2));
  GuidedWave gw;
  // Phases measured from the dot's abscissa.
  if (s < 0.0) {
    gw.value = (std::exp(cplx(0.0, k * s)) + sp.R * std::exp(cplx(0.0, -k * s))) * profile;
  } else {
    gw.value = sp.T * std::exp(cplx(0.0, k * s)) * profile;
  }
  gw.near_zone = std::abs(s) < guided_wave_crossover(sp.lambda, model);
  return gw;
}

}  // namespace leakywire
