#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "leakywire/errors.hpp"
#include "leakywire/scattering.hpp"

using namespace leakywire;

namespace {
double beta_for_level(double eps) { return (kPsi1 - 0.5 * std::log(-eps / 4.0)) / kTwoPi; }
}  // namespace

TEST_CASE("amplitudes: T = 1 + R and the unitarity circle") {
  for (double a : {0.5, 2.0, 5.0}) {
    const auto m = ModelParams::single_dot(1.0, beta_for_level(-0.1), a);
    for (double lambda : lambda_grid(1.0, 60)) {
      const auto sp = amplitudes(lambda, m);
      CHECK(sp.T == 1.0 + sp.R);
      CHECK(std::abs(std::abs(sp.R + 0.5) - 0.5) < 1e-10);
      CHECK(std::norm(sp.R) + std::norm(sp.T) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(sp.momentum == doctest::Approx(std::sqrt(lambda + 0.25)).epsilon(1e-15));
    }
  }
}

TEST_CASE("amplitudes: threshold limit R -> -1") {
  const auto m = ModelParams::single_dot(1.0, beta_for_level(-0.1), 2.0);
  double prev = 1.0;
  for (double d : {1e-4, 1e-6, 1e-8}) {
    const double dev = std::abs(amplitudes(-0.25 + d, m).R + 1.0);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 1e-3);
  CHECK(std::abs(amplitudes(-0.25 + 1e-8, m).T) < 1e-3);
}

TEST_CASE("amplitudes: domain") {
  const auto m = ModelParams::single_dot(1.0, 0.0, 1.0);
  CHECK_THROWS_AS(amplitudes(-0.25, m), ThresholdError);
  CHECK_THROWS_AS(amplitudes(0.0, m), ThresholdError);
  CHECK_THROWS_AS(amplitudes(-0.3, m), ThresholdError);
  ModelParams two = m;
  two.dots.push_back({1.0, 1.0});
  two.betas.push_back(0.0);
  CHECK_THROWS_AS(amplitudes(-0.1, two), ConfigError);
  const auto g = lambda_grid(2.0, 5);
  CHECK(g.front() == doctest::Approx(-1.0 + 4e-6));
  CHECK(g.back() == doctest::Approx(-4e-6));
}

TEST_CASE("continued amplitude has its pole at the resonance") {
  const auto m = ModelParams::single_dot(1.0, beta_for_level(-0.1), 5.0);
  const auto p = find_pole(m);
  const auto ap = locate_amplitude_pole(m, p.z, 0.02);
  CHECK(std::abs(ap.z - p.z) < 1e-8);
  CHECK(ap.spread < 1e-8);
  // On the boundary the continued amplitude equals the physical one.
  const double lambda = -0.07;
  CHECK(std::abs(reflection_continued(cplx(lambda), m) - amplitudes(lambda, m).R) < 1e-15);
  CHECK_THROWS_AS(locate_amplitude_pole(m, p.z, 0.2), RegionError);
}

TEST_CASE("|R|^2 peaks near the resonance position") {
  const auto m = ModelParams::single_dot(1.0, beta_for_level(-0.1), 5.0);
  const auto p = find_pole(m);
  double best = 0.0, at = 0.0;
  for (double lambda : lambda_grid(1.0, 2001)) {
    const double r2 = std::norm(amplitudes(lambda, m).R);
    if (r2 > best) {
      best = r2;
      at = lambda;
    }
  }
  const double width = 2.0 * std::abs(p.z.imag());
  CHECK(std::abs(at - p.z.real()) < 3.0 * width);
  CHECK(best == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("guided wave far field") {
  const auto m = ModelParams::single_dot(1.0, beta_for_level(-0.1), 2.0);
  const double lambda = -0.15;
  const auto sp = amplitudes(lambda, m);
  const double k = sp.momentum;
  const double far = guided_wave_crossover(lambda, m) + 1.0;
  // Transverse profile.
  const cplx w0 = guided_wave({far, 0.0}, sp, m).value, w1 = guided_wave({far, 1.7}, sp, m).value;
  CHECK(std::abs(w1 / w0 - std::exp(-0.5 * 1.7)) < 1e-14);
  // Transmitted side: coefficient T, wavenumber k.
  CHECK(std::abs(w0 - sp.T * std::exp(cplx(0.0, k * far))) < 1e-14);
  const double h = 1e-5;
  const cplx dw = (guided_wave({far + h, 0.0}, sp, m).value - guided_wave({far - h, 0.0}, sp, m).value) / (2 * h);
  CHECK(std::abs(dw / w0 - cplx(0.0, k)) < 1e-6);
  // Reflected side: incident + R reflected.
  const cplx wl = guided_wave({-far, 0.0}, sp, m).value;
  CHECK(std::abs(wl - (std::exp(cplx(0.0, -k * far)) + sp.R * std::exp(cplx(0.0, k * far)))) < 1e-14);
  CHECK_FALSE(guided_wave({far, 0.0}, sp, m).near_zone);
  CHECK(guided_wave({0.5, 0.0}, sp, m).near_zone);
}
