#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "leakywire/errors.hpp"
#include "leakywire/operator_model.hpp"
#include "leakywire/oracle/alternate_paths.hpp"

using namespace leakywire;

namespace {

ModelParams two_dots(double alpha, Point p, Point q, double b1, double b2) {
  ModelParams m;
  m.alpha = alpha;
  m.dots = {p, q};
  m.betas = {b1, b2};
  return m;
}

}  // namespace

TEST_CASE("model validation") {
  CHECK_NOTHROW(ModelParams::single_dot(1.0, 0.0, 1.0).validate());
  CHECK_THROWS_AS(ModelParams::single_dot(0.0, 0.0, 1.0).validate(), ConfigError);
  CHECK_THROWS_AS(ModelParams::single_dot(1.0, 0.0, 0.0).validate(), ConfigError);
  CHECK_THROWS_AS(two_dots(1.0, {0, 1}, {0, 1}, 0, 0).validate(), ConfigError);
  ModelParams m = ModelParams::single_dot(1.0, 0.0, 1.0);
  m.betas.push_back(1.0);
  CHECK_THROWS_AS(m.validate(), ConfigError);
  CHECK(m.threshold() == -0.25);
}

TEST_CASE("Gamma00 multiplier") {
  const double alpha = 1.3;
  for (double k : {0.7, 1.0, 4.0}) {
    CHECK(std::abs(gamma00_multiplier(0.0, cplx(-k * k), alpha) - (1.0 / alpha - 0.5 / k)) < 1e-15);
    for (double p : {0.0, 0.4, 3.0}) {
      const cplx m = gamma00_multiplier(p, cplx(-k * k), alpha);
      CHECK(m.imag() == 0.0);
      CHECK(m.real() > 0.0);
    }
  }
  // Zero locus p^2 + kappa^2 = alpha^2/4.
  const double k = 0.4, p = std::sqrt(0.25 * alpha * alpha - k * k);
  CHECK_THROWS_AS(gamma00_multiplier(p, cplx(-k * k), alpha), ThresholdError);
  CHECK(std::abs(gamma00_multiplier(p * (1 + 1e-6), cplx(-k * k), alpha)) < 1e-5);
}

TEST_CASE("on-axis phi: alternate substitution, decay and monotonicity in a") {
  // alpha = 1, a = 1, kappa = 1 (gap 0.5).
  const double v = phi_breve(0.5, 1.0, 1.0);
  CHECK(std::abs(v - oracle::phi_breve_sinh(0.5, 1.0, 1.0)) < 1e-9);
  CHECK(v == doctest::Approx(0.0139746641065352).epsilon(1e-12));
  const auto m = ModelParams::single_dot(1.0, 0.0, 1.0);
  CHECK(std::abs(phi_kl(cplx(-1.0), 0, 0, m) - v) < 1e-14);
  double prev = std::numeric_limits<double>::infinity();
  for (double a : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 80.0}) {
    const double x = phi_breve(0.2, a, 1.0);
    CHECK(x > 0.0);
    CHECK(x < prev);
    prev = x;
  }
  CHECK(prev < 1e-30);
  for (double gap : {1e-9, 1e-3, 2.0})
    CHECK(std::abs(phi_breve(gap, 0.7, 1.0) - oracle::phi_breve_sinh(gap, 0.7, 1.0)) <
          1e-9 * std::max(1.0, phi_breve(gap, 0.7, 1.0)));
}

TEST_CASE("general-position phi_kl against a direct cosine integral") {
  const auto m = two_dots(1.2, {0.0, 0.8}, {1.5, -0.4}, 0.0, 0.0);
  const double kappa = 0.9, z = -kappa * kappa;
  auto f = [&](double p) {
    const double q = std::sqrt(p * p + kappa * kappa);
    return std::cos(1.5 * p) * std::exp(-1.2 * q) / (q * (2 * q - 1.2));
  };
  boost::math::quadrature::exp_sinh<double> es;
  const double direct = 1.2 / (2 * M_PI) * es.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
  CHECK(std::abs(phi_kl(cplx(z), 0, 1, m) - direct) < 1e-10);
  CHECK(std::abs(phi_kl(cplx(z), 0, 1, m) - phi_kl(cplx(z), 1, 0, m)) < 1e-15);
}

TEST_CASE("D matrix structure") {
  SUBCASE("one dot reduces to gamma_breve") {
    const auto m = ModelParams::single_dot(1.0, 0.3, 1.7);
    for (double gap : {1e-12, 1e-6, 0.1, 3.0}) {
      const auto d = d_matrix_offset(cplx(offset_from_gap(gap, 1.0)), m);
      CHECK(std::abs(d.det - gamma_breve(gap, 1.7, 1.0, 0.3)) < 1e-12);
    }
    // Addressed by z, accuracy is limited by rounding of z + alpha^2/4.
    for (double gap : {0.1, 3.0}) {
      const double k = 0.5 + gap;
      CHECK(std::abs(d_matrix(cplx(-k * k), m).det - gamma_breve(gap, 1.7, 1.0, 0.3)) < 1e-12);
    }
  }
  SUBCASE("no dots") {
    ModelParams m;
    m.alpha = 1.0;
    const auto d = d_matrix(cplx(-2.0), m);
    CHECK(d.entries.size() == 0);
    CHECK(d.det == cplx(1.0));
  }
  SUBCASE("mirror pair commutes with the swap") {
    const auto m = two_dots(1.0, {0.3, 1.1}, {0.3, -1.1}, -0.2, -0.2);
    const auto d = d_matrix(cplx(-0.7, 0.2), m);
    CHECK(std::abs(d.entries(0, 0) - d.entries(1, 1)) < 1e-14);
    CHECK(std::abs(d.entries(0, 1) - d.entries(1, 0)) < 1e-14);
  }
  SUBCASE("real and symmetric below the threshold") {
    const auto m = two_dots(1.0, {0.0, 0.5}, {1.0, -1.5}, 0.1, -0.3);
    const auto d = d_matrix(cplx(-0.4), m);
    CHECK(d.entries.imag().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(d.entries(0, 1) - d.entries(1, 0)) < 1e-14);
    // Off-diagonal free Green's term carries 1/2pi.
    const double r = std::hypot(1.0, 2.0);
    const cplx phi01 = phi_kl(cplx(-0.4), 0, 1, m);
    CHECK(std::abs(d.entries(0, 1) - (-macdonald_k0(cplx(std::sqrt(0.4) * r)) / kTwoPi - phi01)) < 1e-14);
  }
  SUBCASE("Hermitian-analytic reflection") {
    const auto m = two_dots(0.8, {0.0, 0.5}, {1.0, -1.5}, 0.1, -0.3);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> re(-3.0, 2.0), im(0.01, 2.0);
    for (int i = 0; i < 6; ++i) {
      const cplx z(re(rng), im(rng));
      const auto a = d_matrix(z, m), b = d_matrix(std::conj(z), m);
      CHECK((a.entries.conjugate() - b.entries).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("offset addressing agrees") {
    const auto m = two_dots(1.0, {0.0, 0.5}, {1.0, -1.5}, 0.1, -0.3);
    const cplx z(-0.9, 0.3);
    const auto a = d_matrix(z, m), b = d_matrix_offset(z + 0.25, m);
    CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() < 1e-13);
  }
  SUBCASE("spectrum contact") {
    const auto m = ModelParams::single_dot(1.0, 0.0, 1.0);
    CHECK_THROWS_AS(d_matrix(cplx(-0.1), m), PoleOnPathError);
    CHECK_THROWS_AS(d_matrix(cplx(-0.25), m), PoleOnPathError);
    CHECK_THROWS_AS(d_matrix(cplx(1.0), m), DomainError);
  }
}

TEST_CASE("gamma_breve strictly increasing on (alpha/2, inf)") {
  for (double a : {0.2, 1.0, 5.0}) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 60; ++i) {
      const double gap = std::pow(10.0, -12.0 + 0.22 * i);
      const double g = gamma_breve(gap, a, 1.0, 0.1);
      CHECK(g > prev);
      prev = g;
    }
  }
}

TEST_CASE("condition estimate grows near a zero of det D") {
  const auto m = two_dots(1.0, {0.0, 1.0}, {0.0, -1.0}, -0.2, -0.2);
  const auto far = d_matrix(cplx(-30.0), m);
  CHECK(std::isfinite(far.cond_estimate));
  CHECK(far.cond_estimate < 1e3);
}
