#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "leakywire/bound_spectrum.hpp"
#include "leakywire/errors.hpp"
#include "leakywire/resonance.hpp"

using namespace leakywire;

namespace {

ModelParams make_model(double alpha, std::vector<Point> dots, std::vector<double> betas) {
  ModelParams m;
  m.alpha = alpha;
  m.dots = std::move(dots);
  m.betas = std::move(betas);
  return m;
}

double beta_for_level(double eps) { return (kPsi1 - 0.5 * std::log(-eps / 4.0)) / kTwoPi; }

}  // namespace

TEST_CASE("point-interaction level") {
  CHECK(epsilon_beta(0.0) == doctest::Approx(-1.26096).epsilon(1e-5));
  for (double b : {-1.0, 0.0, 1.0}) {
    CHECK(std::abs(s_breve(std::sqrt(-epsilon_beta(b)), b)) < 1e-14);
    CHECK(decoupled_kappa(b) == doctest::Approx(std::sqrt(-epsilon_beta(b))).epsilon(1e-14));
  }
  double prev = -1e300;
  for (double b = -2.0; b <= 4.0; b += 0.25) {
    const double e = epsilon_beta(b);
    CHECK(e < 0.0);
    CHECK(e > prev);
    prev = e;
  }
  CHECK(epsilon_beta(8.0) > -1e-20);
}

TEST_CASE("single dot: root, residual and bracket") {
  for (double alpha : {0.5, 1.0, 2.0})
    for (double beta : {-1.0, 0.0, 1.0})
      for (double a : {0.2, 1.0, 5.0}) {
        const auto s = kappa_single(alpha, beta, a);
        CHECK(s.kappa > 0.5 * alpha);
        CHECK(s.solver_residual < 1e-10);
        CHECK(std::abs(gamma_breve(s.gap, a, alpha, beta)) < 1e-10);
        CHECK(s.energy < -0.25 * alpha * alpha);
        CHECK(s.energy == doctest::Approx(-s.kappa * s.kappa).epsilon(1e-14));
      }
}

TEST_CASE("single dot: the level rises with the distance and tends to min(eps_beta, threshold)") {
  const double alpha = 1.0;
  for (double eps : {-0.1, -0.5}) {
    const double beta = beta_for_level(eps);
    double prev = -1e300;
    for (double a = 0.2; a <= 12.0; a += 0.4) {
      const double e = kappa_single(alpha, beta, a).energy;
      CHECK(e > prev);
      prev = e;
    }
    CHECK(std::abs(prev - std::min(eps, -0.25)) < 1e-2);
  }
}

TEST_CASE("single dot: finite limit as the dot approaches the line") {
  std::vector<double> ks;
  for (double a : {1e-2, 1e-3, 1e-4, 1e-5}) ks.push_back(kappa_single(1.0, 0.2, a).kappa);
  CHECK(std::abs(ks[1] - ks[0]) > std::abs(ks[2] - ks[1]));
  CHECK(std::abs(ks[2] - ks[1]) > std::abs(ks[3] - ks[2]));
  CHECK(std::abs(ks[3] - ks[2]) < 1e-3 * ks[3]);
}

TEST_CASE("bound-state scan: one dot matches the scalar root") {
  const auto m = ModelParams::single_dot(1.0, 0.2, 1.0);
  const auto sp = find_bound_states(m);
  REQUIRE(sp.states.size() == 1);
  const auto s = kappa_single(m);
  CHECK(std::abs(sp.states[0].kappa - s.kappa) < 1e-10);
  CHECK(std::abs(sp.states[0].null_vector(0)) == doctest::Approx(1.0));
}

TEST_CASE("bound-state scan: strong mirror pair has two levels") {
  // Splitting ~ K0(2 a kappa_beta) underflows: the pair is degenerate in
  // double precision, only the count is meaningful.
  const auto strong = find_bound_states(make_model(1.0, {{0.0, 1.0}, {0.0, -1.0}}, {-2.0, -2.0}));
  CHECK(strong.states.size() == 2);

  const auto m = make_model(0.5, {{0.0, 1.0}, {0.0, -1.0}}, {0.0, 0.0});
  const auto sp = find_bound_states(m);
  REQUIRE(sp.states.size() == 2);
  CHECK(sp.states[0].energy < sp.states[1].energy - 1e-3);
  // The odd state does not feel the line: its level is the decoupled one.
  CHECK(sp.states[1].energy == doctest::Approx(two_point_levels(1.0, 0.0).eps2).epsilon(1e-10));
  // Even and odd null vectors.
  const auto& v0 = sp.states[0].null_vector;
  const auto& v1 = sp.states[1].null_vector;
  CHECK(std::abs(v0(0) - v0(1)) < 1e-8 * std::abs(v0(0)));
  CHECK(std::abs(v1(0) + v1(1)) < 1e-8 * std::abs(v1(0)));
  for (const auto& s : sp.states) {
    const auto d = d_matrix_offset(cplx(offset_from_gap(s.gap, 0.5)), m);
    CHECK((d.entries * s.null_vector).norm() < 1e-9);
  }
}

TEST_CASE("bound-state scan: embedded antisymmetric level is not reported") {
  // eps2 of the decoupled pair lies in (-1/4, 0); only the symmetric level
  // sits below the threshold.
  const auto m = make_model(1.0, {{0.0, 3.0}, {0.0, -3.0}}, {beta_for_level(-0.1), beta_for_level(-0.1)});
  const auto sp = find_bound_states(m);
  REQUIRE(sp.states.size() == 1);
  CHECK(sp.states[0].energy < -0.25);
}

TEST_CASE("bound-state scan: 1 <= N <= n and strong dots give N = n") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ua(0.5, 2.0), ub(-1.0, 1.0), ux(-2.0, 2.0), uy(0.3, 2.5), us(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 4;
    ModelParams m;
    m.alpha = ua(rng);
    for (int i = 0; i < n; ++i) {
      m.dots.push_back({ux(rng), (us(rng) < 0.5 ? -1.0 : 1.0) * uy(rng)});
      m.betas.push_back(ub(rng));
    }
    const auto sp = find_bound_states(m);
    CHECK(sp.states.size() >= 1);
    CHECK(static_cast<int>(sp.states.size()) <= n);
    for (auto& b : m.betas) b = -2.0;
    CHECK(static_cast<int>(find_bound_states(m).states.size()) == n);
  }
}

TEST_CASE("adding a dot never lowers the count (empirical)") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ub(-0.6, 0.6), ux(-2.0, 2.0), uy(0.3, 2.0);
  ModelParams m;
  m.alpha = 1.0;
  std::size_t prev = 0;
  for (int i = 0; i < 4; ++i) {
    m.dots.push_back({ux(rng), uy(rng) * (i % 2 ? -1.0 : 1.0)});
    m.betas.push_back(ub(rng));
    const auto count = find_bound_states(m).states.size();
    CHECK(count >= prev);
    prev = count;
  }
}

TEST_CASE("eigenfunction: normalisation, symmetry, singular behaviour") {
  const double alpha = 1.0, beta = 0.1, a = 1.2;
  const auto m = ModelParams::single_dot(alpha, beta, a);
  const auto s = kappa_single(m);
  CHECK(eigenfunction_value({0.0, a / 2}, s, m) == doctest::Approx(1.0).epsilon(1e-12));
  for (Point x : {Point{0.7, 0.3}, Point{2.0, -1.0}, Point{0.4, 2.5}})
    CHECK(eigenfunction_value(x, s, m) == doctest::Approx(eigenfunction_value({-x.x1, x.x2}, s, m)).epsilon(1e-10));
  CHECK_THROWS_AS(eigenfunction_value({0.0, a}, s, m), DomainError);

  // psi ~ A(-ln r) + B near the dot with A > 0 and B/A = 2 pi beta.
  auto at = [&](double r) { return eigenfunction_value({r, a}, s, m); };
  const double r1 = 1e-4, r2 = 1e-5;
  const double A = (at(r2) - at(r1)) / (std::log(r1) - std::log(r2));
  const double B = at(r1) + A * std::log(r1);
  CHECK(A > 0.0);
  CHECK(at(1e-3) / -std::log(1e-3) > 0.0);
  CHECK(B / A == doctest::Approx(kTwoPi * beta).epsilon(1e-3));
}

TEST_CASE("eigenfunction: square norm converges on growing discs") {
  const double alpha = 1.0, beta = -0.1, a = 1.0;
  const auto m = ModelParams::single_dot(alpha, beta, a);
  const auto s = kappa_single(m);
  const double decay = std::sqrt(s.kappa * s.kappa - 0.25 * alpha * alpha);
  const double R = 8.0 / decay;
  // Polar quadrature centred on the dot.
  auto disc = [&](double r_lo, double r_hi) {
    boost::math::quadrature::gauss<double, 30> gl;
    const int nth = 96;
    double total = 0.0;
    for (int j = 0; j < nth; ++j) {
      const double th = (j + 0.5) * 2.0 * M_PI / nth;
      auto radial = [&](double r) {
        const double v = eigenfunction_value({r * std::cos(th), a + r * std::sin(th)}, s, m);
        return v * v * r;
      };
      double sub = 0.0, lo = r_lo;
      for (double hi = std::max(r_lo, 0.25); lo < r_hi; hi = std::min(2.0 * hi, r_hi)) {
        sub += gl.integrate(radial, lo, hi);
        lo = hi;
      }
      total += sub * 2.0 * M_PI / nth;
    }
    return total;
  };
  const double inner = disc(0.0, R);
  const double tail = disc(R, 2.0 * R);
  CHECK(inner > 0.0);
  CHECK(tail / (inner + tail) < 1e-2);
}
