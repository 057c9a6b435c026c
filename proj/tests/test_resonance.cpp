#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "leakywire/bound_spectrum.hpp"
#include "leakywire/errors.hpp"
#include "leakywire/oracle/alternate_paths.hpp"
#include "leakywire/oracle/winding.hpp"
#include "leakywire/resonance.hpp"

using namespace leakywire;

namespace {

double beta_for_level(double eps) { return (kPsi1 - 0.5 * std::log(-eps / 4.0)) / kTwoPi; }

// Slope and intercept of the least-squares line through (x, y).
std::pair<double, double> line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

}  // namespace

TEST_CASE("continuation kernel") {
  const double alpha = 1.0, a = 2.0;
  for (double lambda : {-0.24, -0.125, -0.01})
    for (double t : {1e-6, 0.05, 0.3, 2.0, 9.9}) CHECK(mu0(lambda, t, alpha, a) > 0.0);

  const double lambda = -0.125, t = 0.7;
  // O(eps) approach: d/eps settles to a constant.
  std::vector<double> rate;
  for (int k = 2; k <= 8; k += 2) {
    const double e = std::pow(10.0, -k);
    rate.push_back(std::abs(mu_kernel(cplx(lambda, e), t, alpha, a) - mu0(lambda, t, alpha, a)) / e);
  }
  CHECK(rate.back() > 0.0);
  CHECK(std::abs(rate[3] / rate[2] - 1.0) < 1e-3);
  CHECK(std::abs(rate[2] / rate[1] - 1.0) < 1e-2);

  const double a_env = 0.5;
  double prev = 1e300;
  for (double T : {1e2, 1e3, 1e4, 1e5}) {
    const double env = std::exp(-2.0 * a_env * std::sqrt(T)) * alpha / (8.0 * M_PI) / std::sqrt(T);
    const double dev = std::abs(mu0(lambda, T, alpha, a_env) / env - 1.0);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 0.01);
  CHECK_THROWS_AS(mu_kernel(cplx(-0.1), 0.0, alpha, a), DomainError);
}

TEST_CASE("sheet labels and region") {
  const double alpha = 1.0;
  CHECK(SheetPoint::infer(cplx(-0.1, 0.2), alpha).label == Sheet::physical);
  CHECK(SheetPoint::infer(cplx(-0.1), alpha).label == Sheet::boundary);
  CHECK(SheetPoint::infer(cplx(-0.5), alpha).label == Sheet::physical);
  CHECK(SheetPoint::infer(cplx(-0.1, -0.02), alpha).label == Sheet::second);
  CHECK_THROWS_AS(SheetPoint::infer(cplx(0.3), alpha), DomainError);
  CHECK_THROWS_AS(SheetPoint::infer(cplx(-0.25), alpha), DomainError);
  const auto r = SecondSheetRegion::standard(alpha);
  CHECK(r.contains(cplx(-0.1, -0.1), alpha));
  CHECK_FALSE(r.contains(cplx(-0.1, -0.2), alpha));
  CHECK_FALSE(r.contains(cplx(-0.0005, -0.01), alpha));
  CHECK_FALSE(r.contains(cplx(-0.2495, -0.01), alpha));
  CHECK_THROWS_AS(phi_sheet({cplx(-0.1, -0.2), Sheet::second}, alpha, 1.0), RegionError);
  CHECK_THROWS_AS(phi_sheet({cplx(-0.1), Sheet::physical}, alpha, 1.0), PoleOnPathError);
  CHECK_THROWS_AS(phi_sheet({cplx(-0.1, 0.01), Sheet::boundary}, alpha, 1.0), DomainError);
  CHECK(sheet_symbol(Sheet::second) == '-');
}

TEST_CASE("edge-of-the-wedge matching from above and below") {
  const double alpha = 1.0, a = 2.0, lambda = -0.125;
  const cplx b0 = phi_sheet({cplx(lambda), Sheet::boundary}, alpha, a);
  for (Sheet side : {Sheet::physical, Sheet::second}) {
    const double sgn = side == Sheet::physical ? 1.0 : -1.0;
    std::vector<double> eps, dev;
    std::vector<cplx> diff;
    for (double e : {1e-3, 1e-4, 1e-5}) {
      eps.push_back(e);
      diff.push_back(phi_sheet({cplx(lambda, sgn * e), side}, alpha, a) - b0);
      dev.push_back(std::abs(diff.back()));
    }
    // |phi(lambda +- i eps) - phi0| <= C eps with a single C.
    const double C = dev[0] / eps[0];
    for (std::size_t i = 0; i < eps.size(); ++i) CHECK(dev[i] <= 1.05 * C * eps[i]);
    // Straight line through the two finest points, evaluated at eps = 0.
    const cplx intercept = (eps[1] * diff[2] - eps[2] * diff[1]) / (eps[1] - eps[2]);
    CHECK(std::abs(intercept) < 1e-8);
    CHECK(line_fit(eps, dev).first == doctest::Approx(C).epsilon(0.05));
  }
}

TEST_CASE("boundary values: Im phi0 is Im g and eta has negative imaginary part") {
  const double alpha = 1.0, a = 1.5;
  const SingleDot dot{alpha, 0.3, a};
  for (double lambda : {-0.2, -0.1, -0.02}) {
    const cplx p0 = phi_sheet({cplx(lambda), Sheet::boundary}, alpha, a);
    const double gt = 0.25 * alpha * std::exp(-alpha * a) / std::sqrt(lambda + 0.25);
    CHECK(p0.imag() == gt);
    CHECK(p0.real() == pv_integral(lambda, alpha, a));
    const cplx e = eta({cplx(lambda), Sheet::boundary}, dot);
    CHECK(e.imag() == doctest::Approx(-gt).epsilon(1e-14));
    CHECK(e.imag() < 0.0);
  }
}

TEST_CASE("eta on the physical axis equals gamma_breve and vanishes at the bound state") {
  const double alpha = 1.0, beta = 0.05, a = 1.3;
  const SingleDot dot{alpha, beta, a};
  for (double gap : {0.05, 0.2, 0.7, 2.0}) {
    const double k = 0.5 * alpha + gap;
    const cplx e = eta({cplx(-k * k), Sheet::physical}, dot);
    CHECK(std::abs(e - gamma_breve(gap, a, alpha, beta)) < 1e-12);
  }
  const auto s = kappa_single(alpha, beta, a);
  CHECK(std::abs(eta({cplx(s.energy), Sheet::physical}, dot)) < 1e-10);
}

TEST_CASE("eta grows deep in the second sheet") {
  const SingleDot dot{1.0, beta_for_level(-0.1), 4.0};
  const SecondSheetRegion deep{-0.249, -0.001, 1e6};
  double prev = 0.0;
  for (double im : {-1e-2, -1.0, -1e2, -1e4}) {
    const double v = std::abs(eta({cplx(-0.1, im), Sheet::second}, dot, sheet_quad_spec(), deep));
    CHECK(v > prev);
    prev = v;
  }
  // phi^- itself decays there: s_beta dominates.
  const cplx phi = phi_sheet({cplx(-0.1, -1e4), Sheet::second}, 1.0, 4.0, sheet_quad_spec(), deep);
  CHECK(std::abs(phi) < 1e-3 * std::abs(s_beta(cplx(-0.1, -1e4), dot.beta)));
}

TEST_CASE("single-dot pole: residual, sign, and size relative to b") {
  const double alpha = 1.0, beta = beta_for_level(-0.1);
  std::vector<ResonancePole> poles;
  for (double a : {4.0, 6.0, 8.0}) {
    const auto p = find_pole(ModelParams::single_dot(alpha, beta, a));
    CHECK(p.z.imag() < 0.0);
    CHECK(p.residual < 1e-10);
    CHECK(p.b == doctest::Approx(std::exp(-a * std::sqrt(0.1))).epsilon(1e-12));
    CHECK(p.iterations < 15);
    poles.push_back(p);
  }
  const auto fit = fit_trajectory(poles, -0.1);
  CHECK(fit.nu_slope >= 0.9);
  CHECK(fit.max_mu_over_b < 1.0);
  CHECK(fit.max_nu_over_b < 1.0);
}

TEST_CASE("pole search converges superlinearly") {
  const auto p = find_pole(ModelParams::single_dot(1.0, beta_for_level(-0.1), 6.0));
  const auto& r = p.residual_history;
  REQUIRE(r.size() >= 4);
  // Once in the asymptotic range each step gains more than a constant factor:
  // log r_{k+1} / log r_k > 1.3 for the last steps above the noise floor.
  int checked = 0;
  for (std::size_t k = 1; k + 1 < r.size(); ++k) {
    if (r[k] < 1e-3 && r[k + 1] > 1e-13) {
      CHECK(std::log(r[k + 1]) / std::log(r[k]) > 1.3);
      ++checked;
    }
  }
  CHECK(checked >= 1);
}

TEST_CASE("pole search preconditions and region exit") {
  // eps_beta below the threshold: no embedded level to continue from.
  CHECK_THROWS_AS(find_pole(ModelParams::single_dot(1.0, beta_for_level(-0.5), 4.0)), DomainError);
  CHECK_THROWS_AS(find_pole(ModelParams::single_dot(1.0, beta_for_level(-0.1), 2.0)), Error);
}

TEST_CASE("trajectory in a stays in the region down to a = 3.5 and then leaves through Re z = 0") {
  const double beta = beta_for_level(-0.1);
  PoleSearchOptions opt;
  cplx guess(-0.1);
  double last_re = -1.0;
  for (double a = 8.0; a >= 3.5; a -= 0.5) {
    opt.initial_guess = guess;
    const auto p = find_pole(ModelParams::single_dot(1.0, beta, a), opt);
    CHECK(p.z.imag() < 0.0);
    CHECK(p.z.real() > last_re);
    last_re = p.z.real();
    guess = p.z;
  }
  // Widened to the right, the zero is found with Re z > 0 at a = 3.
  opt.initial_guess = guess;
  opt.region = SecondSheetRegion{-0.249, 0.5, 0.125};
  const auto p3 = find_pole(ModelParams::single_dot(1.0, beta, 3.0), opt);
  CHECK(p3.z.real() > 0.0);
}

TEST_CASE("exactly one zero of the continued eta around the pole") {
  const SingleDot dot{1.0, beta_for_level(-0.1), 5.0};
  const auto p = find_pole(dot.model());
  auto f = [&](cplx z) { return eta(SheetPoint::infer(z, 1.0), dot); };
  CHECK(oracle::winding_zero_count(f, oracle::circle(p.z, 0.02)) == 1);
  CHECK(oracle::winding_zero_count(f, oracle::circle(p.z + cplx(0.05, 0.0), 0.02)) == 0);
}

TEST_CASE("two-point levels") {
  const double beta = 0.0;
  const auto lv = two_point_levels(1.0, beta);
  REQUIRE(lv.two_levels);
  CHECK(lv.eps1 < lv.eps2);
  CHECK(lv.eps2 < 0.0);
  const auto sc = oracle::two_point_levels_scan(1.0, beta, 1.0 / kTwoPi, 20.0);
  REQUIRE(sc.symmetric_kappas.size() == 1);
  REQUIRE(sc.antisymmetric_kappas.size() == 1);
  CHECK(sc.symmetric_kappas[0] == doctest::Approx(lv.kappa1).epsilon(1e-12));
  CHECK(sc.antisymmetric_kappas[0] == doctest::Approx(lv.kappa2).epsilon(1e-12));
  // Decoupling at large separation.
  const auto far = two_point_levels(40.0, beta);
  CHECK(std::abs(far.eps1 - epsilon_beta(beta)) < 1e-10);
  CHECK(std::abs(far.eps2 - epsilon_beta(beta)) < 1e-10);
  // No antisymmetric level once beta >= ln(2a)/2pi.
  CHECK_FALSE(two_point_levels(1.0, std::log(2.0) / kTwoPi + 1e-3).two_levels);
  const auto lit = two_point_levels<GreenNormalization::bare_k0>(8.0, 0.2);
  REQUIRE(lit.two_levels);
  CHECK(lit.eps1 < lit.eps2);
}

TEST_CASE("two-dot determinant equals det D of the mirror pair") {
  const MirrorPair pair{1.0, beta_for_level(-0.1), 3.0};
  for (double b : {0.0, 0.05})
    for (cplx z : {cplx(-0.1, 0.03), cplx(-0.6, 0.0), cplx(-0.2, 0.4)}) {
      const cplx lhs = eta_hat2(b, SheetPoint::infer(z, 1.0), pair);
      const cplx rhs = d_matrix(z, pair.model(b)).det;
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("broken mirror symmetry: embedded level at b = 0 and its expansion") {
  const MirrorPair pair{1.0, beta_for_level(-0.1), 3.0};
  const auto lv = two_point_levels(pair.a, pair.beta);
  REQUIRE(lv.two_levels);
  REQUIRE(lv.eps2 > -0.25);
  PoleSearchOptions opt;
  opt.initial_guess = cplx(lv.eps2 + 0.003, -0.002);
  const auto p0 = find_pole2(0.0, pair, opt);
  CHECK(std::abs(p0.z.imag()) < 1e-10);
  CHECK(std::abs(p0.z.real() - lv.eps2) < 1e-9);

  const auto e = two_dot_expansion(pair);
  const double h = 1e-4;
  const double slope = (find_pole2(h, pair).z.real() - find_pole2(-h, pair).z.real()) / (2 * h);
  CHECK(slope == doctest::Approx(e.mu_slope).epsilon(1e-3));

  std::vector<double> ratios;
  for (double b : {1e-2, 5e-3, 2.5e-3}) {
    const auto p = find_pole2(b, pair);
    CHECK(p.z.imag() < 0.0);
    ratios.push_back(p.z.imag() / (b * b));
  }
  // Linear-in-b approach to the limit: one Richardson step.
  const double limit = 2.0 * ratios[2] - ratios[1];
  CHECK(limit == doctest::Approx(e.nu_curvature).epsilon(5e-3));
  CHECK(e.nu_curvature < 0.0);
  CHECK(e.nu_curvature_closed_form == doctest::Approx(2.0 * e.nu_curvature));
}
