#include "leakywire/oracle/alternate_paths.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "leakywire/errors.hpp"

namespace leakywire::oracle {

namespace {

constexpr double kEulerGamma = 0.57721566490153286;

double s_breve_local(double kappa, double beta) {
  return beta + (std::log(kappa / 2.0) + kEulerGamma) / (2.0 * std::numbers::pi);
}

template <class F>
std::vector<double> scan_roots(F&& f, double lo, double hi, int points) {
  std::vector<double> roots;
  double x0 = lo, f0 = f(lo);
  for (int i = 1; i <= points; ++i) {
    const double x1 = lo * std::pow(hi / lo, static_cast<double>(i) / points);
    const double f1 = f(x1);
    if ((f0 < 0.0) != (f1 < 0.0)) {
      double a = x0, b = x1, fa = f0;
      for (int k = 0; k < 200 && b - a > 1e-16 * b; ++k) {
        const double m = 0.5 * (a + b), fm = f(m);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace

double phi_breve_sinh(double gap, double a, double alpha) {
  if (!(gap > 0.0) || !(a > 0.0) || !(alpha > 0.0)) throw DomainError("phi_breve_sinh: need gap, a, alpha > 0");
  const double kappa = 0.5 * alpha + gap;
  auto f = [&](double u) {
    const double c = std::cosh(u);
    // 2 kappa cosh u - alpha = 2 gap cosh u + alpha (cosh u - 1), kept positive
    const double den = 2.0 * gap * c + 2.0 * alpha * std::sinh(0.5 * u) * std::sinh(0.5 * u);
    return std::exp(-2.0 * a * kappa * c) / den;
  };
  boost::math::quadrature::exp_sinh<double> es(20);
  return alpha / (2.0 * std::numbers::pi) * es.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-14);
}

double line_kernel_example() {
  auto f = [](double v) { return 2.0 * std::exp(-2.0 * v) / (2.0 * v - 1.0); };
  boost::math::quadrature::exp_sinh<double> es(20);
  return es.integrate(f, 1.0, std::numeric_limits<double>::infinity(), 1e-15);
}

ScannedLevels two_point_levels_scan(double a, double beta, double green_factor, double kappa_max, int points) {
  if (!(a > 0.0) || !(kappa_max > 0.0)) throw DomainError("two_point_levels_scan: need a, kappa_max > 0");
  auto k0 = [&](double k) { return boost::math::cyl_bessel_k(0, 2.0 * a * k); };
  const double lo = kappa_max * 1e-14;
  ScannedLevels out;
  out.symmetric_kappas = scan_roots([&](double k) { return s_breve_local(k, beta) - green_factor * k0(k); }, lo,
                                    kappa_max, points);
  out.antisymmetric_kappas = scan_roots([&](double k) { return s_breve_local(k, beta) + green_factor * k0(k); }, lo,
                                        kappa_max, points);
  return out;
}

}  // namespace leakywire::oracle
