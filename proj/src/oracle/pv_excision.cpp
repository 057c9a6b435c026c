#include "leakywire/oracle/pv_excision.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "leakywire/errors.hpp"

namespace leakywire::oracle {

namespace {

double excised_integral(const std::function<double(double)>& f, double t0, double lo, double hi, double eps) {
  auto g = [&](double t) { return f(t) / (t - t0); };
  boost::math::quadrature::tanh_sinh<double> ts(15);
  double left = ts.integrate(g, lo, t0 - eps, 1e-14);
  double right;
  if (std::isfinite(hi)) {
    right = ts.integrate(g, t0 + eps, hi, 1e-14);
  } else {
    // Finite stretch first, exp-sinh beyond.
    const double mid = t0 + eps + 1.0;
    boost::math::quadrature::exp_sinh<double> es(15);
    right = ts.integrate(g, t0 + eps, mid, 1e-14) + es.integrate(g, mid, hi, 1e-14);
  }
  return left + right;
}

}  // namespace

std::vector<double> default_eps_list(double t0, double lo) {
  const double e0 = 1e-2 * std::min(1.0, t0 - lo);
  return {e0, e0 / 2, e0 / 4, e0 / 8, e0 / 16};
}

ExcisionReference pv_excision_reference(const std::function<double(double)>& f, double t0, double lo, double hi,
                                        const std::vector<double>& eps_list) {
  const std::size_t m = eps_list.size();
  if (m < 4) throw ConfigError("pv_excision_reference: need at least four eps values");
  for (std::size_t i = 0; i < m; ++i) {
    if (!(eps_list[i] > 0.0) || !(eps_list[i] < t0 - lo) || (std::isfinite(hi) && !(eps_list[i] < hi - t0)))
      throw ConfigError("pv_excision_reference: eps outside (0, distance to the ends)");
    if (i && !(eps_list[i] < eps_list[i - 1])) throw ConfigError("pv_excision_reference: eps must decrease");
  }

  ExcisionReference out;
  out.eps = eps_list;
  for (double e : eps_list) out.excised.push_back(excised_integral(f, t0, lo, hi, e));

  // Exact fit of PV + sum_{j<m-1} c_{2j+1} eps^{2j+1} through all points.
  Eigen::MatrixXd A(m, m);
  Eigen::VectorXd y(m);
  for (std::size_t i = 0; i < m; ++i) {
    A(i, 0) = 1.0;
    for (std::size_t j = 1; j < m; ++j) A(i, j) = std::pow(eps_list[i], 2.0 * j - 1.0);
    y(i) = out.excised[i];
  }
  out.value = A.colPivHouseholderQr().solve(y)(0);

  // Order after eliminating the linear term between neighbours.
  std::vector<double> level1;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double r = eps_list[i] / eps_list[i + 1];
    level1.push_back((r * out.excised[i + 1] - out.excised[i]) / (r - 1.0));
  }
  const double d1 = std::abs(level1[0] - level1[1]);
  const double d2 = std::abs(level1[1] - level1[2]);
  const double ratio = eps_list[1] / eps_list[2];
  out.observed_order = (d1 > 0.0 && d2 > 0.0) ? std::log(d1 / d2) / std::log(ratio)
                                               : std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i + 2 < m; ++i) {
    const double a = out.excised[i + 1] - out.excised[i], b = out.excised[i + 2] - out.excised[i + 1];
    if (a * b < 0.0 || std::abs(b) > std::abs(a)) {
      out.warnings.push_back("non-monotone excision sequence; extrapolation unreliable");
      break;
    }
  }
  return out;
}

}  // namespace leakywire::oracle
