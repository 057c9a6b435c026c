#include "leakywire/oracle/transverse_fd.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <lapacke.h>

#include "leakywire/operator_model.hpp"

namespace leakywire::oracle {

namespace {

struct Eigenpair {
  double value;
  std::vector<double> vector;
  std::vector<double> x;
};

Eigenpair ground_state(double alpha, double L, double h, int cells) {
  const double dx = h / cells;
  const lapack_int n_half = static_cast<lapack_int>(std::llround(L / dx));
  const lapack_int n = 2 * n_half - 1;  // interior nodes, x = 0 at index n_half - 1
  std::vector<double> d(n), e(n - 1), x(n);
  for (lapack_int j = 0; j < n; ++j) {
    x[j] = (j - (n_half - 1)) * dx;
    const double hat = std::max(0.0, 1.0 - std::abs(x[j]) / h) / h;
    d[j] = 2.0 / (dx * dx) - alpha * hat;
  }
  for (lapack_int j = 0; j + 1 < n; ++j) e[j] = -1.0 / (dx * dx);

  lapack_int m = 0;
  std::vector<double> w(n), z(n);
  std::vector<lapack_int> isuppz(2);
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1, 1, 0.0, &m,
                                         w.data(), z.data(), n, isuppz.data());
  if (info != 0 || m != 1) throw GridResolutionError("transverse_fd_check: dstevr failed");
  return {w[0], std::vector<double>(z.begin(), z.begin() + n), x};
}

}  // namespace

TransverseFdResult transverse_fd_check(double alpha, const FdGrid& grid) {
  if (!(alpha > 0.0)) throw ConfigError("transverse_fd_check: alpha must be positive");
  const double L = grid.half_width > 0.0 ? grid.half_width : 30.0 / alpha;
  const double h0 = grid.h0 > 0.0 ? grid.h0 : 0.2 / alpha;
  if (alpha * L < 20.0) throw GridResolutionError("transverse_fd_check: box too small for the decay length");
  if (alpha * h0 > 1.0) throw GridResolutionError("transverse_fd_check: mollifier wider than the decay length");
  if (grid.refinements < 3 || grid.cells_per_width < 2)
    throw GridResolutionError("transverse_fd_check: need >= 3 refinements and >= 2 cells per width");

  TransverseFdResult out;
  Eigenpair finest;
  for (int i = 0; i < grid.refinements; ++i) {
    const double h = h0 / std::pow(2.0, i);
    finest = ground_state(alpha, L, h, grid.cells_per_width);
    out.widths.push_back(h);
    out.levels.push_back(finest.value);
  }

  // Polynomial extrapolation in h (all integer powers: the mollifier gives odd ones).
  auto extrapolate = [&](int first) {
    const int m = grid.refinements - first;
    Eigen::MatrixXd A(m, m);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) A(i, j) = std::pow(out.widths[first + i], j);
      y(i) = out.levels[first + i];
    }
    return A.colPivHouseholderQr().solve(y)(0);
  };
  out.level = extrapolate(0);
  out.level_error_estimate = std::abs(out.level - extrapolate(1));

  double uv = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t j = 0; j < finest.x.size(); ++j) {
    const double v = std::exp(-0.5 * alpha * std::abs(finest.x[j]));
    uv += finest.vector[j] * v;
    uu += finest.vector[j] * finest.vector[j];
    vv += v * v;
  }
  out.profile_overlap = std::abs(uv) / std::sqrt(uu * vv);
  try {
    out.multiplier_at_level = gamma00_multiplier(0.0, cplx(out.level), alpha).real();
  } catch (const ThresholdError&) {
    out.multiplier_at_level = 0.0;  // on the zero locus to 1e-14
  }
  return out;
}

}  // namespace leakywire::oracle
