#include "leakywire/bound_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "leakywire/errors.hpp"

namespace leakywire {

namespace {

constexpr double kGapFloor = 1e-280;

// Root of a function increasing through zero in log(gap) on [lo, hi].
template <class F>
double log_gap_root(F&& f, double lo, double hi) {
  auto g = [&](double u) { return f(std::exp(u)); };
  std::uintmax_t iters = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      g, std::log(lo), std::log(hi), boost::math::tools::eps_tolerance<double>(50), iters);
  if (iters >= 200) throw ConvergenceError("bound-state root refinement did not converge");
  const double u0 = bracket.first, u1 = bracket.second;
  const double a = std::exp(u0), b = std::exp(u1);
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

Eigen::VectorXd sorted_eigenvalues(const Eigen::MatrixXd& d) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

int negative_count(const Eigen::VectorXd& ev) {
  return static_cast<int>(std::count_if(ev.begin(), ev.end(), [](double v) { return v < 0.0; }));
}

double single_dot_distance(const ModelParams& model) {
  model.validate();
  if (model.size() != 1) throw ConfigError("single-dot operation needs exactly one dot");
  return std::abs(model.dots[0].x2);
}

}  // namespace

double decoupled_kappa(double beta) { return 2.0 * std::exp(-kTwoPi * beta + kPsi1); }

double epsilon_beta(double beta) { return -4.0 * std::exp(2.0 * (-kTwoPi * beta + kPsi1)); }

double kappa_scan_max(const ModelParams& model) {
  double k = 0.0;
  for (double b : model.betas) k = std::max(k, decoupled_kappa(b));
  return 2.0 * k + model.alpha;
}

BoundState kappa_single(double alpha, double beta, double a, const QuadSpec& spec) {
  if (!(alpha > 0.0) || !(a > 0.0)) throw ConfigError("kappa_single: alpha and a must be positive");
  auto gamma = [&](double gap) { return gamma_breve(gap, a, alpha, beta, spec); };

  double hi = 2.0 * decoupled_kappa(beta) + 0.5 * alpha;
  while (!(gamma(hi) > 0.0)) {
    hi *= 2.0;
    if (hi > 1e150) throw ConvergenceError("kappa_single: no upper bracket (gamma_breve never positive)");
  }
  double lo = std::min(1e-3 * alpha, 0.5 * hi);
  while (!(gamma(lo) < 0.0)) {
    lo *= 1e-3;
    if (lo < kGapFloor) throw ConvergenceError("kappa_single: no lower bracket near the threshold");
  }
  BoundState s;
  s.gap = log_gap_root(gamma, lo, hi);
  s.kappa = 0.5 * alpha + s.gap;
  s.energy = -0.25 * alpha * alpha + offset_from_gap(s.gap, alpha);
  s.null_vector = Eigen::VectorXcd::Ones(1);
  s.solver_residual = std::abs(gamma(s.gap));
  return s;
}

BoundState kappa_single(const ModelParams& model, const QuadSpec& spec) {
  const double a = single_dot_distance(model);
  return kappa_single(model.alpha, model.betas[0], a, spec);
}

BoundSpectrum find_bound_states(const ModelParams& model, const BoundScanOptions& options) {
  model.validate();
  const std::size_t n = model.size();
  if (n == 0) throw ConfigError("find_bound_states needs at least one dot");
  if (options.grid_points < 10) throw ConfigError("find_bound_states: grid_points must be >= 10");
  const double alpha = model.alpha;

  BoundSpectrum out;
  auto eigen_at = [&](double gap) {
    return sorted_eigenvalues(d_matrix_below_threshold(gap, model, options.quad));
  };

  // Upper end: D must be positive definite there.
  out.kappa_max = kappa_scan_max(model);
  double gap_max = out.kappa_max - 0.5 * alpha;
  while (negative_count(eigen_at(gap_max)) != 0) {
    out.warnings.push_back("kappa_max bound too small; doubled");
    gap_max *= 2.0;
    out.kappa_max = 0.5 * alpha + gap_max;
    if (gap_max > 1e150) throw ConvergenceError("find_bound_states: D never becomes positive");
  }

  // Lower end: walk towards the threshold until the negative inertia of D
  // settles (one eigenvalue diverges to -inf, the rest converge).
  double gap_min = std::min(1e-4 * alpha, 1e-3 * gap_max);
  int previous = negative_count(eigen_at(gap_min));
  int stable_steps = 0;
  while (stable_steps < 2) {
    const double next = gap_min * 1e-2;
    if (next < kGapFloor) break;
    const int count = negative_count(eigen_at(next));
    stable_steps = (count == previous) ? stable_steps + 1 : 0;
    previous = count;
    gap_min = next;
  }
  out.gap_min = gap_min;

  const int m = options.grid_points;
  std::vector<double> grid(m);
  std::vector<Eigen::VectorXd> values(m);
  std::vector<double> dets(m);
  const double lmin = std::log(gap_min), lmax = std::log(gap_max);
  for (int i = 0; i < m; ++i) {
    grid[i] = std::exp(lmin + (lmax - lmin) * i / (m - 1));
    const Eigen::MatrixXd d = d_matrix_below_threshold(grid[i], model, options.quad);
    values[i] = sorted_eigenvalues(d);
    dets[i] = d.determinant();
  }

  int det_changes = 0, det_changes_tail = 0;
  for (int i = 0; i + 1 < m; ++i) {
    if ((dets[i] < 0.0) != (dets[i + 1] < 0.0)) {
      ++det_changes;
      if (i + 1 >= m - m / 10) ++det_changes_tail;
    }
  }
  if (det_changes_tail > 0) out.warnings.push_back("det D changes sign in the last 10% of the scan");

  int crossings = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (int i = 0; i + 1 < m; ++i) {
      if (!(values[i](j) < 0.0 && values[i + 1](j) >= 0.0)) continue;
      ++crossings;
      auto branch = [&](double gap) { return eigen_at(gap)(j); };
      BoundState s;
      s.gap = log_gap_root(branch, grid[i], grid[i + 1]);
      s.kappa = 0.5 * alpha + s.gap;
      s.energy = model.threshold() + offset_from_gap(s.gap, alpha);
      const Eigen::MatrixXd d = d_matrix_below_threshold(s.gap, model, options.quad);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
      s.null_vector = es.eigenvectors().col(j).cast<cplx>();
      s.solver_residual = std::abs(d.determinant());
      const Eigen::VectorXd ev = es.eigenvalues();
      const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
      for (std::size_t other = 0; other < n; ++other) {
        if (other != j && std::abs(ev(other)) < 1e-6 * scale)
          out.warnings.push_back("near-degenerate root at kappa = " + std::to_string(s.kappa));
      }
      out.states.push_back(std::move(s));
    }
  }
  if (det_changes != crossings && (crossings - det_changes) % 2 != 0)
    out.warnings.push_back("det D sign changes disagree with eigenvalue crossings");

  std::sort(out.states.begin(), out.states.end(),
            [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
  const std::size_t count = out.states.size();
  if (count < 1 || count > n)
    out.warnings.push_back("eigenvalue count " + std::to_string(count) + " outside [1, n]");
  return out;
}

double eigenfunction_value(Point x, const BoundState& state, const ModelParams& model, const QuadSpec& base) {
  model.validate();
  if (model.size() != 1) throw ConfigError("eigenfunction_value supports one dot");
  const Point y = model.dots[0];
  const double alpha = model.alpha;
  const double kappa = state.kappa;
  const double a = std::abs(y.x2);
  const double half_alpha = 0.5 * alpha;
  const double kappa2 = kappa * kappa;
  const double offset = state.gap * (alpha + state.gap);

  auto raw = [&](Point p) {
    const double r = std::hypot(p.x1 - y.x1, p.x2 - y.x2);
    if (r == 0.0) throw DomainError("eigenfunction_value: logarithmic singularity at the dot");
    const double dx1 = p.x1 - y.x1;
    const double height = a + std::abs(p.x2);
    auto integrand = [&](double k) -> cplx {
      const double k2 = k * k;
      const double q = std::sqrt(k2 + kappa2);
      const double den = 2.0 * (k2 + offset) / (q + half_alpha);
      return std::cos(k * dx1) * std::exp(-q * height) / (q * den);
    };
    QuadSpec spec = base;
    spec.endpoint_transform = false;
    spec.inner_scale = std::clamp(std::min(std::sqrt(offset), 1.0 / height), 1e-150, 1.0);
    const double line_part = alpha * integrate_tail(integrand, 0.0, spec).value.real();
    return macdonald_k0(cplx(kappa * r)).real() + line_part;
  };
  return raw(x) / raw(Point{y.x1, 0.5 * y.x2});
}

}  // namespace leakywire
