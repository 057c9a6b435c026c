#include "leakywire/operator_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "leakywire/errors.hpp"

namespace leakywire {

namespace {

double distance(const Point& a, const Point& b) { return std::hypot(a.x1 - b.x1, a.x2 - b.x2); }

// First panel length: resolves the Lorentzian p^2 - zeta near p = 0 and the
// exponential decay over 1/ysum.
double coupling_scale(cplx zeta, double ysum) {
  return std::clamp(std::min(std::sqrt(std::abs(zeta)), 1.0 / ysum), 1e-150, 1.0);
}

cplx coupling_integral(cplx zeta, double alpha, double dx1, double ysum, const QuadSpec& base) {
  if (zeta.imag() == 0.0 && zeta.real() >= 0.0)
    throw PoleOnPathError("phi_kl: energy on [-alpha^2/4, inf); use the sheet-aware continuation");
  const double half_alpha = 0.5 * alpha;
  const cplx shift = half_alpha * half_alpha - zeta;  // -z
  auto integrand = [&](double p) -> cplx {
    const double p2 = p * p;
    const cplx q = std::sqrt(p2 + shift);
    const cplx den = 2.0 * (p2 - zeta) / (q + half_alpha);  // 2q - alpha
    cplx v = std::exp(-q * ysum) / (q * den);
    if (dx1 != 0.0) v *= std::cos(p * dx1);
    return v;
  };
  QuadSpec spec = base;
  spec.endpoint_transform = false;
  spec.inner_scale = coupling_scale(zeta, ysum);
  return alpha / kTwoPi * integrate_tail(integrand, 0.0, spec).value;
}

}  // namespace

void ModelParams::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (dots.size() != betas.size()) throw ConfigError("need exactly one beta per dot");
  for (std::size_t i = 0; i < dots.size(); ++i) {
    if (!std::isfinite(dots[i].x1) || !std::isfinite(dots[i].x2) || !std::isfinite(betas[i]))
      throw ConfigError("dot " + std::to_string(i) + ": non-finite parameter");
    if (dots[i].x2 == 0.0) throw ConfigError("dot " + std::to_string(i) + " lies on the line");
    for (std::size_t j = 0; j < i; ++j)
      if (dots[i].x1 == dots[j].x1 && dots[i].x2 == dots[j].x2)
        throw ConfigError("dots " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
}

ModelParams ModelParams::single_dot(double alpha, double beta, double a) {
  ModelParams m;
  m.alpha = alpha;
  m.dots = {{0.0, a}};
  m.betas = {beta};
  m.validate();
  return m;
}

QuadSpec coupling_quad_spec() {
  QuadSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-13;
  spec.endpoint_transform = false;
  return spec;
}

cplx gamma00_multiplier(double p, cplx z, double alpha) {
  const cplx q = std::sqrt(p * p - z);
  const cplx m = 1.0 / alpha - 0.5 / q;
  if (std::abs(m) < 1e-14) throw ThresholdError("gamma00_multiplier vanishes: p^2 - z = alpha^2/4");
  return m;
}

cplx free_green(cplx z, double r) { return macdonald_k0(decay_rate(z) * r) / kTwoPi; }

cplx phi_kl_offset(cplx zeta, std::size_t k, std::size_t l, const ModelParams& model,
                   const QuadSpec& spec) {
  const Point& yk = model.dots.at(k);
  const Point& yl = model.dots.at(l);
  return coupling_integral(zeta, model.alpha, yk.x1 - yl.x1, std::abs(yk.x2) + std::abs(yl.x2), spec);
}

cplx phi_kl(cplx z, std::size_t k, std::size_t l, const ModelParams& model, const QuadSpec& spec) {
  return phi_kl_offset(z - model.threshold(), k, l, model, spec);
}

DMatrix d_matrix_offset(cplx zeta, const ModelParams& model, const QuadSpec& spec) {
  model.validate();
  const std::size_t n = model.size();
  DMatrix out;
  out.z = zeta + model.threshold();
  out.entries = Eigen::MatrixXcd::Zero(n, n);
  if (n == 0) return out;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k; l < n; ++l) {
      cplx v = -phi_kl_offset(zeta, k, l, model, spec);
      if (k == l) {
        v += s_beta(out.z, model.betas[k]);
      } else {
        v -= free_green(out.z, distance(model.dots[k], model.dots[l]));
      }
      out.entries(k, l) = v;
      out.entries(l, k) = v;
    }
  }
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(out.entries);
  out.det = lu.determinant();
  const double rcond = lu.rcond();
  out.cond_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  return out;
}

DMatrix d_matrix(cplx z, const ModelParams& model, const QuadSpec& spec) {
  return d_matrix_offset(z - model.threshold(), model, spec);
}

Eigen::MatrixXd d_matrix_below_threshold(double gap, const ModelParams& model, const QuadSpec& spec) {
  if (!(gap > 0.0)) throw DomainError("d_matrix_below_threshold requires gap > 0");
  const DMatrix d = d_matrix_offset(cplx(offset_from_gap(gap, model.alpha), 0.0), model, spec);
  return d.entries.real();
}

double phi_breve(double gap, double a, double alpha, const QuadSpec& base) {
  if (!(gap > 0.0)) throw DomainError("phi_breve requires kappa > alpha/2");
  if (!(a > 0.0)) throw DomainError("phi_breve requires a > 0");
  const double half_alpha = 0.5 * alpha;
  const double kappa = half_alpha + gap;
  const double kappa2 = kappa * kappa;
  const double offset = gap * (alpha + gap);
  auto integrand = [=](double p) -> cplx {
    const double p2 = p * p;
    const double q = std::sqrt(p2 + kappa2);
    const double den = 2.0 * (p2 + offset) / (q + half_alpha);
    return std::exp(-2.0 * q * a) / (den * q);
  };
  QuadSpec spec = base;
  spec.endpoint_transform = false;
  spec.inner_scale = std::clamp(std::min(std::sqrt(offset), 0.5 / a), 1e-150, 1.0);
  return alpha / kTwoPi * integrate_tail(integrand, 0.0, spec).value.real();
}

double gamma_breve(double gap, double a, double alpha, double beta, const QuadSpec& spec) {
  return s_breve(0.5 * alpha + gap, beta) - phi_breve(gap, a, alpha, spec);
}

}  // namespace leakywire
