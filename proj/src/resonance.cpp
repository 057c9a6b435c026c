#include "leakywire/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include <boost/math/tools/roots.hpp>

#include "leakywire/bound_spectrum.hpp"
#include "leakywire/errors.hpp"

namespace leakywire {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

cplx mu_kernel_c(cplx z, cplx t, double alpha, double a) {
  const cplx q = std::sqrt(t - z);
  return alpha / (16.0 * std::numbers::pi) * (alpha + 2.0 * q) * std::exp(-2.0 * a * q) / (std::sqrt(t) * q);
}

QuadSpec with_cutoff(QuadSpec spec, double a) {
  if (spec.tail_cutoff == 0.0) spec.tail_cutoff = sqrt_envelope_cutoff(2.0 * a, spec.abs_tol);
  return spec;
}

// int_0^inf mu(z,t) / (t - zeta) dt, zeta = z + alpha^2/4.
cplx kernel_integral(cplx z, double alpha, double a, const QuadSpec& spec) {
  const cplx zeta = z + 0.25 * alpha * alpha;
  auto f = [&](double t) { return mu_kernel(z, t, alpha, a); };
  const QuadSpec s = with_cutoff(spec, a);
  if (zeta.real() <= 0.0) {
    if (zeta.imag() == 0.0 && zeta.real() == 0.0) throw ThresholdError("phi: z at the line threshold");
    return integrate_halfline([&](double t) { return f(t) / (t - zeta); }, s).value;
  }
  return integrate_pole(f, zeta, mu_kernel_c(z, zeta, alpha, a), 0.0, kInf, s).value;
}

double cut_width(double alpha) { return 0.25 * alpha * alpha; }

double scale_of(cplx s) { return std::max(1.0, std::abs(s)); }

// Damped secant on M: iterates stay in the strip of `region`; the branch
// label follows the position of each iterate.
template <class F, class Scale>
ResonancePole secant_solve(F&& func, Scale&& scale, cplx z0, cplx z1, double alpha,
                           const SecondSheetRegion& region, const PoleSearchOptions& opt) {
  if (!region.contains_strip(z0, alpha) || !region.contains_strip(z1, alpha))
    throw RegionError("pole search: initial guess outside the continuation region");
  ResonancePole out;
  cplx f0 = func(z0), f1 = func(z1);
  out.iterates = {z0, z1};
  out.residual_history = {std::abs(f0), std::abs(f1)};
  const double max_step = 0.25 * cut_width(alpha);
  const double target = 1e-2 * opt.residual_tol;

  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (std::abs(f1) <= target * scale(z1)) break;
    cplx step;
    const cplx df = f1 - f0;
    if (std::abs(df) > 0.0 && std::isfinite(std::abs(df)) && z1 != z0) {
      step = -f1 * (z1 - z0) / df;
    } else {
      const double h = 1e-7 * std::max(1.0, std::abs(z1));
      const cplx zp = z1 + cplx(0.0, h), zm = z1 - cplx(0.0, h);
      if (!region.contains_strip(zp, alpha) || !region.contains_strip(zm, alpha))
        throw ConvergenceError("pole search: stalled at the region boundary");
      step = -f1 * cplx(0.0, 2.0 * h) / (func(zp) - func(zm));
    }
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
      throw ConvergenceError("pole search: non-finite step");
    if (std::abs(step) > max_step) step *= max_step / std::abs(step);

    int halvings = 0;
    cplx z2 = z1 + step;
    while (!region.contains_strip(z2, alpha)) {
      step *= 0.5;
      z2 = z1 + step;
      if (++halvings > 40) throw RegionError("pole search: iterate left the continuation region");
    }
    cplx f2 = func(z2);
    // Backtrack while the residual grows markedly.
    for (int k = 0; k < 8 && std::abs(f2) > 2.0 * std::abs(f1); ++k) {
      step *= 0.5;
      z2 = z1 + step;
      f2 = func(z2);
    }
    z0 = z1;
    f0 = f1;
    z1 = z2;
    f1 = f2;
    out.iterates.push_back(z1);
    out.residual_history.push_back(std::abs(f1));
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z1))) {
      ++it;
      break;
    }
  }
  out.z = z1;
  out.residual = std::abs(f1);
  out.iterations = it;
  if (!(out.residual <= opt.residual_tol * scale(z1)))
    throw ConvergenceError("pole search: residual " + std::to_string(out.residual) + " above tolerance after " +
                           std::to_string(it) + " iterations");
  return out;
}

template <GreenNormalization N>
constexpr double green_factor() {
  return N == GreenNormalization::consistent ? 1.0 / kTwoPi : 1.0;
}

template <GreenNormalization N>
double branch_value(double kappa, double a, double beta, double sign) {
  return s_breve(kappa, beta) + sign * green_factor<N>() * macdonald_k0(cplx(2.0 * a * kappa)).real();
}

template <class F>
double toms_root(F&& f, double lo, double hi) {
  std::uintmax_t iters = 200;
  auto g = [&](double u) { return f(std::exp(u)); };
  const auto br = boost::math::tools::toms748_solve(g, std::log(lo), std::log(hi),
                                                    boost::math::tools::eps_tolerance<double>(52), iters);
  if (iters >= 200) throw ConvergenceError("two-point level refinement did not converge");
  return std::exp(0.5 * (br.first + br.second));
}

}  // namespace

char sheet_symbol(Sheet s) {
  switch (s) {
    case Sheet::physical: return '+';
    case Sheet::boundary: return '0';
    case Sheet::second: return '-';
  }
  return '?';
}

SecondSheetRegion SecondSheetRegion::standard(double alpha) {
  const double delta = 1e-3 * alpha * alpha;
  return {-cut_width(alpha) + delta, -delta, 0.125 * alpha * alpha};
}

bool SecondSheetRegion::contains(cplx z, double alpha) const {
  return z.imag() < 0.0 && contains_strip(z, alpha);
}

bool SecondSheetRegion::contains_strip(cplx z, double alpha) const {
  return std::abs(z.imag()) < depth && z.real() > std::max(re_min, -cut_width(alpha)) && z.real() < re_max;
}

SheetPoint SheetPoint::infer(cplx z, double alpha) {
  if (z.imag() > 0.0) return {z, Sheet::physical};
  if (z.imag() < 0.0) return {z, Sheet::second};
  if (z.real() < -cut_width(alpha)) return {z, Sheet::physical};
  if (z.real() < 0.0 && z.real() > -cut_width(alpha)) return {z, Sheet::boundary};
  throw DomainError("sheet label undefined at z = -alpha^2/4 and on [0, inf)");
}

SingleDot SingleDot::from(const ModelParams& model) {
  model.validate();
  if (model.size() != 1) throw ConfigError("single-dot operation needs exactly one dot");
  return {model.alpha, model.betas[0], std::abs(model.dots[0].x2)};
}

QuadSpec sheet_quad_spec() {
  QuadSpec s;
  s.abs_tol = 1e-13;
  s.rel_tol = 1e-12;
  return s;
}

cplx mu_kernel(cplx z, double t, double alpha, double a) {
  if (!(t > 0.0)) throw DomainError("mu_kernel: t must be positive");
  return mu_kernel_c(z, cplx(t), alpha, a);
}

double mu0(double lambda, double t, double alpha, double a) {
  return mu_kernel(cplx(lambda), t, alpha, a).real();
}

cplx g_line(cplx z, double alpha, double a) {
  const cplx zeta = z + 0.25 * alpha * alpha;
  if (zeta == cplx(0.0)) throw ThresholdError("g: z at the line threshold");
  return cplx(0.0, 0.25 * alpha) * std::exp(-alpha * a) / std::sqrt(zeta);
}

double pv_integral(double lambda, double alpha, double a, const QuadSpec& spec) {
  if (!(lambda > -cut_width(alpha) && lambda < 0.0))
    throw DomainError("pv_integral: lambda must lie in (-alpha^2/4, 0)");
  return kernel_integral(cplx(lambda), alpha, a, spec).real();
}

cplx phi_sheet(const SheetPoint& point, double alpha, double a, const QuadSpec& spec,
               std::optional<SecondSheetRegion> region) {
  if (!(alpha > 0.0) || !(a > 0.0)) throw ConfigError("phi: alpha and a must be positive");
  const cplx z = point.z;
  const cplx zeta = z + cut_width(alpha);
  switch (point.label) {
    case Sheet::physical:
      if (z.imag() == 0.0 && zeta.real() >= 0.0) throw PoleOnPathError("phi+: z on the spectrum [-alpha^2/4, inf)");
      return kernel_integral(z, alpha, a, spec);
    case Sheet::boundary:
      if (z.imag() != 0.0 || !(zeta.real() > 0.0) || !(z.real() < 0.0))
        throw DomainError("phi0: z must be real in (-alpha^2/4, 0)");
      return kernel_integral(z, alpha, a, spec).real() + g_line(z, alpha, a);
    case Sheet::second: {
      const SecondSheetRegion r = region.value_or(SecondSheetRegion::standard(alpha));
      if (!r.contains(z, alpha)) throw RegionError("phi-: z outside the continuation region");
      return kernel_integral(z, alpha, a, spec) + 2.0 * g_line(z, alpha, a);
    }
  }
  throw DomainError("phi: unknown sheet label");
}

cplx eta(const SheetPoint& point, const SingleDot& dot, const QuadSpec& spec,
         std::optional<SecondSheetRegion> region) {
  return s_beta(point.z, dot.beta) - phi_sheet(point, dot.alpha, dot.a, spec, region);
}

double sigma_beta(double beta) { return std::sqrt(-epsilon_beta(beta)); }

double reparametrized_b(double a, double beta) { return std::exp(-a * sigma_beta(beta)); }

ResonancePole find_pole(const ModelParams& model, const PoleSearchOptions& options) {
  const SingleDot dot = SingleDot::from(model);
  const double eps = epsilon_beta(dot.beta);
  if (!(eps > -cut_width(dot.alpha)))
    throw DomainError("find_pole: epsilon_beta below the line threshold (no embedded level)");
  const SecondSheetRegion region = options.region.value_or(SecondSheetRegion::standard(dot.alpha));
  const double alpha = dot.alpha;

  auto func = [&](cplx z) { return eta(SheetPoint::infer(z, alpha), dot, options.quad, region); };
  auto scale = [&](cplx z) { return scale_of(s_beta(z, dot.beta)); };
  const cplx z0 = options.initial_guess.value_or(cplx(eps));
  const cplx z1 = z0 - cplx(0.0, 1e-4 * alpha * alpha);
  ResonancePole p = secant_solve(func, scale, z0, z1, alpha, region, options);
  p.model = model;
  p.b = reparametrized_b(dot.a, dot.beta);
  return p;
}

TrajectoryFit fit_trajectory(const std::vector<ResonancePole>& poles, double eps_beta) {
  if (poles.size() < 2) throw DomainError("fit_trajectory: need at least two poles");
  auto slope = [&](auto&& y_of) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(poles.size());
    for (const auto& p : poles) {
      const double x = std::log(p.b), y = y_of(p);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  TrajectoryFit f;
  f.nu_slope = slope([](const ResonancePole& p) { return std::log(std::abs(p.z.imag())); });
  f.mu_slope = slope([&](const ResonancePole& p) { return std::log(std::abs(p.z.real() - eps_beta)); });
  for (const auto& p : poles) {
    f.max_mu_over_b = std::max(f.max_mu_over_b, std::abs(p.z.real() - eps_beta) / p.b);
    f.max_nu_over_b = std::max(f.max_nu_over_b, std::abs(p.z.imag()) / p.b);
  }
  return f;
}

ModelParams MirrorPair::model(double b) const {
  ModelParams m;
  m.alpha = alpha;
  m.dots = {{0.0, a}, {0.0, -a}};
  m.betas = {beta, beta + b};
  return m;
}

template <GreenNormalization N>
TwoPointLevels two_point_levels(double a, double beta) {
  if (!(a > 0.0)) throw ConfigError("two_point_levels: a must be positive");
  TwoPointLevels out;
  const double kb = decoupled_kappa(beta);

  // Symmetric level: s_breve = c K0, increasing, root above kappa_beta.
  auto lower = [&](double k) { return branch_value<N>(k, a, beta, -1.0); };
  double hi = 2.0 * kb;
  while (!(lower(hi) > 0.0)) {
    hi *= 2.0;
    if (hi > 1e150) throw ConvergenceError("two_point_levels: no bracket for the lower level");
  }
  // In exact arithmetic lower(kb) < 0 < upper(kb); when K0 is below the
  // rounding of s_breve the level coincides with kappa_beta.
  out.kappa1 = lower(kb) < 0.0 ? toms_root(lower, kb, hi) : kb;
  out.eps1 = -out.kappa1 * out.kappa1;

  // Antisymmetric level: s_breve = -c K0, root below kappa_beta. Take the
  // crossing closest to kappa_beta.
  auto upper = [&](double k) { return branch_value<N>(k, a, beta, 1.0); };
  const int n = 1200;
  const double lo = kb * 1e-14;
  double prev_k = kb, prev_v = upper(kb);
  if (!(prev_v > 0.0)) {
    out.kappa2 = kb;
    out.eps2 = -kb * kb;
    out.two_levels = true;
    return out;
  }
  for (int i = 1; i <= n; ++i) {
    const double k = kb * std::pow(lo / kb, static_cast<double>(i) / n);
    const double v = upper(k);
    if (v < 0.0 && prev_v >= 0.0) {
      out.kappa2 = toms_root(upper, k, prev_k);
      out.eps2 = -out.kappa2 * out.kappa2;
      out.two_levels = true;
      break;
    }
    prev_k = k;
    prev_v = v;
  }
  return out;
}

template <GreenNormalization N>
cplx eta_hat2(double b, const SheetPoint& point, const MirrorPair& pair, const QuadSpec& spec,
              std::optional<SecondSheetRegion> region) {
  const cplx s = s_beta(point.z, pair.beta);
  const cplx g = green_factor<N>() * macdonald_k0(2.0 * pair.a * decay_rate(point.z));
  const cplx phi = phi_sheet(point, pair.alpha, pair.a, spec, region);
  return s * (s + b) - g * g - (2.0 * s + b) * phi - 2.0 * g * phi;
}

template <GreenNormalization N>
TwoDotExpansion two_dot_expansion(const MirrorPair& pair, const QuadSpec& spec) {
  const TwoPointLevels lv = two_point_levels<N>(pair.a, pair.beta);
  if (!lv.two_levels) throw DomainError("two_dot_expansion: no second decoupled level");
  if (!(lv.eps2 > -cut_width(pair.alpha)))
    throw DomainError("two_dot_expansion: eps2 below the line threshold (not embedded)");
  TwoDotExpansion e;
  e.eps2 = lv.eps2;
  e.kappa2 = lv.kappa2;
  e.s_prime = s_breve_prime(lv.kappa2);
  e.green_prime = -green_factor<N>() * 2.0 * pair.a * macdonald_k1(cplx(2.0 * pair.a * lv.kappa2)).real();
  e.g_tilde = g_line(cplx(lv.eps2), pair.alpha, pair.a).imag();
  e.phi0 = phi_sheet({cplx(lv.eps2), Sheet::boundary}, pair.alpha, pair.a, spec);
  const double denom = e.s_prime + e.green_prime;
  const double dist2 = std::norm(s_breve(lv.kappa2, pair.beta) - e.phi0);
  e.mu_slope = lv.kappa2 / denom;
  e.nu_curvature_closed_form = -lv.kappa2 * e.g_tilde / (2.0 * denom * dist2);
  e.nu_curvature = -lv.kappa2 * e.g_tilde / (4.0 * denom * dist2);
  return e;
}

template <GreenNormalization N>
ResonancePole find_pole2(double b, const MirrorPair& pair, const PoleSearchOptions& options) {
  const double alpha = pair.alpha;
  const SecondSheetRegion region = options.region.value_or(SecondSheetRegion::standard(alpha));
  cplx z0;
  if (options.initial_guess) {
    z0 = *options.initial_guess;
  } else {
    const TwoDotExpansion e = two_dot_expansion<N>(pair, options.quad);
    z0 = cplx(e.eps2 + e.mu_slope * b, e.nu_curvature * b * b);
  }
  auto func = [&](cplx z) { return eta_hat2<N>(b, SheetPoint::infer(z, alpha), pair, options.quad, region); };
  auto scale = [&](cplx z) { return scale_of(s_beta(z, pair.beta)); };
  const cplx z1 = z0 - cplx(0.0, 1e-5 * alpha * alpha);
  ResonancePole p = secant_solve(func, scale, z0, z1, alpha, region, options);
  p.model = pair.model(b);
  p.b = b;
  return p;
}

#define LEAKYWIRE_INSTANTIATE(N)                                                                       \
  template TwoPointLevels two_point_levels<N>(double, double);                                         \
  template cplx eta_hat2<N>(double, const SheetPoint&, const MirrorPair&, const QuadSpec&,             \
                            std::optional<SecondSheetRegion>);                                         \
  template TwoDotExpansion two_dot_expansion<N>(const MirrorPair&, const QuadSpec&);                   \
  template ResonancePole find_pole2<N>(double, const MirrorPair&, const PoleSearchOptions&);

LEAKYWIRE_INSTANTIATE(GreenNormalization::consistent)
LEAKYWIRE_INSTANTIATE(GreenNormalization::bare_k0)

#undef LEAKYWIRE_INSTANTIATE

}  // namespace leakywire
