#include "leakywire/oracle/selftest.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "leakywire/bound_spectrum.hpp"
#include "leakywire/oracle/alternate_paths.hpp"
#include "leakywire/oracle/k0_reference.hpp"
#include "leakywire/oracle/pv_excision.hpp"
#include "leakywire/oracle/transverse_fd.hpp"
#include "leakywire/oracle/winding.hpp"
#include "leakywire/resonance.hpp"

namespace leakywire::oracle {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

void run_case(SelftestReport& r, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  SelftestCase c{name, false, ""};
  try {
    auto [ok, detail] = body();
    c.passed = ok;
    c.detail = detail;
  } catch (const std::exception& e) {
    c.detail = std::string("exception: ") + e.what();
  }
  r.cases.push_back(c);
}

double beta_for_level(double eps) { return (kPsi1 - 0.5 * std::log(-eps / 4.0)) / kTwoPi; }

}  // namespace

bool SelftestReport::all_passed() const {
  for (const auto& c : cases)
    if (!c.passed) return false;
  return !cases.empty();
}

SelftestReport run_selftest() {
  SelftestReport r;

  run_case(r, "k0_vs_series_reference", [] {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> mod(0.01, 10.0), ang(-1.45, 1.45);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const cplx w = std::polar(mod(rng), ang(rng));
      worst = std::max(worst, std::abs(macdonald_k0(w) - k0_reference(w)) / std::abs(k0_reference(w)));
    }
    return std::pair{worst < 1e-11, "max rel err " + fmt(worst)};
  });

  run_case(r, "k0_series_vs_asymptotic_w12", [] {
    const double s = k0_reference(cplx(12.0)).real(), a = k0_asymptotic_reference(cplx(12.0)).value.real();
    const double rel = std::abs(a / s - 1.0);
    return std::pair{rel < 1e-10, "ratio - 1 = " + fmt(rel)};
  });

  run_case(r, "k0_anchor_values", [] {
    const double e1 = std::abs(k0_reference(cplx(1.0)).real() - 0.4210244382407083);
    const double e2 = std::abs(k0_reference(cplx(0.1)).real() - 2.427069024702017);
    return std::pair{e1 < 1e-12 && e2 < 1e-12, "K0(1) err " + fmt(e1) + ", K0(0.1) err " + fmt(e2)};
  });

  run_case(r, "pv_vs_excision", [] {
    const double alpha = 1.0, a = 2.0, lambda = -0.1, t0 = lambda + 0.25 * alpha * alpha;
    auto f = [&](double t) { return mu0(lambda, t, alpha, a); };
    const double prim = integrate_pv([&](double t) { return cplx(f(t)); }, t0, sheet_quad_spec()).value.real();
    const auto ref = pv_excision_reference(f, t0, 0.0, std::numeric_limits<double>::infinity(),
                                           default_eps_list(t0, 0.0));
    const double err = std::abs(prim - ref.value);
    return std::pair{err < 1e-7 && ref.observed_order >= 2.0,
                     "diff " + fmt(err) + ", observed order " + fmt(ref.observed_order)};
  });

  run_case(r, "transverse_fd_threshold", [] {
    const auto r1 = transverse_fd_check(1.0);
    const auto r2 = transverse_fd_check(2.0);
    const double e1 = std::abs(r1.level + 0.25), e2 = std::abs(r2.level + 1.0);
    return std::pair{e1 < 1e-4 && e2 < 1e-4 && r1.profile_overlap > 0.9999,
                     "alpha=1 err " + fmt(e1) + ", alpha=2 err " + fmt(e2) + ", overlap " + fmt(r1.profile_overlap)};
  });

  run_case(r, "phi_breve_alternate_path", [] {
    const double prim = phi_breve(0.5, 1.0, 1.0), alt = phi_breve_sinh(0.5, 1.0, 1.0);
    const double err = std::abs(prim - alt);
    return std::pair{err < 1e-9, "diff " + fmt(err)};
  });

  run_case(r, "halfline_alternate_path", [] {
    auto f = [](double t) {
      const double v = std::sqrt(t + 1.0);
      return cplx(std::exp(-2.0 * v) / ((2.0 * v - 1.0) * v));
    };
    const double err = std::abs(integrate_halfline(f).value.real() - line_kernel_example());
    return std::pair{err < 1e-9, "diff " + fmt(err)};
  });

  run_case(r, "winding_trivial", [] {
    const cplx c(0.3, -0.2);
    auto f = [&](cplx z) { return z - c; };
    const int in = winding_zero_count(f, circle(c + 0.1, 0.5));
    const int out = winding_zero_count(f, circle(c + 2.0, 0.5));
    return std::pair{in == 1 && out == 0, "inside " + std::to_string(in) + ", outside " + std::to_string(out)};
  });

  run_case(r, "physical_sheet_count_two_strong_dots", [] {
    ModelParams m;
    m.alpha = 1.0;
    m.dots = {{0.0, 1.0}, {0.5, -1.0}};
    m.betas = {-2.0, -2.0};
    const auto spec = find_bound_states(m);
    const double kmax = kappa_scan_max(m);
    const int n = physical_sheet_zero_count(m, 1e-12, 1.2 * kmax * kmax);
    return std::pair{n == 2 && spec.states.size() == 2,
                     "winding " + std::to_string(n) + ", scan " + std::to_string(spec.states.size())};
  });

  run_case(r, "eta_winding_around_pole", [] {
    const auto model = ModelParams::single_dot(1.0, beta_for_level(-0.1), 5.0);
    const auto pole = find_pole(model);
    const SingleDot dot = SingleDot::from(model);
    auto f = [&](cplx z) { return eta(SheetPoint::infer(z, 1.0), dot); };
    const int n = winding_zero_count(f, circle(pole.z, 0.02));
    return std::pair{n == 1, "zeros inside " + std::to_string(n)};
  });

  run_case(r, "two_point_levels_vs_scan", [] {
    const double a = 1.0, beta = 0.0;
    const auto lv = two_point_levels(a, beta);
    const auto sc = two_point_levels_scan(a, beta, 1.0 / kTwoPi, 10.0);
    if (sc.symmetric_kappas.size() != 1) return std::pair{false, std::string("scan found no unique symmetric level")};
    double err = std::abs(sc.symmetric_kappas[0] - lv.kappa1);
    bool ok = err < 1e-10;
    if (lv.two_levels) {
      ok = ok && !sc.antisymmetric_kappas.empty();
      if (ok) err = std::max(err, std::abs(sc.antisymmetric_kappas.back() - lv.kappa2));
    } else {
      ok = ok && sc.antisymmetric_kappas.empty();
    }
    return std::pair{ok && err < 1e-10, "max kappa diff " + fmt(err)};
  });

  return r;
}

}  // namespace leakywire::oracle
