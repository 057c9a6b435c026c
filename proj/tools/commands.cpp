#include "commands.hpp"

#include <cmath>
#include <limits>

#include "leakywire/bound_spectrum.hpp"
#include "leakywire/errors.hpp"
#include "leakywire/oracle/selftest.hpp"
#include "leakywire/scattering.hpp"
#include "worker_pool.hpp"

namespace leakywire::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// One sweep point: either cells or a failure message with its exit code.
struct Row {
  std::vector<Cell> cells;
  std::string error;
  int code = kOk;
};

Row failed_row(std::vector<Cell> prefix, std::size_t width, const std::exception& e) {
  Row r;
  r.cells = std::move(prefix);
  while (r.cells.size() + 1 < width) r.cells.emplace_back(kNaN);
  r.cells.emplace_back(std::string("error: ") + e.what());
  r.error = e.what();
  r.code = exit_code_for(e);
  return r;
}

void collect(CommandResult& out, std::vector<Row> rows) {
  for (auto& r : rows) {
    if (r.code != kOk) {
      ++out.failed_rows;
      out.exit_code = std::max(out.exit_code, r.code);
    }
    out.table.rows.push_back(std::move(r.cells));
  }
}

void require_single_dot(const RunConfig& cfg, const char* command) {
  cfg.model.validate();
  if (cfg.model.size() != 1) throw ConfigError(std::string(command) + " needs exactly one dot (--dot x1,x2 --beta b)");
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kConfig;
  if (dynamic_cast<const RegionError*>(&e)) return kConvergence;
  if (dynamic_cast<const DomainError*>(&e)) return kConfig;
  if (dynamic_cast<const Error*>(&e)) return kConvergence;
  return kUnexpected;
}

CommandResult run_spectrum(const RunConfig& cfg) {
  cfg.model.validate();
  if (cfg.model.size() == 0) throw ConfigError("spectrum needs at least one dot");
  BoundScanOptions opt;
  opt.grid_points = cfg.scan_points;
  opt.quad = cfg.quad.apply(coupling_quad_spec());
  const auto spec = find_bound_states(cfg.model, opt);

  CommandResult out;
  const std::size_t n = cfg.model.size();
  out.table.columns = {"index", "energy[1]", "kappa[1]", "gap[1]", "det_residual[1]"};
  for (std::size_t k = 0; k < n; ++k) {
    out.table.columns.push_back("v" + std::to_string(k) + "_re[1]");
    out.table.columns.push_back("v" + std::to_string(k) + "_im[1]");
  }
  long long index = 0;
  for (const auto& s : spec.states) {
    std::vector<Cell> row{index++, s.energy, s.kappa, s.gap, s.solver_residual};
    for (std::size_t k = 0; k < n; ++k) {
      row.emplace_back(s.null_vector(k).real());
      row.emplace_back(s.null_vector(k).imag());
    }
    out.table.rows.push_back(std::move(row));
  }
  out.summary["count"] = static_cast<long long>(spec.states.size());
  out.summary["dots"] = static_cast<long long>(n);
  out.summary["threshold"] = cfg.model.threshold();
  out.summary["kappa_max"] = spec.kappa_max;
  out.summary["gap_min"] = spec.gap_min;
  out.warnings = spec.warnings;
  return out;
}

CommandResult run_eigenfunction(const RunConfig& cfg) {
  require_single_dot(cfg, "eigenfunction");
  const QuadSpec spec = cfg.quad.apply(coupling_quad_spec());
  const auto state = kappa_single(cfg.model, spec);
  const auto xs = cfg.x1_range.values();
  const auto ys = cfg.x2_range.values();

  CommandResult out;
  out.table.columns = {"x1[1]", "x2[1]", "psi[1]", "status"};
  auto rows = parallel_map(xs.size() * ys.size(), [&](std::size_t i) {
    const Point p{xs[i / ys.size()], ys[i % ys.size()]};
    try {
      return Row{{p.x1, p.x2, eigenfunction_value(p, state, cfg.model, spec), std::string("ok")}, "", kOk};
    } catch (const DomainError&) {
      return Row{{p.x1, p.x2, kNaN, std::string("singular")}, "", kOk};
    } catch (const std::exception& e) {
      return failed_row({p.x1, p.x2}, 4, e);
    }
  });
  collect(out, std::move(rows));
  out.summary["energy"] = state.energy;
  out.summary["kappa"] = state.kappa;
  out.summary["normalization"] = "psi(y1, y2/2) = 1";
  return out;
}

CommandResult run_resonance(const RunConfig& cfg) {
  require_single_dot(cfg, "resonance");
  const double alpha = cfg.model.alpha, beta = cfg.model.betas[0];
  const double eps = epsilon_beta(beta);
  if (!(eps > cfg.model.threshold()))
    throw DomainError("eps_beta = " + std::to_string(eps) + " is not above -alpha^2/4; no embedded level");
  const auto as = cfg.a_range ? cfg.a_range->values() : std::vector<double>{std::abs(cfg.model.dots[0].x2)};

  PoleSearchOptions base;
  base.quad = cfg.quad.apply(sheet_quad_spec());
  base.region = cfg.region;

  CommandResult out;
  out.table.columns = {"a[1]", "b[1]", "z_re[1]", "z_im[1]", "width[1]", "residual[1]", "iterations", "status"};
  std::vector<ResonancePole> poles(as.size());
  std::vector<char> ok(as.size(), 0);
  auto solve = [&](std::size_t i, const PoleSearchOptions& opt) {
    const double a = as[i];
    try {
      const auto p = find_pole(ModelParams::single_dot(alpha, beta, a), opt);
      poles[i] = p;
      ok[i] = 1;
      return Row{{a, p.b, p.z.real(), p.z.imag(), 2.0 * std::abs(p.z.imag()), p.residual,
                  static_cast<long long>(p.iterations), std::string("ok")},
                 "", kOk};
    } catch (const std::exception& e) {
      return failed_row({a, reparametrized_b(a, beta)}, 8, e);
    }
  };
  std::vector<Row> rows;
  if (cfg.continuation) {
    PoleSearchOptions opt = base;
    for (std::size_t i = 0; i < as.size(); ++i) {
      rows.push_back(solve(i, opt));
      if (ok[i]) opt.initial_guess = poles[i].z;
    }
  } else {
    rows = parallel_map(as.size(), [&](std::size_t i) { return solve(i, base); });
  }
  collect(out, std::move(rows));

  std::vector<ResonancePole> good;
  for (std::size_t i = 0; i < as.size(); ++i)
    if (ok[i]) good.push_back(poles[i]);
  out.summary["eps_beta"] = eps;
  out.summary["sigma_beta"] = sigma_beta(beta);
  out.summary["alpha_over_sigma_beta"] = alpha / sigma_beta(beta);
  if (good.size() >= 2) {
    const auto fit = fit_trajectory(good, eps);
    out.summary["nu_slope"] = fit.nu_slope;
    out.summary["mu_slope"] = fit.mu_slope;
    out.summary["max_mu_over_b"] = fit.max_mu_over_b;
    out.summary["max_nu_over_b"] = fit.max_nu_over_b;
  } else {
    out.warnings.push_back("fewer than two converged poles; no fit");
  }
  return out;
}

CommandResult run_scatter(const RunConfig& cfg) {
  require_single_dot(cfg, "scatter");
  const QuadSpec spec = cfg.quad.apply(sheet_quad_spec());
  const auto lambdas = cfg.lambda_range ? cfg.lambda_range->values() : lambda_grid(cfg.model.alpha, cfg.lambda_points);

  CommandResult out;
  out.table.columns = {"lambda[1]", "k[1]",      "R_re[1]",     "R_im[1]",    "T_re[1]",
                       "T_im[1]",   "R_abs2[1]", "T_abs2[1]", "status"};
  auto rows = parallel_map(lambdas.size(), [&](std::size_t i) {
    try {
      const auto sp = amplitudes(lambdas[i], cfg.model, spec);
      return Row{{sp.lambda, sp.momentum, sp.R.real(), sp.R.imag(), sp.T.real(), sp.T.imag(), std::norm(sp.R),
                  std::norm(sp.T), std::string("ok")},
                 "", kOk};
    } catch (const std::exception& e) {
      return failed_row({lambdas[i]}, 9, e);
    }
  });
  collect(out, std::move(rows));
  out.summary["threshold"] = cfg.model.threshold();
  return out;
}

namespace {

template <GreenNormalization N>
CommandResult twopoint_impl(const RunConfig& cfg) {
  require_single_dot(cfg, "twopoint");
  const MirrorPair pair{cfg.model.alpha, cfg.model.betas[0], std::abs(cfg.model.dots[0].x2)};
  if (cfg.b_values.empty()) throw ConfigError("twopoint needs --b or --b-range");
  const auto lv = two_point_levels<N>(pair.a, pair.beta);
  const double thr = cfg.model.threshold();
  if (!lv.two_levels || !(lv.eps2 > thr && lv.eps2 < 0.0))
    throw DomainError("the antisymmetric level is not embedded in (-alpha^2/4, 0)");
  const QuadSpec spec = cfg.quad.apply(sheet_quad_spec());
  const auto e = two_dot_expansion<N>(pair, spec);

  PoleSearchOptions base;
  base.quad = spec;
  base.region = cfg.region;

  CommandResult out;
  out.table.columns = {"b[1]", "z2_re[1]", "z2_im[1]", "mu2_expansion[1]", "nu2_expansion[1]",
                       "residual[1]", "iterations", "status"};
  auto rows = parallel_map(cfg.b_values.size(), [&](std::size_t i) {
    const double b = cfg.b_values[i];
    try {
      PoleSearchOptions opt = base;
      // The b = 0 zero is real: start the search off the axis.
      if (b == 0.0) opt.initial_guess = cplx(lv.eps2 + 1e-3 * pair.alpha * pair.alpha, -1e-3 * pair.alpha * pair.alpha);
      const auto p = find_pole2<N>(b, pair, opt);
      return Row{{b, p.z.real(), p.z.imag(), e.eps2 + e.mu_slope * b, e.nu_curvature * b * b, p.residual,
                  static_cast<long long>(p.iterations), std::string("ok")},
                 "", kOk};
    } catch (const std::exception& ex) {
      return failed_row({b}, 8, ex);
    }
  });
  collect(out, std::move(rows));
  out.summary["normalization"] = cfg.normalization;
  out.summary["a"] = pair.a;
  out.summary["eps1"] = lv.eps1;
  out.summary["eps2"] = lv.eps2;
  out.summary["kappa2"] = lv.kappa2;
  out.summary["mu_slope"] = e.mu_slope;
  out.summary["nu_curvature"] = e.nu_curvature;
  out.summary["nu_curvature_closed_form"] = e.nu_curvature_closed_form;
  return out;
}

}  // namespace

CommandResult run_twopoint(const RunConfig& cfg) {
  return cfg.normalization == "bare_k0" ? twopoint_impl<GreenNormalization::bare_k0>(cfg)
                                        : twopoint_impl<GreenNormalization::consistent>(cfg);
}

CommandResult run_selftest(const RunConfig&) {
  const auto report = oracle::run_selftest();
  CommandResult out;
  out.table.columns = {"case", "result", "detail"};
  for (const auto& c : report.cases)
    out.table.rows.push_back({c.name, std::string(c.passed ? "PASS" : "FAIL"), c.detail});
  out.summary["cases"] = static_cast<long long>(report.cases.size());
  out.summary["all_passed"] = report.all_passed();
  if (!report.all_passed()) out.exit_code = kSelftest;
  return out;
}

CommandResult run_command(const std::string& command, const RunConfig& cfg) {
  if (command == "spectrum") return run_spectrum(cfg);
  if (command == "eigenfunction") return run_eigenfunction(cfg);
  if (command == "resonance") return run_resonance(cfg);
  if (command == "scatter") return run_scatter(cfg);
  if (command == "twopoint") return run_twopoint(cfg);
  if (command == "selftest") return run_selftest(cfg);
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace leakywire::cli
