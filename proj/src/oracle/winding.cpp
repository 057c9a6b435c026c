#include "leakywire/oracle/winding.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace leakywire::oracle {

namespace {

struct Walker {
  const ComplexFunction& f;
  const ContourPath& path;
  const WindingOptions& opt;
  double floor_abs;
  double total = 0.0;

  cplx eval(double s) {
    const cplx v = f(path(s));
    if (!(std::abs(v) > floor_abs)) throw ContourThroughZero("winding: |f| below the floor on the contour");
    return v;
  }

  void segment(double s0, cplx f0, double s1, cplx f1, int depth) {
    const double d = std::arg(f1 / f0);
    if (std::abs(d) <= opt.max_arg_step) {
      total += d;
      return;
    }
    if (depth >= opt.max_depth) throw ContourThroughZero("winding: argument not resolved (zero near the contour?)");
    const double sm = 0.5 * (s0 + s1);
    const cplx fm = eval(sm);
    segment(s0, f0, sm, fm, depth + 1);
    segment(sm, fm, s1, f1, depth + 1);
  }
};

}  // namespace

int winding_zero_count(const ComplexFunction& f, const ContourPath& path, const WindingOptions& options) {
  if (options.initial_samples < 4) throw ConfigError("winding: need at least 4 samples");
  const int n = options.initial_samples;
  std::vector<cplx> vals(n + 1);
  double fmax = 0.0;
  for (int i = 0; i < n; ++i) {
    vals[i] = f(path(static_cast<double>(i) / n));
    fmax = std::max(fmax, std::abs(vals[i]));
  }
  vals[n] = vals[0];
  Walker w{f, path, options, options.floor * fmax};
  for (int i = 0; i <= n; ++i)
    if (!(std::abs(vals[i]) > w.floor_abs)) throw ContourThroughZero("winding: |f| below the floor on the contour");
  for (int i = 0; i < n; ++i)
    w.segment(static_cast<double>(i) / n, vals[i], static_cast<double>(i + 1) / n, vals[i + 1], 0);
  const double turns = w.total / (2.0 * std::numbers::pi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) throw ContourThroughZero("winding: non-integer total turn");
  return static_cast<int>(rounded);
}

ContourPath circle(cplx center, double radius) {
  return [=](double s) { return center + radius * std::polar(1.0, 2.0 * std::numbers::pi * s); };
}

ContourPath left_half_annulus(double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_out > r_in)) throw ConfigError("left_half_annulus: need 0 < r_in < r_out");
  const double pi = std::numbers::pi;
  const double lin = std::log(r_in), lout = std::log(r_out);
  return [=](double s) -> cplx {
    const double u = 4.0 * s;
    if (u < 1.0) return std::polar(r_out, pi / 2 + pi * u);                     // outer arc, ccw
    if (u < 2.0) return std::polar(std::exp(lout + (lin - lout) * (u - 1.0)), 3 * pi / 2);  // down the -i side
    if (u < 3.0) return std::polar(r_in, 3 * pi / 2 - pi * (u - 2.0));          // inner arc, cw
    return std::polar(std::exp(lin + (lout - lin) * (u - 3.0)), pi / 2);        // up the +i side
  };
}

int physical_sheet_zero_count(const ModelParams& model, double r_in, double r_out, const WindingOptions& options) {
  model.validate();
  auto det = [&](cplx zeta) { return d_matrix_offset(zeta, model).det; };
  return winding_zero_count(det, left_half_annulus(r_in, r_out), options);
}

}  // namespace leakywire::oracle
