#include "leakywire/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "leakywire/errors.hpp"

namespace leakywire {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod 15-point abscissae (descending, last = centre) and weights; the
// Gauss 7-point rule uses every other abscissa.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  cplx value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod15(const Integrand& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<cplx, 15> fv;
  fv[7] = f(centre);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXk[j];
    fv[j] = f(centre - dx);
    fv[14 - j] = f(centre + dx);
  }
  cplx kron = fv[7] * kWk[7];
  cplx gauss = fv[7] * kWg[3];
  double resabs = std::abs(fv[7]) * kWk[7];
  for (int j = 0; j < 7; ++j) {
    const cplx pair = fv[j] + fv[14 - j];
    kron += pair * kWk[j];
    resabs += (std::abs(fv[j]) + std::abs(fv[14 - j])) * kWk[j];
    if (j % 2 == 1) gauss += pair * kWg[j / 2];
  }
  const cplx mean = 0.5 * kron;
  double resasc = std::abs(fv[7] - mean) * kWk[7];
  for (int j = 0; j < 7; ++j)
    resasc += (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean)) * kWk[j];

  // QUADPACK error heuristic.
  double err = std::abs((kron - gauss) * half);
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(50.0 * kEps * resabs, err);
  if (!std::isfinite(std::abs(kron))) err = kInf;
  return {a, b, kron * half, err};
}

double tolerance(const QuadSpec& spec, cplx value) {
  return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

}  // namespace

void QuadSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ConfigError("QuadSpec: tolerances must be positive");
  if (max_subdivisions < 1) throw ConfigError("QuadSpec: max_subdivisions must be >= 1");
  if (!(inner_scale > 0.0)) throw ConfigError("QuadSpec: inner_scale must be positive");
  if (tail_cutoff < 0.0) throw ConfigError("QuadSpec: tail_cutoff must be >= 0");
}

QuadResult integrate_interval(const Integrand& f, double a, double b, const QuadSpec& spec) {
  if (a == b) return {};
  std::priority_queue<Segment> open;
  std::vector<Segment> frozen;  // too narrow to split further
  Segment first = kronrod15(f, a, b);
  cplx total = first.value;
  double total_err = first.error;
  int evaluations = 15;
  open.push(first);
  int segments = 1;
  while (total_err > tolerance(spec, total) && !open.empty()) {
    if (segments >= spec.max_subdivisions) break;
    Segment worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(std::abs(worst.b - worst.a) > 1e3 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) ||
        mid == worst.a || mid == worst.b) {
      frozen.push_back(worst);
      continue;
    }
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    evaluations += 30;
    ++segments;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    open.push(left);
    open.push(right);
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  total = 0.0;
  total_err = 0.0;
  while (!open.empty()) {
    total += open.top().value;
    total_err += open.top().error;
    open.pop();
  }
  for (const auto& s : frozen) {
    total += s.value;
    total_err += s.error;
  }
  if (!std::isfinite(total_err) || total_err > tolerance(spec, total)) {
    throw ConvergenceError("integrate_interval: tolerance not reached on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "], error estimate " + std::to_string(total_err));
  }
  return {total, total_err, evaluations};
}

QuadResult integrate_tail(const Integrand& f, double start, const QuadSpec& spec) {
  QuadResult total;
  double lo = start;
  double len = spec.inner_scale;
  int small_panels = 0;
  bool cutoff_reached = false;
  for (int k = 0; k < 300; ++k) {
    const double hi = lo + len;
    const QuadResult panel = integrate_interval(f, lo, hi, spec);
    total += panel;
    const bool negligible =
        std::abs(panel.value) + panel.error <= 0.1 * tolerance(spec, total.value);
    // Past the envelope cutoff one negligible panel confirms the truncation.
    if (cutoff_reached && negligible) return total;
    if (spec.tail_cutoff > 0.0 && hi >= spec.tail_cutoff) cutoff_reached = true;
    small_panels = negligible ? small_panels + 1 : 0;
    if (small_panels >= 2) return total;
    lo = hi;
    len *= 2.0;
    if (!std::isfinite(lo)) break;
  }
  throw ConvergenceError("integrate_tail: integrand does not decay");
}

QuadResult integrate_halfline(const Integrand& f, const QuadSpec& spec) {
  spec.validate();
  if (!spec.endpoint_transform) return integrate_tail(f, 0.0, spec);
  const double s = spec.inner_scale;
  QuadResult total = integrate_interval([&f](double u) { return 2.0 * u * f(u * u); }, 0.0, std::sqrt(s), spec);
  total += integrate_tail(f, s, spec);
  return total;
}

QuadResult integrate_pole(const Integrand& f, cplx pole, cplx f_at_pole, double lo, double hi,
                          const QuadSpec& spec) {
  spec.validate();
  const double c = pole.real();
  const bool finite_hi = std::isfinite(hi);
  auto direct = [&](double t) { return f(t) / (t - pole); };

  auto piece = [&](double a, double b) -> QuadResult {
    if (!(b > a)) return {};
    if (a == 0.0 && spec.endpoint_transform) {
      return integrate_interval([&](double u) { return 2.0 * u * direct(u * u); }, 0.0, std::sqrt(b), spec);
    }
    return integrate_interval(direct, a, b, spec);
  };
  auto tail_from = [&](double a) -> QuadResult {
    QuadSpec tail_spec = spec;
    tail_spec.inner_scale = std::max(spec.inner_scale, a > 0.0 ? 0.5 * a : spec.inner_scale);
    return integrate_tail(direct, a, tail_spec);
  };

  if (!(c > lo) || (finite_hi && !(c < hi))) {
    if (pole.imag() == 0.0 && c >= lo && (!finite_hi || c <= hi))
      throw DomainError("integrate_pole: pole on an endpoint");
    // Pole away from the segment: plain integration.
    if (!finite_hi) {
      QuadSpec s = spec;
      return lo == 0.0 ? integrate_halfline(direct, s) : integrate_tail(direct, lo, s);
    }
    return piece(lo, hi);
  }

  double w = std::min(0.5 * (c - lo), 1.0);
  if (finite_hi) w = std::min(w, 0.5 * (hi - c));

  if (std::abs(pole.imag()) >= w) {
    QuadResult total = piece(lo, c);
    total += finite_hi ? piece(c, hi) : tail_from(c);
    return total;
  }

  auto subtracted = [&](double t) { return (f(t) - f_at_pole) / (t - pole); };
  QuadResult total = piece(lo, c - w);
  total += integrate_interval(subtracted, c - w, c, spec);
  total += integrate_interval(subtracted, c, c + w, spec);
  if (pole.imag() == 0.0) {
    // Symmetric window: log|c + w - t0| - log|c - w - t0| = 0.
  } else {
    total.value += f_at_pole * (std::log(cplx(c + w) - pole) - std::log(cplx(c - w) - pole));
  }
  total += finite_hi ? piece(c + w, hi) : tail_from(c + w);
  return total;
}

QuadResult integrate_pv(const Integrand& f, double t0, const QuadSpec& spec) {
  if (!(t0 > 0.0)) throw DomainError("integrate_pv: pole at or beyond the t = 0 endpoint");
  return integrate_pole(f, cplx(t0), f(t0), 0.0, std::numeric_limits<double>::infinity(), spec);
}

QuadResult integrate_pv(const Integrand& f, double t0, double lo, double hi, const QuadSpec& spec) {
  if (!(t0 > lo) || !(t0 < hi)) throw DomainError("integrate_pv: pole must lie strictly inside (lo, hi)");
  return integrate_pole(f, cplx(t0), f(t0), lo, hi, spec);
}

double sqrt_envelope_cutoff(double rate, double abs_tol) {
  if (!(rate > 0.0)) throw DomainError("sqrt_envelope_cutoff: rate must be positive");
  double t = 1.0;
  while (std::exp(-rate * std::sqrt(t)) / std::sqrt(t) >= 0.1 * abs_tol) t *= 2.0;
  return t;
}

}  // namespace leakywire
