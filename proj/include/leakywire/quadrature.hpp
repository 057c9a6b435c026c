#pragma once

#include <functional>
#include <limits>

#include "leakywire/specfun.hpp"

namespace leakywire {

// Tolerances and layout hints for the adaptive integrators below.
struct QuadSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  // Interval budget of one global-adaptive Gauss-Kronrod run.
  int max_subdivisions = 4000;
  // Substitute t = u^2 on the first half-line panel (integrable t^{-1/2}
  // behaviour at t = 0).
  bool endpoint_transform = true;
  // Length of the first half-line panel; later panels double in length.
  double inner_scale = 1.0;
  // Truncation point from a known envelope bound (0 = rely on the panel
  // test alone). One more panel past the cutoff must be negligible.
  double tail_cutoff = 0.0;

  void validate() const;
};

struct QuadResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
  int evaluations = 0;

  QuadResult& operator+=(const QuadResult& other) {
    value += other.value;
    error += other.error;
    evaluations += other.evaluations;
    return *this;
  }
};

using Integrand = std::function<cplx(double)>;

// Global adaptive G7/K15 on a finite interval. Throws ConvergenceError when
// the subdivision budget runs out above tolerance.
QuadResult integrate_interval(const Integrand& f, double a, double b, const QuadSpec& spec = {});

// Integral over [start, inf) by doubling panels, for exponentially decaying
// integrands.
QuadResult integrate_tail(const Integrand& f, double start, const QuadSpec& spec = {});

// Integral over (0, inf); at worst t^{-1/2} at the origin.
QuadResult integrate_halfline(const Integrand& f, const QuadSpec& spec = {});

// Integral of f(t) / (t - pole) over [lo, hi] (hi may be +inf) for a pole at
// or near the real segment. f_at_pole is the analytic value of f at `pole`.
// Around Re(pole) a symmetric window [c - w, c + w], w = min((c - lo)/2, 1,
// (hi - c)/2), carries (f(t) - f_at_pole)/(t - pole) plus the closed-form
// logarithm; the rest is integrated directly. For a real pole the result is
// the Cauchy principal value.
QuadResult integrate_pole(const Integrand& f, cplx pole, cplx f_at_pole, double lo, double hi,
                          const QuadSpec& spec = {});

// Principal value of int_0^inf f(t)/(t - t0) dt. Throws DomainError if t0 <= 0.
QuadResult integrate_pv(const Integrand& f, double t0, const QuadSpec& spec = {});

// Principal value over a finite interval lo < t0 < hi.
QuadResult integrate_pv(const Integrand& f, double t0, double lo, double hi,
                        const QuadSpec& spec = {});

// Smallest T (on a doubling grid) where exp(-rate sqrt(T)) / sqrt(T) < abs_tol / 10.
double sqrt_envelope_cutoff(double rate, double abs_tol);

}  // namespace leakywire
