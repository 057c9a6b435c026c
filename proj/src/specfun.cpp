#include "leakywire/specfun.hpp"

#include <cmath>
#include <limits>

#include "leakywire/errors.hpp"

namespace leakywire {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesRadius = 2.0;
constexpr double kAsymptoticRadius = 25.0;

void require_right_half_plane(cplx w) {
  if (!(w.real() > 0.0)) throw DomainError("Macdonald function requires Re w > 0");
}

BesselK01 k01_series(cplx w) {
  const double euler = -kPsi1;
  const cplx t = 0.25 * w * w;
  const cplx log_half = std::log(0.5 * w);

  // K0 = -(ln(w/2) + gamma) I0 + sum_k H_k t^k / (k!)^2
  // K1 = 1/w + ln(w/2) I1 - (w/4) sum_k (psi(k+1) + psi(k+2)) t^k / (k!(k+1)!)
  cplx term = 1.0;  // t^k / (k!)^2
  cplx i0 = 0.0, h0 = 0.0;
  cplx i1 = 0.0, h1 = 0.0;
  double harmonic = 0.0;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      term *= t / (double(k) * double(k));
      harmonic += 1.0 / k;
    }
    const cplx term1 = term / double(k + 1);  // t^k / (k!(k+1)!)
    i0 += term;
    h0 += harmonic * term;
    i1 += term1;
    const double psi_sum = -2.0 * euler + 2.0 * harmonic + 1.0 / (k + 1);
    h1 += psi_sum * term1;
    if (k > 2 && std::abs(term) < kEps * 1e-2 * std::abs(i0)) break;
  }
  BesselK01 out;
  out.k0 = -(log_half + euler) * i0 + h0;
  out.k1 = 1.0 / w + log_half * (0.5 * w * i1) - 0.25 * w * h1;
  return out;
}

// Temme's method for K_nu, K_{nu+1} at nu = 0 (Steed's evaluation of CF2).
BesselK01 k01_continued_fraction(cplx w) {
  cplx b = 2.0 * (1.0 + w);
  cplx d = 1.0 / b;
  cplx h = d, delh = d;
  cplx q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  cplx q = a1, c = a1;
  double a = -a1;
  cplx s = 1.0 + q * delh;
  int i = 1;
  for (; i < 20000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const cplx qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const cplx dels = q * delh;
    s += dels;
    if (std::abs(dels) < 0.25 * kEps * std::abs(s)) break;
  }
  if (i == 20000) throw ConvergenceError("K0 continued fraction did not converge");
  h = a1 * h;
  BesselK01 out;
  out.k0 = std::sqrt(std::numbers::pi / (2.0 * w)) * std::exp(-w) / s;
  out.k1 = out.k0 * (w + 0.5 - h) / w;
  return out;
}

cplx asymptotic_k(cplx w, double nu) {
  const double mu = 4.0 * nu * nu;
  cplx sum = 1.0, term = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * w);
    const double mag = std::abs(term);
    if (mag > prev) break;
    sum += term;
    prev = mag;
    if (mag < 0.25 * kEps * std::abs(sum)) break;
  }
  return std::sqrt(std::numbers::pi / (2.0 * w)) * std::exp(-w) * sum;
}

}  // namespace

cplx sqrt_cut(cplx z) {
  if (z.imag() == 0.0 && z.real() >= 0.0)
    throw DomainError("sqrt_cut: argument on the cut [0, inf)");
  return cplx(0.0, 1.0) * std::sqrt(-z);
}

cplx decay_rate(cplx z) {
  if (z.imag() == 0.0 && z.real() >= 0.0)
    throw DomainError("decay_rate: argument on the cut [0, inf)");
  return std::sqrt(-z);
}

BesselK01 macdonald_k01(cplx w) {
  require_right_half_plane(w);
  const double r = std::abs(w);
  if (r <= kSeriesRadius) return k01_series(w);
  if (r <= kAsymptoticRadius) return k01_continued_fraction(w);
  return {asymptotic_k(w, 0.0), asymptotic_k(w, 1.0)};
}

cplx macdonald_k0(cplx w) { return macdonald_k01(w).k0; }

cplx macdonald_k1(cplx w) { return macdonald_k01(w).k1; }

cplx k0_prime(cplx w) { return -macdonald_k01(w).k1; }

cplx s_beta(cplx z, double beta) {
  return beta + (std::log(0.5 * decay_rate(z)) - kPsi1) / kTwoPi;
}

double s_breve(double kappa, double beta) {
  if (!(kappa > 0.0)) throw DomainError("s_breve requires kappa > 0");
  return beta + (std::log(0.5 * kappa) - kPsi1) / kTwoPi;
}

double s_breve_prime(double kappa) {
  if (!(kappa > 0.0)) throw DomainError("s_breve_prime requires kappa > 0");
  return 1.0 / (kTwoPi * kappa);
}

}  // namespace leakywire
