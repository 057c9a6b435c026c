#include "leakywire/oracle/k0_reference.hpp"

#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace leakywire::oracle {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

constexpr double kMaxSeriesModulus = 16.0;
constexpr double kWorkingDigits = 50.0;

Complex to_mp(cplx w) { return Complex(Real(w.real()), Real(w.imag())); }
cplx to_double(const Complex& w) { return {static_cast<double>(w.real()), static_cast<double>(w.imag())}; }

void check_series_domain(cplx w) {
  if (!(w.real() > 0.0)) throw DomainError("k0 reference: Re w must be positive");
  if (std::abs(w) > kMaxSeriesModulus) throw PrecisionExhausted("k0 reference: |w| beyond the series range");
}

// Cancellation check: log10(largest term / result) must leave >= 20 digits.
void check_cancellation(double largest, double result) {
  if (result == 0.0 || std::log10(largest / result) > kWorkingDigits - 20.0)
    throw PrecisionExhausted("k0 reference: series cancellation exceeds the working precision");
}

}  // namespace

SeriesValue k0_series_reference(cplx wd) {
  check_series_domain(wd);
  const Complex w = to_mp(wd);
  const Complex x = w * w / 4;
  const Real gamma = boost::math::constants::euler<Real>();
  const Complex lead = -(log(w / 2) + gamma);

  // term_k = x^k / (k!)^2 ; I0 = sum term_k ; S = sum H_k term_k
  Complex term(1), i0(1), s(0);
  Real harmonic(0);
  const Real ax = abs(x);
  double largest = 1.0;
  int k = 0;
  Real bound(1);
  for (k = 1; k < 2000; ++k) {
    term *= x / Real(k * k);
    harmonic += Real(1) / k;
    i0 += term;
    s += harmonic * term;
    const double mag = static_cast<double>(abs(term) * (abs(lead) + harmonic));
    largest = std::max(largest, mag);
    // Tail ratio bound once k+1 exceeds sqrt(|x|): r = |x|/(k+1)^2 * (1 + 1/(k+1)) harmonic growth.
    const Real r = ax / Real((k + 1) * (k + 1)) * (1 + Real(1) / (k + 1));
    if (r < Real(0.5)) {
      bound = abs(term) * (abs(lead) + harmonic + 1) * r / (1 - r);
      const Real total = abs(lead * i0 + s);
      if (bound < Real(1e-40) * total) break;
    }
  }
  if (k >= 2000) throw PrecisionExhausted("k0 reference: series did not terminate");
  const Complex value = lead * i0 + s;
  SeriesValue out;
  out.value = to_double(value);
  out.remainder_bound = static_cast<double>(bound);
  out.terms = k;
  check_cancellation(largest, std::abs(out.value));
  return out;
}

cplx k0_reference(cplx w) { return k0_series_reference(w).value; }

cplx k1_reference(cplx wd) {
  check_series_domain(wd);
  const Complex w = to_mp(wd);
  const Complex x = w * w / 4;
  const Real gamma = boost::math::constants::euler<Real>();
  // I1 = (w/2) sum x^k/(k!(k+1)!) ; psi(k+1) = -gamma + H_k
  Complex term(1), i1sum(1), s(-gamma + (-gamma + 1));  // k = 0: psi(1) + psi(2)
  Real hk(0), hk1(1);
  double largest = 1.0;
  int k = 0;
  for (k = 1; k < 2000; ++k) {
    term *= x / Real(k * (k + 1));
    hk += Real(1) / k;
    hk1 += Real(1) / (k + 1);
    i1sum += term;
    s += (-2 * gamma + hk + hk1) * term;
    largest = std::max(largest, static_cast<double>(abs(term) * (hk + hk1 + 2)));
    if (abs(term) * (hk + hk1 + 2) < Real(1e-45) && k * k > static_cast<double>(abs(x))) break;
  }
  const Complex value = 1 / w + log(w / 2) * (w / 2) * i1sum - (w / 4) * s;
  const cplx out = to_double(value);
  check_cancellation(largest * std::abs(wd), std::abs(out));
  return out;
}

SeriesValue k0_asymptotic_reference(cplx wd) {
  if (!(wd.real() > 0.0)) throw DomainError("k0 asymptotic reference: Re w must be positive");
  if (std::abs(wd) < 8.0) throw PrecisionExhausted("k0 asymptotic reference: |w| too small for the expansion");
  const Complex w = to_mp(wd);
  const Real pi = boost::math::constants::pi<Real>();
  // K0 ~ sqrt(pi/2w) e^{-w} sum_k a_k, a_k = a_{k-1} * (-(2k-1)^2) / (8 k w)
  Complex a(1), sum(1);
  Real prev = 1;
  int k = 1;
  for (; k < 200; ++k) {
    const Complex next = a * Real(-(2 * k - 1) * (2 * k - 1)) / (Real(8 * k) * w);
    if (abs(next) >= prev) break;
    a = next;
    prev = static_cast<Real>(abs(a));
    sum += a;
  }
  SeriesValue out;
  const Complex pref = sqrt(pi / (2 * w)) * exp(-w);
  out.value = to_double(pref * sum);
  out.remainder_bound = static_cast<double>(abs(pref) * prev);
  out.terms = k;
  return out;
}

}  // namespace leakywire::oracle
