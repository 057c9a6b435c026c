#pragma once

#include "leakywire/errors.hpp"
#include "leakywire/specfun.hpp"

namespace leakywire::oracle {

// Raised when the extended working precision cannot absorb the series
// cancellation at the requested argument.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

struct SeriesValue {
  cplx value;
  double remainder_bound = 0.0;  // bound on the truncated tail, absolute
  int terms = 0;
};

// K0(w) from the ascending series
//   K0(w) = -(ln(w/2) + gamma) I0(w) + sum_{k>=1} H_k (w^2/4)^k / (k!)^2
// in 50-digit arithmetic, summed until the geometric tail bound drops below
// 1e-40 of the partial sum. Valid for 0 < |w| <= 16, Re w > 0.
SeriesValue k0_series_reference(cplx w);
cplx k0_reference(cplx w);

// K1(w) = 1/w + ln(w/2) I1(w) - (w/4) sum_k (psi(k+1) + psi(k+2)) (w^2/4)^k / (k!(k+1)!).
cplx k1_reference(cplx w);

// Hankel expansion of K0 in 50-digit arithmetic, truncated at its smallest
// term; error of order e^{-2|w|}. For |w| >= 8.
SeriesValue k0_asymptotic_reference(cplx w);

}  // namespace leakywire::oracle
