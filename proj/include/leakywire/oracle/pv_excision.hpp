#pragma once

#include <functional>
#include <string>
#include <vector>

namespace leakywire::oracle {

struct ExcisionReference {
  double value = 0.0;
  double observed_order = 0.0;  // convergence order after removing the O(eps) term
  std::vector<double> eps;
  std::vector<double> excised;  // J(eps) for each eps
  std::vector<std::string> warnings;
};

// PV of int_lo^hi f(t)/(t - t0) dt (hi may be +inf) from symmetric excision
//   J(eps) = int_lo^{t0-eps} + int_{t0+eps}^hi
// evaluated by tanh-sinh / exp-sinh quadrature and extrapolated to eps = 0
// with the odd-power model J = PV + c1 eps + c3 eps^3 + c5 eps^5 + ...
// eps_list must be strictly decreasing, at least 4 entries, below the
// distance from t0 to lo.
ExcisionReference pv_excision_reference(const std::function<double(double)>& f, double t0, double lo, double hi,
                                        const std::vector<double>& eps_list);

// Default list: 1e-2 * t0-scale halving four times.
std::vector<double> default_eps_list(double t0, double lo);

}  // namespace leakywire::oracle
