#pragma once

#include <vector>

#include "leakywire/errors.hpp"

namespace leakywire::oracle {

class GridResolutionError : public Error {
 public:
  using Error::Error;
};

struct FdGrid {
  // Box [-half_width, half_width] with Dirichlet ends; 0 = 30/alpha.
  double half_width = 0.0;
  // Coarsest mollifier width; 0 = 0.2/alpha. Refinements halve it.
  double h0 = 0.0;
  int refinements = 5;
  // Grid cells per mollifier width.
  int cells_per_width = 4;
};

struct TransverseFdResult {
  double level = 0.0;             // Richardson-extrapolated ground level
  double level_error_estimate = 0.0;
  std::vector<double> widths;     // mollifier widths h
  std::vector<double> levels;     // ground level at each h
  double profile_overlap = 0.0;   // finest grid vs e^{-alpha|x|/2}
  double multiplier_at_level = 0.0;  // gamma00_multiplier(0, level): 0 at the threshold
};

// Ground state of -d^2/dx^2 - alpha delta_h(x) (hat mollifier of width h) by
// three-point finite differences, lowest eigenpair from LAPACK dstevr,
// Richardson-extrapolated in h -> 0.
TransverseFdResult transverse_fd_check(double alpha, const FdGrid& grid = {});

}  // namespace leakywire::oracle
