#pragma once

#include <functional>

#include "leakywire/errors.hpp"
#include "leakywire/operator_model.hpp"

namespace leakywire::oracle {

class ContourThroughZero : public Error {
 public:
  using Error::Error;
};

using ComplexFunction = std::function<cplx(cplx)>;
// Closed contour, s in [0, 1], counterclockwise.
using ContourPath = std::function<cplx(double)>;

struct WindingOptions {
  int initial_samples = 128;
  double max_arg_step = 0.4;  // radians between accepted neighbours
  int max_depth = 40;
  // |f| below floor * max|f| over the initial samples counts as a zero on
  // the contour.
  double floor = 1e-12;
};

// Winding number of f along the path (number of zeros minus poles inside),
// with bisection wherever the argument jumps by more than max_arg_step.
int winding_zero_count(const ComplexFunction& f, const ContourPath& path, const WindingOptions& options = {});

ContourPath circle(cplx center, double radius);

// Boundary of {-r e^{iv} : r_in <= r <= r_out, |v| <= pi/2}, the left half
// annulus; radial sides parametrised in log r.
ContourPath left_half_annulus(double r_in, double r_out);

// Number of physical-sheet zeros of det D(z) below the threshold, from the
// winding of det D along the left half annulus in zeta = z + alpha^2/4.
int physical_sheet_zero_count(const ModelParams& model, double r_in, double r_out,
                              const WindingOptions& options = {});

}  // namespace leakywire::oracle
