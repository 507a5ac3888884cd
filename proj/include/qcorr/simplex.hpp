#pragma once

#include <array>
#include <functional>

namespace qcorr {

using Point2 = std::array<double, 2>;

struct SimplexResult {
  Point2 point;
  double value;
  int iterations;
  bool converged;
};

/// Nelder-Mead on two parameters, started from a right simplex of the given
/// step around `start`. Stops once the spread of vertex values falls below
/// `value_tol` and the simplex diameter below `size_tol`, or after
/// `max_iterations` steps (converged = false).
SimplexResult minimize_simplex(const std::function<double(const Point2&)>& f, const Point2& start,
                               const Point2& step, int max_iterations, double value_tol,
                               double size_tol = 1e-7);

}  // namespace qcorr
