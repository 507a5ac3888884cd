#include "qcorr/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

namespace {

struct Vertex {
  Point2 x;
  double f;
};

Point2 affine(const Point2& a, const Point2& b, double t) {
  // a + t (b - a)
  return {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
}

double diameter(const std::array<Vertex, 3>& s) {
  double d = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      d = std::max(d, std::hypot(s[i].x[0] - s[j].x[0], s[i].x[1] - s[j].x[1]));
  return d;
}

}  // namespace

SimplexResult minimize_simplex(const std::function<double(const Point2&)>& f, const Point2& start,
                               const Point2& step, int max_iterations, double value_tol,
                               double size_tol) {
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

  std::array<Vertex, 3> s = {Vertex{start, f(start)},
                             Vertex{{start[0] + step[0], start[1]}, 0.0},
                             Vertex{{start[0], start[1] + step[1]}, 0.0}};
  s[1].f = f(s[1].x);
  s[2].f = f(s[2].x);

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  int iter = 0;
  bool converged = false;
  for (; iter < max_iterations; ++iter) {
    std::sort(s.begin(), s.end(), by_value);
    if (s[2].f - s[0].f < value_tol && diameter(s) < size_tol) {
      converged = true;
      break;
    }
    const Point2 centroid = {0.5 * (s[0].x[0] + s[1].x[0]), 0.5 * (s[0].x[1] + s[1].x[1])};

    const Point2 xr = affine(centroid, s[2].x, -kReflect);
    const double fr = f(xr);
    if (fr < s[0].f) {
      const Point2 xe = affine(centroid, s[2].x, -kExpand);
      const double fe = f(xe);
      s[2] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < s[1].f) {
      s[2] = {xr, fr};
      continue;
    }
    // Contract toward the better of the reflected and worst points.
    const bool outside = fr < s[2].f;
    const Point2 xc = outside ? affine(centroid, xr, kContract) : affine(centroid, s[2].x, kContract);
    const double fc = f(xc);
    if (fc < std::min(fr, s[2].f)) {
      s[2] = {xc, fc};
      continue;
    }
    for (std::size_t i = 1; i < 3; ++i) {
      s[i].x = affine(s[0].x, s[i].x, kShrink);
      s[i].f = f(s[i].x);
    }
  }
  std::sort(s.begin(), s.end(), by_value);
  return {s[0].x, s[0].f, iter, converged};
}

}  // namespace qcorr
