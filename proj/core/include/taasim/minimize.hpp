// minimize.hpp — derivative-free 1-D minimization (golden-section).
#pragma once

#include <cmath>
#include <functional>

namespace taasim {

struct MinimizeResult {
  double x = 0.0, fx = 0.0;
  int evaluations = 0;
  bool on_boundary = false;  // argmin pinned to a bracket end (no interior minimum seen)
};

// Golden-section search on [lo, hi]; stops when the bracket width falls below xtol.
// Unimodality is the caller's contract; on_boundary reports an endpoint argmin.
inline MinimizeResult golden_min(const std::function<double(double)>& f, double lo, double hi,
                                 double xtol) {
  constexpr double kInvPhi = 0.6180339887498949;  // 1/phi
  MinimizeResult res;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  res.evaluations = 2;
  while (b - a > xtol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++res.evaluations;
  }
  res.x = 0.5 * (a + b);
  res.fx = f(res.x);
  ++res.evaluations;
  // Endpoint comparison: a minimizer hugging the original bracket edge means the
  // true minimum may lie outside.
  const double flo = f(lo), fhi = f(hi);
  res.evaluations += 2;
  if (flo <= res.fx) {
    res.x = lo;
    res.fx = flo;
    res.on_boundary = true;
  }
  if (fhi < res.fx) {
    res.x = hi;
    res.fx = fhi;
    res.on_boundary = true;
  }
  const double span = hi - lo;
  if (std::abs(res.x - lo) < 1e-3 * span || std::abs(res.x - hi) < 1e-3 * span)
    res.on_boundary = true;
  return res;
}

}  // namespace taasim
