#pragma once

// Small numerical helpers shared by the library sources. Not installed.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "spectral_walks/errors.hpp"

namespace spectral_walks::detail {

// Golden-section search for a maximum of f on [lo, hi].
template <typename F>
inline double golden_max(F& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 100 && (b - a) > 1e-15; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::max({fc, fd, f(0.5 * (a + b))});
}

// Maximum of f over [-1, 1]: Chebyshev-point grid with `intervals` cells, each grid
// local maximum refined by golden section over its neighbouring cells.
template <typename F>
inline double maximize_on_unit_interval(F f, int intervals) {
  std::vector<double> xs(static_cast<std::size_t>(intervals) + 1);
  std::vector<double> fs(xs.size());
  for (int j = 0; j <= intervals; ++j) {
    xs[j] = -std::cos(std::numbers::pi * j / intervals);
    fs[j] = f(xs[j]);
  }
  xs.front() = -1.0;
  xs.back() = 1.0;
  double best = *std::max_element(fs.begin(), fs.end());
  for (int j = 0; j <= intervals; ++j) {
    const bool left_ok = j == 0 || fs[j] >= fs[j - 1];
    const bool right_ok = j == intervals || fs[j] >= fs[j + 1];
    if (!(left_ok && right_ok)) continue;
    const double lo = xs[std::max(j - 1, 0)];
    const double hi = xs[std::min(j + 1, intervals)];
    best = std::max(best, golden_max(f, lo, hi));
  }
  return best;
}

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
template <typename F>
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(F& f, int max_depth) : f_(f), max_depth_(max_depth) {}

  double integrate(double a, double b, double tol) {
    const double fa = f_(a);
    const double fb = f_(b);
    const double m = 0.5 * (a + b);
    const double fm = f_(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fm, fb, whole, tol, max_depth_);
  }

 private:
  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f_(lm);
    const double frm = f_(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * std::max(tol, 1e-16 * std::abs(left + right))) return left + right + delta / 15.0;
    if (depth <= 0) {
      throw NumericError("adaptive Simpson: tolerance not reached at maximum recursion depth");
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }

  F& f_;
  int max_depth_;
};

template <typename F>
double adaptive_simpson(F f, double a, double b, double tol, int max_depth = 40) {
  if (a == b) return 0.0;
  AdaptiveSimpson<F> integrator(f, max_depth);
  return integrator.integrate(a, b, tol);
}

}  // namespace spectral_walks::detail
