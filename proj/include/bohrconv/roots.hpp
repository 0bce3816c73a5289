#pragma once

#include <functional>

namespace bohrconv {

/// Bracketed root of a scalar function.
struct Root {
  double value = 0.0;
  double residual = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Bisection on [lo, hi] down to adjacent doubles. Accepts a zero at either
/// endpoint; otherwise f(lo) and f(hi) must differ in sign (NoRootError).
Root bisect(const std::function<double(double)>& f, double lo, double hi);

/// First sign change of f on [lo, hi] found by stepping `step`, then bisected.
/// Gives the minimal root rather than an arbitrary one.
Root first_root(const std::function<double(double)>& f, double lo, double hi,
                double step = 1e-3);

struct Minimum {
  double arg = 0.0;
  double value = 0.0;
};

/// Golden-section search for a unimodal minimum on [lo, hi].
Minimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                       double tol = 1e-12);

}  // namespace bohrconv
