#include "bohrconv/roots.hpp"

#include <cmath>

#include "bohrconv/errors.hpp"

namespace bohrconv {

Root bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, lo, hi};
  if (fhi == 0.0) return {hi, 0.0, lo, hi};
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw NoRootError("no sign change on the bracket");
  }
  const double lo0 = lo;
  const double hi0 = hi;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return {mid, 0.0, lo0, hi0};
    if (std::signbit(fmid) == std::signbit(flo)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  if (std::abs(flo) <= std::abs(fhi)) return {lo, std::abs(flo), lo0, hi0};
  return {hi, std::abs(fhi), lo0, hi0};
}

Root first_root(const std::function<double(double)>& f, double lo, double hi, double step) {
  double x0 = lo;
  double f0 = f(x0);
  if (f0 == 0.0) return {lo, 0.0, lo, hi};
  while (x0 < hi) {
    const double x1 = std::min(x0 + step, hi);
    const double f1 = f(x1);
    if (f1 == 0.0 || std::signbit(f1) != std::signbit(f0)) {
      Root root = bisect(f, x0, x1);
      return root;
    }
    x0 = x1;
    f0 = f1;
  }
  throw NoRootError("no sign change found by the scan");
}

Minimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                       double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  const double arg = 0.5 * (lo + hi);
  return {arg, f(arg)};
}

}  // namespace bohrconv
