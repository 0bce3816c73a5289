#include "bohrconv/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bohrconv/errors.hpp"

namespace bohrconv {

namespace {

// e split into a double and its rounding error, so e*x + 1 keeps its low
// bits when x is close to -1/e.
constexpr double kEHi = 2.718281828459045;
constexpr double kELo = 1.4456468917292502e-16;

double branch_point_series(double p) {
  // W = -1 + p - p^2/3 + 11/72 p^3 - 43/540 p^4 + 769/17280 p^5 - 221/8505 p^6
  return -1.0 +
         p * (1.0 +
              p * (-1.0 / 3.0 +
                   p * (11.0 / 72.0 +
                        p * (-43.0 / 540.0 + p * (769.0 / 17280.0 + p * (-221.0 / 8505.0))))));
}

double initial_guess(double x, double p) {
  if (p < 0.5) return branch_point_series(p);
  if (std::abs(x) < 0.25) return x * (1.0 - x * (1.0 - 1.5 * x));
  if (x < 3.0) {
    const double l = std::log1p(x);
    return l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w(double x) {
  constexpr double kBranch = -1.0 / std::numbers::e;
  if (std::isnan(x) || x < kBranch - 1e-15) {
    throw DomainError("lambert_w: argument below -1/e");
  }
  if (x == 0.0) return 0.0;
  const double p2 = 2.0 * (std::fma(kEHi, x, 1.0) + kELo * x);
  if (p2 <= 0.0) return -1.0;
  const double p = std::sqrt(p2);
  // Seventh-order remainder of the branch-point series is below 1e-17 here.
  if (p < 1e-3) return branch_point_series(p);
  if (std::isinf(x)) return x;

  double w = initial_guess(x, p);
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (f == 0.0) break;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) {
      break;
    }
  }
  return std::max(w, -1.0);
}

double lambert_w_over_x(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * (1.0 - 1.5 * x);
  return lambert_w(x) / x;
}

double dilog(double x) {
  if (std::isnan(x) || x < 0.0 || x > 1.0) throw DomainError("dilog: argument outside [0, 1]");
  constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  if (x == 1.0) return kZeta2;
  if (x == 0.0) return 0.0;
  if (x > 0.5) {
    // Reflection keeps the series argument below 1/2.
    return kZeta2 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
  }
  double sum = 0.0;
  double power = x;
  for (std::size_t n = 1;; ++n) {
    const double dn = static_cast<double>(n);
    sum += power / (dn * dn);
    power *= x;
    const double next = dn + 1.0;
    if (power / (next * next * (1.0 - x)) < 1e-17 * sum) break;
  }
  return sum;
}

double pochhammer(double a, std::size_t n) {
  double result = 1.0;
  for (std::size_t k = 0; k < n; ++k) result *= a + static_cast<double>(k);
  return result;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    result *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return result;
}

std::vector<double> hypergeometric_coeffs(const HypergeometricParams& p, std::size_t order) {
  if (!(p.a > -1.0 && p.b > -1.0 && p.c > -1.0)) {
    throw InvalidInput("hypergeometric parameters must exceed -1");
  }
  if (p.c == 0.0) throw InvalidInput("hypergeometric parameter c = 0 makes (c)_n vanish");
  std::vector<double> gamma(order + 1);
  gamma[0] = 1.0;
  for (std::size_t n = 0; n < order; ++n) {
    const double dn = static_cast<double>(n);
    gamma[n + 1] = gamma[n] * (p.a + dn) * (p.b + dn) / ((p.c + dn) * (1.0 + dn));
    if (gamma[n + 1] < 0.0) {
      throw InvalidInput("hypergeometric coefficient gamma_" + std::to_string(n + 1) +
                         " is negative");
    }
  }
  return gamma;
}

}  // namespace bohrconv
