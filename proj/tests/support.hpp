#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "bohrconv/series.hpp"

namespace testing {

using bohrconv::Complex;
using bohrconv::TruncatedSeries;

// Seeded generators for property tests. Each test owns its own Gen.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  Complex complex(double radius = 1.0) {
    return std::polar(radius * std::sqrt(uniform()), uniform(0.0, 2.0 * std::numbers::pi));
  }
  // Coefficients bounded by decay^n so that majorants converge on the unit disk.
  TruncatedSeries series(std::size_t order, std::size_t vanish = 0, double decay = 0.9) {
    std::vector<Complex> c(order + 1);
    double scale = 1.0;
    for (std::size_t n = 0; n <= order; ++n) {
      if (n >= vanish) c[n] = complex(scale);
      scale *= decay;
    }
    return TruncatedSeries(std::move(c));
  }
  std::vector<Complex> polynomial(std::size_t degree) {
    std::vector<Complex> p(degree + 1);
    for (auto& v : p) v = complex();
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

inline double max_diff(const TruncatedSeries& f, const TruncatedSeries& g) {
  double d = 0.0;
  const std::size_t n = std::max(f.order(), g.order());
  for (std::size_t k = 0; k <= n; ++k) d = std::max(d, std::abs(f[k] - g[k]));
  return d;
}

}  // namespace testing
