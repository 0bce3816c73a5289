#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bohrconv/errors.hpp"
#include "bohrconv/specfun.hpp"

using namespace bohrconv;

namespace {

const double kE = std::numbers::e;

// Partial sum with enough terms that the geometric tail is below 1e-16.
double dilog_oracle(double x) {
  double s = 0.0;
  double p = 1.0;
  for (int n = 1; n < 20000; ++n) {
    p *= x;
    s += p / (double(n) * n);
    if (p < 1e-18) break;
  }
  return s;
}

}  // namespace

TEST_CASE("lambert w fixed values") {
  CHECK(lambert_w(0.0) == 0.0);
  CHECK(lambert_w(kE) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambert_w(-1.0 / kE) == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK_THROWS_AS(lambert_w(-1.0 / kE - 1e-6), DomainError);
}

TEST_CASE("lambert w satisfies w e^w = x on a log grid") {
  const double lo = -1.0 / kE;
  const double span = std::log10(1000.0 - lo);
  for (int i = 0; i < 10000; ++i) {
    const double t = -12.0 + (span + 12.0) * i / 9999.0;
    const double x = lo + std::pow(10.0, t);
    const double w = lambert_w(x);
    CHECK(w >= -1.0);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-13 * std::max(1.0, std::abs(x)));
  }
}

TEST_CASE("lambert w is increasing") {
  double prev = lambert_w(-1.0 / kE);
  for (int i = 1; i <= 2000; ++i) {
    const double x = -1.0 / kE + i * 0.01;
    const double w = lambert_w(x);
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("w(x)/x is continuous at zero") {
  CHECK(lambert_w_over_x(0.0) == 1.0);
  CHECK(lambert_w_over_x(1e-10) == doctest::Approx(1.0 - 1e-10).epsilon(1e-15));
  CHECK(lambert_w_over_x(0.3) == doctest::Approx(lambert_w(0.3) / 0.3).epsilon(1e-14));
  CHECK(lambert_w_over_x(-0.2) == doctest::Approx(lambert_w(-0.2) / -0.2).epsilon(1e-14));
}

TEST_CASE("dilog values") {
  CHECK(dilog(0.0) == 0.0);
  CHECK(dilog(1.0) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-15));
  CHECK(std::abs(dilog(0.872664 * 0.872664) - 1.0) < 1e-4);
  CHECK_THROWS_AS(dilog(-0.1), DomainError);
  CHECK_THROWS_AS(dilog(1.1), DomainError);
}

TEST_CASE("dilog agrees with long partial sums") {
  for (int i = 0; i <= 99; ++i) {
    const double x = 0.01 * i;
    CHECK(std::abs(dilog(x) - dilog_oracle(x)) < 1e-10);
  }
}

TEST_CASE("dilog satisfies the reflection formula") {
  const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  for (int i = 1; i < 100; ++i) {
    const double x = 0.01 * i;
    const double lhs = dilog(x) + dilog(1.0 - x);
    CHECK(std::abs(lhs - (pi2_6 - std::log(x) * std::log1p(-x))) < 1e-12);
  }
}

TEST_CASE("pochhammer and binomial") {
  CHECK(pochhammer(3.7, 0) == 1.0);
  CHECK(pochhammer(2.0, 3) == 24.0);
  double fact = 1.0;
  for (std::size_t n = 1; n <= 15; ++n) {
    fact *= double(n);
    CHECK(pochhammer(1.0, n) == fact);
  }
  CHECK(binomial(5, 3) == 10.0);
  CHECK(binomial(60, 30) == doctest::Approx(1.1826458156486e17));
  CHECK(binomial(3, 5) == 0.0);
}

TEST_CASE("hypergeometric coefficients") {
  for (double g : hypergeometric_coeffs({1.0, 1.0, 1.0}, 50)) CHECK(g == 1.0);
  const auto h = hypergeometric_coeffs({1.0, 1.0, 2.0}, 50);
  for (std::size_t n = 0; n <= 50; ++n) CHECK(h[n] == doctest::Approx(1.0 / double(n + 1)));
  CHECK(hypergeometric_coeffs({1.0, 2.0, 3.0}, 3)[1] == doctest::Approx(2.0 / 3.0));
  CHECK(hypergeometric_coeffs({-0.5, -0.3, 0.7}, 3)[0] == 1.0);
  // gamma_1 = ab/c < 0
  CHECK_THROWS_AS(hypergeometric_coeffs({-0.5, 0.5, 1.0}, 5), InvalidInput);
  CHECK_THROWS_AS(hypergeometric_coeffs({-1.5, 0.5, 1.0}, 5), InvalidInput);
}

TEST_CASE("hypergeometric recurrence matches pochhammer quotients") {
  const HypergeometricParams params[] = {{0.5, 1.5, 2.5}, {2.0, 3.0, 1.5}, {0.3, 0.3, 0.9}};
  for (const auto& p : params) {
    const auto g = hypergeometric_coeffs(p, 64);
    for (std::size_t n = 0; n <= 64; ++n) {
      const double direct =
          pochhammer(p.a, n) * pochhammer(p.b, n) / (pochhammer(p.c, n) * pochhammer(1.0, n));
      CHECK(std::abs(g[n] - direct) <= 1e-12 * std::abs(direct));
    }
  }
}
