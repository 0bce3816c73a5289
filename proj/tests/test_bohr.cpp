#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "bohrconv/bohr.hpp"
#include "bohrconv/errors.hpp"
#include "bohrconv/verify.hpp"
#include "support.hpp"

using namespace bohrconv;

namespace {

// Independent of the library's root finder: plain bisection on a sign change.
double solve(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  REQUIRE(flo * f(hi) <= 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double id0_value(double r, double a) { return a + r * (1.0 - a * a) / (1.0 - a * r); }

double derivative_value(std::size_t m, double r, double a) {
  return a + (1.0 / a - a) * (std::pow(1.0 - a * r, -double(m + 1)) - 1.0);
}

double integral_value(double r, double a) {
  return a * r + (1.0 / a - a) * r * (-std::log1p(-a * r) / (a * r) - 1.0);
}

void check_result(const RadiusResult& r) {
  CHECK(r.lo <= r.value);
  CHECK(r.value <= r.hi);
  if (r.method != Method::closed_form) CHECK(r.residual <= 1e-12);
}

}  // namespace

TEST_CASE("convolution pair closed form") {
  CHECK(bombieri_value_thm1(id0_pair(), 0.75, 0.4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bombieri_value_thm1(id0_pair(), 0.6, 0.3) == doctest::Approx(id0_value(0.3, 0.6)));
  // m = 1, a = 0.9, r = 0.15: 0.9 + (1/0.9 - 0.9)(1/(1-0.135)^2 - 1).
  CHECK(bombieri_value_thm1(derivative_pair(1), 0.9, 0.15) ==
        doctest::Approx(0.9710381236).epsilon(1e-10));
  for (std::size_t m = 0; m <= 3; ++m) {
    for (double r : {0.1, 0.2, 0.3}) {
      CHECK(bombieri_value_thm1(derivative_pair(m), 1.0, r) == 1.0);
    }
  }
  CHECK(bombieri_value_thm1(integral_pair(), 1.0, 0.6) == doctest::Approx(0.6));
  CHECK(bombieri_value_thm1(integral_pair(), 0.9, 0.5) == doctest::Approx(integral_value(0.5, 0.9)));
  CHECK(bombieri_value_thm1(lacunary_kernel(1), 0.8, 0.3) == doctest::Approx(id0_value(0.3, 0.8)));
}

TEST_CASE("convolution pair hypotheses are enforced") {
  CHECK_THROWS_AS(bombieri_value_thm1(id0_pair(), 0.3, 0.4), HypothesisViolation);
  // derivative m = 1: inf ratio 2/3, so r <= 2a/3 is required.
  CHECK_THROWS_AS(bombieri_value_thm1(derivative_pair(1), 0.6, 0.41), HypothesisViolation);
  CHECK_NOTHROW(bombieri_value_thm1(derivative_pair(1), 0.6, 0.39));
  CHECK_THROWS_AS(bombieri_value_thm1(id0_pair(), 1.2, 0.1), HypothesisViolation);
  try {
    bombieri_value_thm1(id0_pair(), 0.3, 0.4);
  } catch (const HypothesisViolation& e) {
    CHECK(e.condition() == "a > r");
  }

  const auto plain = polynomial_kernel({1.0, 1.0, 1.0});
  const KernelPair no_witness{"custom", geometric_kernel(), plain, 0};
  CHECK_THROWS_AS(bombieri_value_thm1(no_witness, 0.8, 0.2), HypothesisViolation);
  CHECK_NOTHROW(bombieri_value_thm1(no_witness, 0.8, 0.2, CoKPolicy::assume));

  const KernelPair asserted{"custom", geometric_kernel(), plain.with_asserted_co_k(), 0};
  const auto hs = theorem1_hypotheses(asserted.h1, asserted.h2, 0.8, 0.2);
  bool flagged = false;
  for (const auto& h : hs) flagged = flagged || (h.name == "co-K witness asserted" && h.ok);
  CHECK(flagged);

  // Lacunary m >= 2: the hull function z^m/(1-z^m) is not normalized.
  CHECK_THROWS_AS(bombieri_value_thm1(lacunary_kernel(2), 0.9, 0.3), HypothesisViolation);
  CHECK_NOTHROW(bombieri_value_thm1(lacunary_kernel(2), 0.9, 0.3, CoKPolicy::assume));
}

TEST_CASE("convolution pair value increases in r") {
  const std::vector<KernelPair> pairs = {id0_pair(), derivative_pair(1), derivative_pair(3),
                                         integral_pair(), lacunary_kernel(1)};
  for (const auto& pair : pairs) {
    for (double a : {0.3, 0.6, 0.9}) {
      const double hi = std::min(a, a * inf_ratio(pair.h1).value);
      double prev = -1.0;
      for (int k = 0; k <= 50; ++k) {
        const double r = hi * k / 51.0;
        const double v = bombieri_value_thm1(pair, a, r);
        if (k > 0) CHECK(v > prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("radius with coefficient") {
  const auto id0 = [](double r, double a) { return id0_value(r, a); };
  const auto r = radius_with_coefficient(id0, 0.75, 0.0, 0.75);
  CHECK(r.value == doctest::Approx(0.4).epsilon(1e-12));
  check_result(r);
  CHECK(theorem1_radius(id0_pair(), 1.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(radius_with_coefficient(id0, 0.75, 0.0, 0.1), NoRootError);

  const auto integral = [](double rr, double a) { return integral_value(rr, a); };
  const auto ri = radius_with_coefficient(integral, 0.95, 0.0, 0.95);
  CHECK(ri.value == doctest::Approx(radius_integral_with_a(0.95).value).epsilon(1e-10));
  CHECK(ri.value == doctest::Approx(0.918).epsilon(1e-3));
}

TEST_CASE("id0 radius and bombieri function") {
  CHECK(radius_id0(1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(radius_id0(0.75) == doctest::Approx(0.4));
  CHECK(radius_id0(0.6) == doctest::Approx(solve([](double r) { return id0_value(r, 0.6) - 1.0; }, 0.0, 0.6)));
  CHECK_THROWS_AS(radius_id0(0.5), HypothesisViolation);

  CHECK(bombieri_id0(0.2) == 1.0);
  CHECK(bombieri_id0(1.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bombieri_id0(1.0 / std::sqrt(2.0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(bombieri_id0(0.5) == doctest::Approx((3.0 - std::sqrt(6.0)) / 0.5));
  CHECK_THROWS_AS(bombieri_id0(0.8), HypothesisViolation);
}

TEST_CASE("id0 radius agrees with bisection on the closed form") {
  for (int k = 0; k <= 9; ++k) {
    const double a = 0.55 + 0.05 * k;
    CHECK(std::abs(radius_id0(a) - theorem1_radius(id0_pair(), a).value) < 1e-10);
  }
}

TEST_CASE("cesaro bound") {
  CHECK(cesaro_bombieri_bound(1e-9) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(cesaro_bombieri_bound(0.5) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(cesaro_bombieri_bound(0.5335) == doctest::Approx(std::log(1.0 / 0.4665) / 0.5335).epsilon(1e-14));
  CHECK(std::abs(cesaro_bombieri_bound(0.5335) - 1.4297) < 1e-3);
  CHECK(cesaro_bound_limit() == doctest::Approx(0.5335).epsilon(1e-4));
  CHECK_THROWS_AS(cesaro_bombieri_bound(0.6), HypothesisViolation);
}

TEST_CASE("cesaro majorant of sampled functions stays below the bound") {
  for (double r : {0.2, 0.4, 0.5, 0.5335}) {
    const double bound = cesaro_bombieri_bound(r);
    for (std::uint64_t i = 0; i < 300; ++i) {
      const auto f = to_rational(random_blaschke(5, i)).series(256);
      CHECK(majorant(cesaro(f), r) <= bound + 1e-12);
    }
    for (int k = 0; k < 100; ++k) {
      CHECK(majorant(cesaro(disc_automorphism(k / 100.0, 0, 256)), r) <= bound + 1e-12);
    }
  }
}

TEST_CASE("derivative pair radii") {
  CHECK(radius_derivative_pair(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(radius_derivative_pair(1) - (1.0 - std::sqrt(2.0 / 3.0))) < 1e-12);
  CHECK(std::abs(radius_derivative_pair(4) - (1.0 - std::pow(2.0 / 3.0, 0.2))) < 1e-12);
  CHECK(std::abs(radius_derivative_pair(4) - 0.077905) < 2e-5);
  for (std::size_t m = 0; m <= 4; ++m) {
    // The a -> 1 limit of the closed form crosses one at the same radius.
    const double r = solve(
        [m](double x) { return 2.0 * (std::pow(1.0 - x, -double(m + 1)) - 1.0) - 1.0; }, 0.0, 0.9);
    CHECK(std::abs(radius_derivative_pair(m) - r) < 1e-12);
    CHECK(std::abs(theorem1_radius(derivative_pair(m), 1.0).value - r) < 1e-10);
  }
}

TEST_CASE("derivative pair radius with initial coefficient") {
  CHECK(radius_derivative_pair_with_a(0, 0.8).value == doctest::Approx(1.0 / 2.6).epsilon(1e-12));
  CHECK(radius_derivative_pair_with_a(0, 1.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  const double a = 0.95;
  const double expect = solve([a](double r) { return derivative_value(1, r, a) - 1.0; }, 0.0, 0.5);
  const auto r = radius_derivative_pair_with_a(1, a);
  CHECK(std::abs(r.value - expect) < 1e-10);
  CHECK(r.residual < 1e-12);
  CHECK_THROWS_AS(radius_derivative_pair_with_a(1, 0.3), HypothesisViolation);
  for (std::size_t m = 1; m <= 3; ++m) {
    for (double aa : {0.9, 0.95, 0.99}) {
      const auto rr = radius_derivative_pair_with_a(m, aa);
      CHECK(std::abs(rr.value - theorem1_radius(derivative_pair(m), aa).value) < 1e-10);
      CHECK(rr.value <= 2.0 / double(m + 2));
    }
  }
}

TEST_CASE("integral lower bound") {
  const auto r = radius_integral_lower();
  CHECK(r.value == doctest::Approx(0.872664).epsilon(1e-5));
  CHECK(std::abs(dilog(r.value * r.value) - 1.0) < 1e-10);
  CHECK(dilog(0.64) < 1.0);
  CHECK(dilog(0.81) > 1.0);
  check_result(r);
}

TEST_CASE("integral upper bound") {
  const auto c = radius_integral_upper();
  CHECK(std::abs(c.r_min - 0.883677) < 1e-5);
  CHECK(std::abs(c.a_min - 0.812308) < 1e-4);
  CHECK(integral_radius_curve(c.a_min - 0.05) > c.r_min);
  CHECK(integral_radius_curve(c.a_min + 0.05) > c.r_min);

  // Direct root of M_r f = 1 for f the primitive of (z-a)/(1-az).
  const double a = 0.9;
  const auto majorant_primitive = [a](double r) {
    double s = a * r;
    double p = r;
    for (int n = 1; n < 5000; ++n) {
      p *= a * r;
      s += (1.0 - a * a) * p / (a * double(n + 1));
    }
    return s - 1.0;
  };
  CHECK(std::abs(integral_radius_curve(a) - solve(majorant_primitive, 0.5, 1.0)) < 1e-8);
}

TEST_CASE("integral curve near the removable point") {
  const double s = 1.0 / std::sqrt(2.0);
  const double mid = integral_radius_curve(s);
  CHECK(std::isfinite(mid));
  CHECK(std::abs(integral_radius_curve(s + 1e-7) - mid) < 1e-6);
  CHECK(std::abs(integral_radius_curve(s - 1e-7) - mid) < 1e-6);
}

TEST_CASE("integral radius with initial coefficient") {
  const double threshold = integral_threshold();
  CHECK(std::abs(threshold - 0.892643) < 1e-5);
  CHECK(radius_integral_with_a(1.0).value == doctest::Approx(1.0));
  CHECK(radius_integral_with_a(0.95).value == doctest::Approx(0.918).epsilon(1e-3));
  CHECK_THROWS_AS(radius_integral_with_a(0.5), HypothesisViolation);
  for (int k = 1; k <= 20; ++k) {
    const double a = threshold + (1.0 - threshold) * k / 20.0;
    const auto r = radius_integral_with_a(a);
    const double expect =
        a == 1.0 ? 1.0 : solve([a](double x) { return integral_value(x, a) - 1.0; }, 1e-9, 1.0 / a - 1e-12);
    CHECK(std::abs(r.value - expect) < 1e-9);
    CHECK(r.value < a + 1e-12);
  }
}

TEST_CASE("lacunary radius") {
  CHECK(radius_lacunary_with_a(1, 0.8).value == doctest::Approx(1.0 / 2.6).epsilon(1e-12));
  const auto r = radius_lacunary_with_a(2, 0.9);
  CHECK(r.value == doctest::Approx(std::sqrt(0.9 / 2.8) / 0.9).epsilon(1e-12));
  const double expect = solve([](double x) { return lacunary_bombieri(2, x, 0.9) - 1.0; }, 0.0, 0.9);
  CHECK(std::abs(r.value - expect) < 1e-10);
  CHECK(radius_lacunary_with_a(2, 1.0).value == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK_THROWS_AS(radius_lacunary_with_a(2, 0.5), HypothesisViolation);
  CHECK_THROWS_AS(radius_lacunary_with_a(0, 0.9), InvalidInput);
}

TEST_CASE("even automorphisms beat the lacunary closed form") {
  // (z^2 + a)/(1 + a z^2) has norm one and initial coefficient a.
  for (double a : {0.5, 0.7, 0.9}) {
    for (double r : {0.2, 0.4}) {
      const double even = a + (1.0 - a * a) * r * r / (1.0 - a * r * r);
      CHECK(even > lacunary_bombieri(2, r, a));
    }
  }
}

TEST_CASE("hypergeometric radius") {
  const auto r1 = radius_hypergeometric({1.0, 1.0, 1.0});
  CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  check_result(r1);
  const auto r2 = radius_hypergeometric({1.0, 1.0, 2.0});
  CHECK(std::abs(r2.value - 0.583) < 1e-3);
  CHECK(-std::log1p(-r2.value) / r2.value == doctest::Approx(1.5).epsilon(1e-10));
  CHECK_THROWS_AS(radius_hypergeometric({0.0, 1.0, 1.0}), NoRootError);
}

TEST_CASE("weighted-sum radius") {
  CHECK(std::abs(theorem_b_radius(geometric_profile(), 1.0) - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(theorem_b_radius(geometric_profile(), 2.0) - 0.5) < 1e-12);
  WeightProfile flat;
  flat.phi = [](std::size_t n, double) { return n == 0 ? 1.0 : 0.0; };
  flat.horizon = 16;
  CHECK_THROWS_AS(theorem_b_radius(flat, 1.0), NoRootError);
  CHECK_THROWS_AS(theorem_b_radius(geometric_profile(), 3.0), InvalidInput);
}

TEST_CASE("convergence radius bound") {
  CHECK(convergence_radius_bound(geometric_kernel(), 0) == 1.0);
  CHECK(convergence_radius_bound(dilation_kernel(4.0), 0) == doctest::Approx(4.0));
  CHECK(convergence_radius_bound(derivative_kernel(2), -2) == 1.0);
  CHECK_THROWS_AS(convergence_radius_bound(polynomial_kernel({1.0, 2.0}), 0), HypothesisViolation);
}

TEST_CASE("computed radii respect the convergence radius bound") {
  for (const auto& spec : comparison_operators()) {
    const double bound = convergence_radius_bound(spec.kernel(), spec.shift());
    CHECK(identity_radius_lower_bound(spec).value <= bound + 1e-12);
  }
  CHECK(identity_radius_lower_bound(OperatorSpec(geometric_kernel(), 0)).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(identity_radius_lower_bound(OperatorSpec(dilation_kernel(4.0), 0)).value ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(identity_radius_lower_bound(OperatorSpec(shift_kernel(1), -1)).value ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("shift pair bound") {
  CHECK(shift_pair_lower_bound(1) == doctest::Approx(std::sqrt((std::sqrt(5.0) - 1.0) / 2.0)).epsilon(1e-12));
  const double r10 = shift_pair_lower_bound(10);
  CHECK(std::abs(std::pow(r10, 40) + r10 * r10 - 1.0) < 1e-12);
  CHECK(r10 > shift_pair_lower_bound(1));
  double prev = 0.0;
  std::size_t crossover = 0;
  for (std::size_t m = 1; m <= 200; ++m) {
    const double r = shift_pair_lower_bound(m);
    CHECK(r > prev);
    prev = r;
    if (crossover == 0 && r > 0.99) crossover = m;
  }
  CHECK(crossover == 98);
}

TEST_CASE("the shift pair bound does not bound the shifted identity") {
  // S_{1,-1} f = (z+a)/(1+az) has norm one, yet M_r f exceeds one at r_1.
  const double r1 = shift_pair_lower_bound(1);
  const auto f = disc_automorphism(0.5, 1, 256);
  CHECK(majorant(f, r1) > 1.15);
  // It is the Cauchy-Schwarz estimate for the doubled shift.
  CHECK(identity_radius_lower_bound(OperatorSpec(shift_kernel(2), -2)).value >= r1 - 1e-12);
}
