// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is 0 iff the failing criteria are exactly those named by --xfail.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bohrconv/bohr.hpp"
#include "bohrconv/errors.hpp"
#include "bohrconv/specfun.hpp"
#include "bohrconv/verify.hpp"

using namespace bohrconv;

namespace {

struct Criterion {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string label(const KernelPair& pair) {
  const auto& params = pair.h2.params();
  return params.contains("m") ? pair.name + " m=" + params["m"].dump() : pair.name;
}

// Plain bisection, independent of the library's root finder.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  const bool neg = f(lo) <= 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) <= 0.0) == neg ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Criterion derivative_radii() {
  Criterion c;
  const double r0 = radius_derivative_pair(0);
  const double r1 = radius_derivative_pair(1);
  c.expect(std::abs(r0 - 1.0 / 3.0) <= 1e-12, "m = 0: " + fmt(r0));
  c.expect(std::abs(r1 - (1.0 - std::sqrt(2.0 / 3.0))) <= 1e-10, "m = 1: " + fmt(r1));
  return c;
}

Criterion integral_bounds() {
  Criterion c;
  const double lower = radius_integral_lower().value;
  c.expect(std::abs(lower - 0.872664) <= 1e-5, "lower " + fmt(lower));
  c.expect(std::abs(dilog(lower * lower) - 1.0) <= 1e-10, "Li2(r^2) = " + fmt(dilog(lower * lower)));
  const auto upper = radius_integral_upper();
  c.expect(std::abs(upper.r_min - 0.883677) <= 1e-5, "upper " + fmt(upper.r_min));
  c.expect(std::abs(upper.a_min - 0.812308) <= 1e-4, "argmin " + fmt(upper.a_min));
  return c;
}

Criterion integral_with_a() {
  Criterion c;
  const double t = integral_threshold();
  const double expect = std::sqrt(1.0 + lambert_w(-2.0 / std::exp(2.0)) / 2.0);
  c.expect(std::abs(t - 0.892643) <= 1e-5 && std::abs(t - expect) <= 1e-14, "threshold " + fmt(t));
  double worst = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double a = t + (1.0 - t) * k / 20.0;
    const double closed = radius_integral_with_a(a).value;
    double ref = 1.0;
    if (a < 1.0) {
      const auto m = [a](double r) {
        return a * r + (1.0 / a - a) * r * (-std::log1p(-a * r) / (a * r) - 1.0) - 1.0;
      };
      ref = bisect(m, 1e-9, 1.0 / a - 1e-12);
    }
    worst = std::max(worst, std::abs(closed - ref));
  }
  c.expect(worst <= 1e-9, "20 grid values, max |closed - bisection| = " + fmt(worst));
  return c;
}

Criterion id0() {
  Criterion c;
  double worst = 0.0;
  for (int k = 0; k <= 9; ++k) {
    const double a = 0.55 + 0.05 * k;
    const auto m = [a](double r) { return bombieri_value_thm1(id0_pair(), a, r) - 1.0; };
    const double ref = a == 1.0 ? 1.0 / 3.0 : bisect(m, 0.0, a * (1.0 - 1e-15));
    worst = std::max(worst, std::abs(radius_id0(a) - ref));
  }
  c.expect(worst <= 1e-10, "radius_id0 vs bisection, max diff " + fmt(worst));
  c.expect(std::abs(bombieri_id0(1.0 / 3.0) - 1.0) <= 1e-10, "m(1/3) = " + fmt(bombieri_id0(1.0 / 3.0)));
  const double s = bombieri_id0(1.0 / std::sqrt(2.0));
  c.expect(std::abs(s - std::sqrt(2.0)) <= 1e-10, "m(1/sqrt2) = " + fmt(s));
  return c;
}

Criterion hypergeometric() {
  Criterion c;
  const double r = radius_hypergeometric({1.0, 1.0, 1.0}).value;
  c.expect(std::abs(r - 1.0 / 3.0) <= 1e-10, "F(1,1,1): " + fmt(r));
  const double b = theorem_b_radius(geometric_profile(), 1.0);
  c.expect(std::abs(b - 1.0 / 3.0) <= 1e-12, "geometric profile p = 1: " + fmt(b));
  return c;
}

Criterion lacunary(std::uint64_t seed) {
  Criterion c;
  for (std::size_t m = 1; m <= 3; ++m) {
    double worst = 0.0;
    int compared = 0;
    for (int k = 1; k <= 100; ++k) {
      const double a = k / 100.0;
      double closed = 0.0;
      try {
        closed = radius_lacunary_with_a(m, a).value;
      } catch (const HypothesisViolation&) {
        continue;
      }
      const auto f = [m, a](double r) { return lacunary_bombieri(m, r, a) - 1.0; };
      const double ref = a == 1.0 ? std::pow(3.0, -1.0 / double(m)) : bisect(f, 0.0, a * (1.0 - 1e-15));
      worst = std::max(worst, std::abs(closed - ref));
      ++compared;
    }
    c.expect(compared > 0 && worst <= 1e-10,
             "m = " + std::to_string(m) + ": " + std::to_string(compared) +
                 " values of a, max |closed - bisection| = " + fmt(worst));
  }
  const OperatorSpec id(geometric_kernel(), 0);
  const OperatorSpec target(lacunary_series_kernel(2), 0);
  const double r0 = 1.0 / std::sqrt(3.0);
  EmpiricalOptions opts;
  opts.samples = 10000;
  opts.seed = seed;
  const double radii[] = {r0 - 0.005};
  const auto below = empirical_bombieri(id, target, radii, std::nullopt, opts).front();
  c.expect(below.value <= 1.0 + kCheckSlack,
           "r = 1/sqrt3 - 0.005: best of " + std::to_string(below.evaluated) + " samples " +
               fmt(below.value));
  const auto above = automorphism_sharpness(id, target, r0 + 0.005, 1e-6);
  c.expect(above.violated, "r = 1/sqrt3 + 0.005: automorphism excess " + fmt(above.excess) +
                               " at a = " + fmt(above.a));
  return c;
}

Criterion oracle(std::uint64_t seed) {
  Criterion c;
  EmpiricalOptions opts;
  opts.samples = 10000;
  opts.seed = seed;
  std::vector<double> as;
  for (int k = 1; k <= 10; ++k) as.push_back(0.1 * k);
  for (const auto& pair : builtin_pairs()) {
    const auto rep = thm1_oracle_report(pair, as, 10, opts, 1e-6, CoKPolicy::assume);
    std::string what = label(pair) + ": " + std::to_string(rep.samples) + " samples, worst margin " +
                       fmt(rep.worst_margin);
    if (!rep.holds && !rep.worst.is_null()) what += ", worst " + rep.worst.dump();
    c.expect(rep.holds, what);
  }
  return c;
}

Criterion lemma_goluzin(std::uint64_t seed) {
  Criterion c;
  for (const auto& pair : builtin_pairs()) {
    const auto rep = lemma_report(pair, 1000, seed);
    const bool skipped = rep.params.contains("skip_reason");
    c.expect(rep.holds, "lemma " + label(pair) + ": " +
                            (skipped ? "skipped (" + rep.params["skip_reason"].get<std::string>() + ")"
                                     : std::to_string(rep.samples) + " trials, worst margin " +
                                           fmt(rep.worst_margin)));
  }
  const auto g = goluzin_report(1000, seed);
  c.expect(g.holds, "goluzin: " + std::to_string(g.samples) + " trials, worst margin " + fmt(g.worst_margin));
  return c;
}

Criterion comparison(std::uint64_t seed) {
  Criterion c;
  for (const auto& spec : comparison_operators()) {
    const auto sub = subordination_report(spec, 1000, seed);
    const auto maj = majorization_report(spec, 1000, seed);
    const std::string name = spec.kernel().name() + "/" + std::to_string(spec.shift());
    c.expect(sub.holds, "subordination " + name + ", worst margin " + fmt(sub.worst_margin));
    c.expect(maj.holds, "majorization " + name + ", worst margin " + fmt(maj.worst_margin));
  }
  // g = z^0/c_0 = 1 and f the automorphism (z+a)/(1+az), at R + 0.01 with R = 1/3.
  const OperatorSpec id(geometric_kernel(), 0);
  const double r = identity_radius_lower_bound(id).value + 0.01;
  const auto one = TruncatedSeries::monomial(0, kDefaultOrder);
  double best = -1.0, best_a = 0.0;
  for (double a : automorphism_grid()) {
    const auto rep = check_majorization_majorant(id, one, disc_automorphism(a, 0, kDefaultOrder), r, 1.0);
    if (rep.lhs - rep.rhs > best) {
      best = rep.lhs - rep.rhs;
      best_a = a;
    }
  }
  c.expect(best > kViolationThreshold,
           "sharpness at r = " + fmt(r) + ": excess " + fmt(best) + " at a = " + fmt(best_a));
  return c;
}

Criterion convergence() {
  Criterion c;
  for (const auto& spec : comparison_operators()) {
    const double bound = convergence_radius_bound(spec.kernel(), spec.shift());
    const double r = identity_radius_lower_bound(spec).value;
    c.expect(r <= bound + 1e-12, spec.kernel().name() + "/" + std::to_string(spec.shift()) + ": " +
                                     fmt(r) + " <= " + fmt(bound));
  }
  const std::vector<std::pair<std::string, double>> pair_radii = {
      {"id0", theorem1_radius(id0_pair(), 1.0).value},
      {"derivative 1", radius_derivative_pair(1)},
      {"derivative 3", radius_derivative_pair(3)},
      {"integral", radius_integral_lower().value},
      {"lacunary 1", radius_lacunary_with_a(1, 1.0).value},
      {"hypergeometric", radius_hypergeometric({1.0, 1.0, 2.0}).value}};
  for (const auto& [name, r] : pair_radii) {
    // Every pair operator has a kernel with radius of convergence 1.
    c.expect(r <= 1.0 + 1e-12, name + ": " + fmt(r) + " <= 1");
  }
  bool increasing = true;
  double prev = 0.0;
  std::size_t crossover = 0;
  for (std::size_t m = 1; m <= 200; ++m) {
    const double r = shift_pair_lower_bound(m);
    increasing = increasing && r > prev;
    prev = r;
    if (crossover == 0 && r > 0.99) crossover = m;
  }
  c.expect(increasing, "shift pair bound strictly increasing on m <= 200");
  // Brute force: the first m whose root of r^{4m} + r^2 = 1 exceeds 0.99.
  std::size_t brute = 0;
  for (std::size_t m = 1; m <= 200 && brute == 0; ++m) {
    const double root = bisect([m](double r) { return std::pow(r, 4.0 * double(m)) + r * r - 1.0; }, 0.0, 1.0);
    if (root > 0.99) brute = m;
  }
  c.expect(crossover != 0 && crossover == brute,
           "exceeds 0.99 from m = " + std::to_string(crossover) + " (brute force " + std::to_string(brute) + ")");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::uint64_t seed = 20240601;
  std::vector<int> xfail;
  app.add_option("--seed", seed, "Seed for every sampled criterion");
  app.add_option("--xfail", xfail, "Criteria expected to fail");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Criterion()>>> criteria = {
      {"derivative pair radii", derivative_radii},
      {"integral operator bounds", integral_bounds},
      {"integral radius with initial coefficient", integral_with_a},
      {"id0 radius and Bombieri function", id0},
      {"hypergeometric and weighted-sum radii", hypergeometric},
      {"lacunary closed form and sharpness", [&] { return lacunary(seed); }},
      {"closed form vs empirical supremum", [&] { return oracle(seed); }},
      {"lemma and Goluzin property suites", [&] { return lemma_goluzin(seed); }},
      {"subordination and majorization", [&] { return comparison(seed); }},
      {"convergence radius bound and shift pair", convergence},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Criterion c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.expect(false, std::string("threw: ") + e.what());
    }
    if (!c.pass) failed.insert(id);
    std::cout << "criterion " << id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << criteria[i].first
              << '\n';
    for (const auto& n : c.notes) std::cout << "    " << n << '\n';
    std::cout.flush();
  }
  const std::set<int> expected(xfail.begin(), xfail.end());
  std::cout << "passed " << criteria.size() - failed.size() << " of " << criteria.size() << '\n';
  if (failed != expected) {
    std::cout << "failures differ from the expected set\n";
    return 1;
  }
  return 0;
}
