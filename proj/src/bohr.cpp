#include "bohrconv/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "bohrconv/errors.hpp"
#include "bohrconv/roots.hpp"

namespace bohrconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ipow(double x, long long n) { return std::pow(x, static_cast<double>(n)); }

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Evaluates the convolution closed form without re-checking hypotheses.
// `prod` is h1*h2; r = 0 uses the limit of a^{-m} r^l (...) as r -> 0.
double pair_closed_form(const Kernel& prod, std::size_t m, int l, double cd, double a, double r) {
  const long long top = static_cast<long long>(m) + l;
  const double lead = (top == 0 ? 1.0 : ipow(r, top)) * cd * a;
  if (a == 1.0) return (top == 0 ? 1.0 : ipow(r, top)) * cd;
  if (r == 0.0) return lead;
  const double x = a * r;
  const double rest = prod.sum(x) - cd * ipow(x, static_cast<long long>(m));
  return lead + (1.0 / a - a) * ipow(a, -static_cast<long long>(m)) * ipow(r, l) * rest;
}

void require_positive_radius_input(double a) {
  if (!(a > 0.0 && a <= 1.0)) throw HypothesisViolation("0 < a <= 1", "need 0 < a <= 1");
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::closed_form:
      return "closed_form";
    case Method::bisection:
      return "bisection";
    case Method::minimization:
      return "minimization";
  }
  return "unknown";
}

KernelPair id0_pair() { return {"id0", geometric_kernel(), geometric_kernel(), 0}; }

KernelPair derivative_pair(std::size_t m) {
  return {"derivative", derivative_kernel(m), shift_kernel(m), -static_cast<int>(m)};
}

KernelPair integral_pair() { return {"integral", integral_kernel(), geometric_kernel(), 1}; }

std::vector<Hypothesis> theorem1_hypotheses(const Kernel& h1, const Kernel& h2, double a,
                                            double r) {
  std::vector<Hypothesis> hs;
  hs.push_back({"0 < a <= 1", a > 0.0 && a <= 1.0});
  hs.push_back({"r >= 0", r >= 0.0});
  hs.push_back({"a > r", a > r || a == 1.0});
  hs.push_back({"h1 coefficients positive", h1.positive()});
  hs.push_back({"h1, h2 share vanishing order", h1.order() == h2.order()});
  bool ratio_ok = false;
  if (h1.positive()) {
    try {
      const double inf = inf_ratio(h1).value;
      // Applied to f(z) z^{-m} at radius r/a, hence the factor a.
      ratio_ok = r <= a * inf * (1.0 + 1e-15);
    } catch (const InvalidInput&) {
      ratio_ok = false;
    }
  }
  hs.push_back({"r <= a * inf c_n/c_{n+1}", ratio_ok});
  // Members of the hull are normalized, so sqrt(d_{m+1}) = b_1 must equal 1.
  const bool normalized = std::abs(h2.coeff(h2.order() + 1) - 1.0) <= 1e-12;
  hs.push_back({"co-K witness for h2", h2.co_k() != CoKWitness::none && normalized});
  if (h2.co_k() == CoKWitness::asserted) hs.push_back({"co-K witness asserted", true});
  return hs;
}

double bombieri_value_thm1(const Kernel& h1, const Kernel& h2, int l, double a, double r,
                           CoKPolicy policy) {
  if (static_cast<long long>(h1.order()) + l < 0) throw InvalidInput("need m + l >= 0");
  for (const auto& h : theorem1_hypotheses(h1, h2, a, r)) {
    if (h.ok) continue;
    if (h.name == "co-K witness for h2" && policy == CoKPolicy::assume) continue;
    throw HypothesisViolation(h.name, "hypothesis fails: " + h.name);
  }
  const std::size_t m = h1.order();
  return pair_closed_form(hadamard(h1, h2), m, l, h1.coeff(m) * h2.coeff(m), a, r);
}

double bombieri_value_thm1(const KernelPair& pair, double a, double r, CoKPolicy policy) {
  return bombieri_value_thm1(pair.h1, pair.h2, pair.shift, a, r, policy);
}

RadiusResult radius_with_coefficient(const std::function<double(double, double)>& m_fun,
                                     double a, double lo, double hi) {
  const Root root = bisect([&](double r) { return m_fun(r, a) - 1.0; }, lo, hi);
  RadiusResult out;
  out.value = root.value;
  out.method = Method::bisection;
  out.residual = std::abs(m_fun(root.value, a) - 1.0);
  out.lo = root.lo;
  out.hi = root.hi;
  out.hypotheses.push_back({"a > r", a > root.value || a == 1.0});
  return out;
}

RadiusResult theorem1_radius(const KernelPair& pair, double a, CoKPolicy policy) {
  require_positive_radius_input(a);
  const Kernel& h1 = pair.h1;
  const Kernel& h2 = pair.h2;
  const std::size_t m = h1.order();
  const int l = pair.shift;
  const double inf = inf_ratio(h1).value;
  const double hi = std::min(a, a * inf);
  const auto hs = theorem1_hypotheses(h1, h2, a, hi);
  for (const auto& h : hs) {
    if (h.ok || h.name == "a > r") continue;
    if (h.name == "co-K witness for h2" && policy == CoKPolicy::assume) continue;
    throw HypothesisViolation(h.name, "hypothesis fails: " + h.name);
  }
  const Kernel prod = hadamard(h1, h2);
  const double cd = h1.coeff(m) * h2.coeff(m);
  const long long top = static_cast<long long>(m) + l;

  RadiusResult out;
  if (a == 1.0 && top == 0 && cd == 1.0) {
    // m(r, 1) is identically one; use the limit of (m(r, a) - 1)/(1 - a) as a -> 1,
    // which is 2 r^l ((h1*h2)(r) - r^m) - 1.
    const auto g = [&](double r) {
      if (r == 0.0) return -1.0;
      return 2.0 * ipow(r, l) * (prod.sum(r) - ipow(r, static_cast<long long>(m))) - 1.0;
    };
    const double top_r = std::min(inf, 1.0 - 1e-12);
    const Root root = bisect(g, 0.0, top_r);
    out.value = root.value;
    out.residual = root.residual;
    out.lo = root.lo;
    out.hi = root.hi;
    out.hypotheses.push_back({"limit a -> 1 of the closed form", true});
  } else {
    const auto mf = [&](double r, double aa) { return pair_closed_form(prod, m, l, cd, aa, r); };
    out = radius_with_coefficient(mf, a, 0.0, hi);
  }
  out.method = Method::bisection;
  auto final_hs = theorem1_hypotheses(h1, h2, a, out.value);
  out.hypotheses.insert(out.hypotheses.end(), final_hs.begin(), final_hs.end());
  return out;
}

double radius_id0(double a) {
  if (!(a > 0.5 && a <= 1.0)) throw HypothesisViolation("1/2 < a <= 1", "need 1/2 < a <= 1");
  return 1.0 / (1.0 + 2.0 * a);
}

double bombieri_id0(double r) {
  if (!(r >= 0.0)) throw DomainError("bombieri_id0: need r >= 0");
  const double edge = 1.0 / std::numbers::sqrt2;
  if (r > edge * (1.0 + 1e-15)) {
    throw HypothesisViolation("r <= 1/sqrt(2)", "open problem for r > 1/sqrt(2)");
  }
  if (r <= 1.0 / 3.0) return 1.0;
  return (3.0 - std::sqrt(8.0 * (1.0 - r * r))) / r;
}

double cesaro_bound_limit() {
  const auto g = [](double x) { return 2.0 * x + 3.0 * (1.0 - x) * std::log1p(-x); };
  return bisect(g, 0.1, 0.9).value;
}

double cesaro_bombieri_bound(double r) {
  const double limit = cesaro_bound_limit();
  if (!(r >= 0.0 && r <= limit)) {
    throw HypothesisViolation("0 < r <= " + fixed6(limit),
                              "Cesaro bound is known only for 0 < r <= " + fixed6(limit));
  }
  if (r == 0.0) return 1.0;
  return -std::log1p(-r) / r;
}

double radius_derivative_pair(std::size_t m) {
  return 1.0 - std::pow(2.0 / 3.0, 1.0 / (static_cast<double>(m) + 1.0));
}

RadiusResult radius_derivative_pair_with_a(std::size_t m, double a) {
  require_positive_radius_input(a);
  const double q = std::pow((1.0 + a) / (1.0 + 2.0 * a), 1.0 / (static_cast<double>(m) + 1.0));
  if (!(a * a > 1.0 - q)) {
    throw HypothesisViolation("a^2 > 1 - ((1+a)/(1+2a))^(1/(m+1))",
                              "need a^2 > 1 - ((1+a)/(1+2a))^(1/(m+1))");
  }
  RadiusResult out;
  out.value = (1.0 - q) / a;
  out.lo = out.hi = out.value;
  const auto pair = derivative_pair(m);
  if (a < 1.0) {
    // The validity gate above replaces the r/a <= 2/(m+2) condition, so evaluate unchecked.
    const double v = pair_closed_form(hadamard(pair.h1, pair.h2), m, pair.shift, 1.0, a, out.value);
    out.residual = std::abs(v - 1.0);
  }
  const double bound = 2.0 / (static_cast<double>(m) + 2.0);
  out.hypotheses = {
      {"a^2 > 1 - ((1+a)/(1+2a))^(1/(m+1))", true},
      {"a > r", a > out.value || a == 1.0},
      {"r <= 2/(m+2)", out.value <= bound},
      {"r/a <= 2/(m+2)", out.value <= a * bound},
  };
  return out;
}

RadiusResult radius_integral_lower() {
  const Root root = bisect([](double r) { return dilog(r * r) - 1.0; }, 0.5, 0.99);
  RadiusResult out;
  out.value = root.value;
  out.method = Method::bisection;
  out.residual = root.residual;
  out.lo = root.lo;
  out.hi = root.hi;
  return out;
}

double integral_radius_curve(double a) {
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("integral_radius_curve: need 0 < a <= 1");
  if (a == 1.0) return 1.0;
  const double x = std::max((1.0 - 2.0 * a * a) / ((a * a - 1.0) * std::numbers::e),
                            -1.0 / std::numbers::e);
  return (1.0 - lambert_w_over_x(x) / std::numbers::e) / a;
}

CurveMinimum radius_integral_upper() {
  constexpr double kStep = 0.005;
  double best_a = 0.05;
  double best_r = kInf;
  for (double a = 0.05; a < 0.999; a += kStep) {
    const double r = integral_radius_curve(a);
    if (r < best_r) {
      best_r = r;
      best_a = a;
    }
  }
  const Minimum min = golden_section(integral_radius_curve, best_a - kStep,
                                     std::min(best_a + kStep, 0.999), 1e-10);
  return {min.value, min.arg};
}

double integral_threshold() {
  return std::sqrt(1.0 + lambert_w(-2.0 / (std::numbers::e * std::numbers::e)) / 2.0);
}

double integral_bombieri(double r, double a) {
  const double x = a * r;
  if (x == 0.0) return 0.0;
  if (a == 1.0) return r;
  return x + (1.0 / a - a) * r * (-std::log1p(-x) / x - 1.0);
}

RadiusResult radius_integral_with_a(double a) {
  const double threshold = integral_threshold();
  if (!(a > threshold && a <= 1.0)) {
    throw HypothesisViolation("a in (" + fixed6(threshold) + "..., 1]",
                              "need a in (" + fixed6(threshold) + "..., 1]");
  }
  RadiusResult out;
  out.value = integral_radius_curve(a);
  out.lo = out.hi = out.value;
  out.residual = std::abs(integral_bombieri(out.value, a) - 1.0);
  out.hypotheses = {{"a > " + fixed6(threshold), true}, {"a >= r(a)", a >= out.value}};
  return out;
}

double lacunary_bombieri(std::size_t m, double r, double a) {
  const double p = std::pow(a * r, static_cast<double>(m));
  if (a == 1.0) return 1.0;
  return a + (1.0 / a - a) * p / (1.0 - p);
}

RadiusResult radius_lacunary_with_a(std::size_t m, double a) {
  if (m == 0) throw InvalidInput("lacunary radius needs m >= 1");
  require_positive_radius_input(a);
  if (!(std::pow(a, 2.0 * static_cast<double>(m) - 1.0) > 1.0 / (1.0 + 2.0 * a))) {
    throw HypothesisViolation("a^(2m-1) > 1/(1+2a)", "need a^(2m-1) > 1/(1+2a)");
  }
  RadiusResult out;
  out.value = std::pow(a / (1.0 + 2.0 * a), 1.0 / static_cast<double>(m)) / a;
  out.lo = out.hi = out.value;
  if (a < 1.0) out.residual = std::abs(lacunary_bombieri(m, out.value, a) - 1.0);
  out.hypotheses = {{"a^(2m-1) > 1/(1+2a)", true},
                    {"a > r", a > out.value || a == 1.0},
                    {"co-K witness for h2", m == 1}};
  return out;
}

RadiusResult radius_hypergeometric(const HypergeometricParams& p) {
  const Kernel h = hypergeometric_kernel(p);
  if (h.traits().degree) throw NoRootError("F - 1 vanishes identically, so it never reaches 1/2");
  const double rc = radius_of_convergence(h).value;
  const double hi = std::isfinite(rc) ? rc * (1.0 - 1e-6) : 1e3;
  const Root root = first_root([&](double x) { return h.sum(x) - 1.5; }, 0.0, hi);
  RadiusResult out;
  out.value = root.value;
  out.method = Method::bisection;
  out.residual = root.residual;
  out.lo = root.lo;
  out.hi = root.hi;
  return out;
}

WeightProfile geometric_profile(std::size_t horizon) {
  WeightProfile p;
  p.phi = [](std::size_t n, double x) { return std::pow(x, static_cast<double>(n)); };
  p.horizon = horizon;
  p.tail = [horizon](double x) {
    return std::pow(x, static_cast<double>(horizon) + 1.0) / (1.0 - x);
  };
  return p;
}

double theorem_b_radius(const WeightProfile& profile, double p) {
  if (!(p > 0.0 && p <= 2.0)) throw InvalidInput("theorem_b_radius: need 0 < p <= 2");
  if (!(profile.phi(0, 0.0) > 0.0)) throw InvalidInput("theorem_b_radius: need phi_0(0) > 0");
  const auto g = [&](double x) {
    double rest = profile.tail ? profile.tail(x) : 0.0;
    for (std::size_t n = 1; n <= profile.horizon; ++n) rest += profile.phi(n, x);
    return profile.phi(0, x) - (2.0 / p) * rest;
  };
  return first_root(g, 0.0, 1.0 - 1e-9).value;
}

double convergence_radius_bound(const Kernel& kernel, int /*l*/) {
  if (kernel.traits().degree) {
    throw HypothesisViolation("infinitely many nonzero coefficients",
                              "bound not applicable to a polynomial kernel");
  }
  const double rc = radius_of_convergence(kernel).value;
  return std::isinf(rc) ? 0.0 : 1.0 / rc;
}

double shift_pair_lower_bound(std::size_t m) {
  if (m == 0) throw InvalidInput("shift_pair_lower_bound needs m >= 1");
  const double k = 4.0 * static_cast<double>(m);
  return bisect([k](double r) { return std::pow(r, k) + r * r - 1.0; }, 0.0, 1.0).value;
}

RadiusResult identity_radius_lower_bound(const OperatorSpec& spec) {
  const Kernel& h = spec.kernel();
  const std::size_t m = h.order();
  if (h.traits().degree) throw InvalidInput("operator with a polynomial kernel is not invertible");
  constexpr std::size_t kTerms = 200'000;
  // log(1/|c_n|) for n = m .. m + kTerms.
  std::vector<double> inv(kTerms + 1);
  for (std::size_t k = 0; k <= kTerms; ++k) {
    const double c = std::abs(h.coeff(m + k));
    if (!(c > 0.0)) throw InvalidInput("kernel " + h.name() + " has a zero coefficient");
    inv[k] = -std::log(c);
  }
  const double rc = radius_of_convergence(h).value;
  const double upper = std::isinf(rc) ? 0.0 : 1.0 / rc;
  // sum_{k >= from} r^{power (m+k)} / |c_{m+k}|^power, +inf when it has not settled.
  const auto sum = [&](double r, std::size_t from, double power) {
    const double lr = std::log(r);
    double total = 0.0;
    double prev = kInf;
    for (std::size_t k = from; k <= kTerms; ++k) {
      const double term =
          std::exp(power * (static_cast<double>(m + k) * lr + inv[k]));
      total += term;
      if (k > from + 8 && term <= prev && term <= 1e-17 * total) return total;
      prev = term;
    }
    return kInf;
  };
  const auto schwarz_pick = [&](double r) {
    if (r == 0.0) return m == 0 ? std::exp(inv[0]) - 1.0 : -1.0;
    const double A = std::exp(static_cast<double>(m) * std::log(r) + inv[0]);
    const double B = sum(r, 1, 1.0);
    // max over alpha in [0,1] of alpha A + (1 - alpha^2) B is at most one exactly
    // when A <= 1 and B <= (1 + sqrt(1 - A^2))/2. This form crosses zero
    // transversally, unlike the maximum itself.
    if (A > 1.0) return A - 1.0;
    return std::max(A - 1.0, B - 0.5 * (1.0 + std::sqrt(1.0 - A * A)));
  };
  const auto cauchy_schwarz = [&](double r) {
    if (r == 0.0) return m == 0 ? std::exp(2.0 * inv[0]) - 1.0 : -1.0;
    return sum(r, 0, 2.0) - 1.0;
  };
  // Largest r with g(r) <= 0; g increases in r.
  const auto solve = [&](const std::function<double(double)>& g) {
    if (upper == 0.0 || g(0.0) > 0.0) return 0.0;
    double lo = 0.0;
    double hi = upper * (1.0 - 1e-12);
    if (g(hi) <= 0.0) return hi;
    while (true) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) return lo;
      (g(mid) <= 0.0 ? lo : hi) = mid;
    }
  };
  const double sp = solve(schwarz_pick);
  const double cs = solve(cauchy_schwarz);
  RadiusResult out;
  out.value = std::max(sp, cs);
  out.method = Method::bisection;
  out.lo = 0.0;
  out.hi = upper;
  out.hypotheses = {{"Schwarz-Pick estimate", sp >= cs}, {"Cauchy-Schwarz estimate", cs > sp}};
  return out;
}

}  // namespace bohrconv
