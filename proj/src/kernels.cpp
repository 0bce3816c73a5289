#include "bohrconv/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bohrconv/errors.hpp"

namespace bohrconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ipow(double x, std::size_t n) { return std::pow(x, static_cast<double>(n)); }

// Exact infimum over integers n >= 1 of (c+n)(1+n)/((a+n)(b+n)).
// The ratio minus one is (alpha t + beta)/((a+t)(b+t)), which is monotone
// between the real roots of -alpha t^2 - 2 beta t + alpha ab - beta(a+b).
InfRatio hypergeometric_inf_ratio(const HypergeometricParams& p) {
  const auto ratio = [&](double n) { return (p.c + n) * (1.0 + n) / ((p.a + n) * (p.b + n)); };
  const double alpha = p.c + 1.0 - p.a - p.b;
  const double beta = p.c - p.a * p.b;
  std::vector<double> critical;
  const double qa = -alpha;
  const double qb = -2.0 * beta;
  const double qc = alpha * p.a * p.b - beta * (p.a + p.b);
  if (qa == 0.0) {
    if (qb != 0.0) critical.push_back(-qc / qb);
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      critical.push_back((-qb + std::sqrt(disc)) / (2.0 * qa));
      critical.push_back((-qb - std::sqrt(disc)) / (2.0 * qa));
    }
  }
  InfRatio best{1.0, true, false};  // limit as n -> infinity
  const auto consider = [&](double n) {
    if (n < 1.0) return;
    const double v = ratio(n);
    if (v <= best.value) best = {v, true, true};
  };
  consider(1.0);
  for (double t : critical) {
    if (!(t >= 1.0) || t > 1e15) continue;
    consider(std::floor(t));
    consider(std::floor(t) + 1.0);
  }
  return best;
}

Kernel::Traits unit_traits(std::size_t m) {
  Kernel::Traits t;
  t.inf_ratio = InfRatio{1.0, true, true};
  t.conv_radius = {1.0, true};
  t.co_k = CoKWitness::proof_backed;  // z/(1-z) is convex
  t.unit_tail = true;
  t.closed_form = [m](double x) { return ipow(x, m) / (1.0 - x); };
  return t;
}

}  // namespace

Kernel::Kernel(std::string name, nlohmann::json params, std::size_t order, Generator coeff,
               Traits traits)
    : name_(std::move(name)),
      params_(std::move(params)),
      order_(order),
      coeff_(std::move(coeff)),
      traits_(std::move(traits)) {}

std::vector<double> Kernel::coefficients(std::size_t horizon) const {
  std::vector<double> c(horizon + 1);
  for (std::size_t n = 0; n <= horizon; ++n) c[n] = coeff(n);
  return c;
}

TruncatedSeries Kernel::series(std::size_t horizon) const {
  const auto c = coefficients(horizon);
  return TruncatedSeries::from_real(c);
}

Kernel Kernel::with_asserted_co_k() const {
  Kernel out = *this;
  if (out.traits_.co_k == CoKWitness::none) out.traits_.co_k = CoKWitness::asserted;
  if (out.params_.is_object()) out.params_["assert_co_k"] = true;
  return out;
}

double Kernel::sum(double x) const {
  if (!(std::abs(x) < traits_.conv_radius.value)) {
    throw DomainError("kernel " + name_ + ": argument outside the disk of convergence");
  }
  if (traits_.closed_form) return traits_.closed_form(x);
  double total = 0.0;
  double power = ipow(x, order_);
  const std::size_t last = traits_.degree.value_or(std::numeric_limits<std::size_t>::max());
  double prev = kInf;
  for (std::size_t n = order_; n <= last; ++n) {
    const double term = coeff(n) * power;
    total += term;
    power *= x;
    const bool shrinking = std::abs(term) <= prev;
    prev = std::abs(term);
    if (n > order_ + 8 && shrinking && std::abs(term) <= 1e-17 * std::abs(total)) break;
    if (power == 0.0) break;
    if (n > order_ + 50'000'000) throw DomainError("kernel " + name_ + ": sum did not settle");
  }
  return total;
}

OperatorSpec::OperatorSpec(Kernel kernel, int shift) : kernel_(std::move(kernel)), shift_(shift) {
  if (static_cast<long long>(kernel_.order()) + shift < 0) {
    throw InvalidInput("operator needs m + l >= 0");
  }
}

Kernel geometric_kernel() {
  return Kernel("geometric", nlohmann::json::object(), 0, [](std::size_t) { return 1.0; },
                unit_traits(0));
}

Kernel shift_kernel(std::size_t m) {
  return Kernel("shift", {{"m", m}}, m, [](std::size_t) { return 1.0; }, unit_traits(m));
}

Kernel derivative_kernel(std::size_t m) {
  Kernel::Traits t;
  // C(n,m)/C(n+1,m) = (n+1-m)/(n+1) increases with n, so n = m+1 is the minimum.
  t.inf_ratio = InfRatio{2.0 / (static_cast<double>(m) + 2.0), true, true};
  t.conv_radius = {1.0, true};
  t.unit_tail = (m == 0);
  if (m == 0) t.co_k = CoKWitness::proof_backed;
  t.closed_form = [m](double x) { return ipow(x, m) / ipow(1.0 - x, m + 1); };
  return Kernel("derivative", {{"m", m}}, m, [m](std::size_t n) { return binomial(n, m); }, t);
}

Kernel integral_kernel() {
  Kernel::Traits t;
  // (n+2)/(n+1) decreases to 1 without reaching it.
  t.inf_ratio = InfRatio{1.0, true, false};
  t.conv_radius = {1.0, true};
  t.closed_form = [](double x) { return x == 0.0 ? 1.0 : -std::log1p(-x) / x; };
  return Kernel("integral", nlohmann::json::object(), 0,
                [](std::size_t n) { return 1.0 / (static_cast<double>(n) + 1.0); }, t);
}

Kernel hypergeometric_kernel(const HypergeometricParams& p) {
  // Validates the parameters and the sign of the first coefficients.
  (void)hypergeometric_coeffs(p, 2);
  Kernel::Traits t;
  const bool terminates = (p.a == 0.0 || p.b == 0.0);
  if (terminates) {
    t.positive = false;
    t.degree = 0;
    t.conv_radius = {kInf, true};
    t.closed_form = [](double) { return 1.0; };
  } else {
    t.inf_ratio = hypergeometric_inf_ratio(p);
    t.conv_radius = {1.0, true};
    // Summation by the ratio recurrence, cheaper than calling the generator per term.
    t.closed_form = [p](double x) {
      double term = 1.0;
      double total = 1.0;
      for (std::size_t n = 0; n < 50'000'000; ++n) {
        const double dn = static_cast<double>(n);
        term *= (p.a + dn) * (p.b + dn) / ((p.c + dn) * (1.0 + dn)) * x;
        total += term;
        if (n > 8 && std::abs(term) <= 1e-17 * std::abs(total)) break;
      }
      return total;
    };
  }
  if (p.a == 1.0 && p.b == 1.0 && p.c == 1.0) {
    t = unit_traits(0);
  } else if (p.a == 1.0 && p.b == 1.0 && p.c == 2.0) {
    t.closed_form = [](double x) { return x == 0.0 ? 1.0 : -std::log1p(-x) / x; };
  }
  const auto generator = [p](std::size_t n) {
    if (n > 64 && p.a > 0.0 && p.b > 0.0 && p.c > 0.0) {
      const double dn = static_cast<double>(n);
      return std::exp(std::lgamma(p.a + dn) - std::lgamma(p.a) + std::lgamma(p.b + dn) -
                      std::lgamma(p.b) - std::lgamma(p.c + dn) + std::lgamma(p.c) -
                      std::lgamma(dn + 1.0));
    }
    double g = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double dk = static_cast<double>(k);
      g *= (p.a + dk) * (p.b + dk) / ((p.c + dk) * (1.0 + dk));
    }
    return g;
  };
  return Kernel("hypergeometric", {{"a", p.a}, {"b", p.b}, {"c", p.c}}, 0, generator, t);
}

Kernel dilation_kernel(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidInput("dilation factor must be positive");
  Kernel::Traits t;
  t.inf_ratio = InfRatio{1.0 / s, true, true};
  t.conv_radius = {1.0 / s, true};
  t.unit_tail = (s == 1.0);
  t.closed_form = [s](double x) { return 1.0 / (1.0 - s * x); };
  return Kernel("dilation", {{"s", s}}, 0, [s](std::size_t n) { return ipow(s, n); }, t);
}

Kernel lacunary_progression_kernel(std::size_t m) {
  if (m == 0) throw InvalidInput("lacunary kernel needs m >= 1");
  Kernel::Traits t;
  t.positive = (m == 1);
  if (m == 1) t.inf_ratio = InfRatio{1.0, true, true};
  t.conv_radius = {1.0, true};
  // The convex-hull function built from d_{n+m+1} is z^m/(1-z^m), whose
  // derivative at 0 vanishes for m >= 2, so only m = 1 carries a witness.
  t.co_k = m == 1 ? CoKWitness::proof_backed : CoKWitness::none;
  t.unit_tail = (m == 1);
  t.closed_form = [m](double x) { return ipow(x, m + 1) / (1.0 - ipow(x, m)); };
  const auto generator = [m](std::size_t n) {
    return (n >= m + 1 && (n - m - 1) % m == 0) ? 1.0 : 0.0;
  };
  return Kernel("lacunary", {{"m", m}}, m + 1, generator, t);
}

Kernel lacunary_series_kernel(std::size_t m) {
  if (m == 0) throw InvalidInput("lacunary kernel needs m >= 1");
  Kernel::Traits t;
  t.positive = (m == 1);
  if (m == 1) t.inf_ratio = InfRatio{1.0, true, true};
  t.conv_radius = {1.0, true};
  t.unit_tail = (m == 1);
  t.closed_form = [m](double x) { return 1.0 / (1.0 - ipow(x, m)); };
  return Kernel("lacunary_series", {{"m", m}}, 0,
                [m](std::size_t n) { return n % m == 0 ? 1.0 : 0.0; }, t);
}

Kernel polynomial_kernel(std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) throw InvalidInput("polynomial kernel needs a nonzero coefficient");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw InvalidInput("polynomial kernel coefficient is not finite");
  }
  std::size_t m = 0;
  while (coeffs[m] == 0.0) ++m;
  Kernel::Traits t;
  t.positive = false;  // vanishes past its degree
  t.conv_radius = {kInf, true};
  t.degree = coeffs.size() - 1;
  t.closed_form = [coeffs](double x) {
    double acc = 0.0;
    for (std::size_t n = coeffs.size(); n-- > 0;) acc = acc * x + coeffs[n];
    return acc;
  };
  nlohmann::json params = {{"coeffs", coeffs}};
  return Kernel("polynomial", params, m,
                [coeffs](std::size_t n) { return n < coeffs.size() ? coeffs[n] : 0.0; }, t);
}

KernelPair lacunary_kernel(std::size_t m) {
  if (m == 0) throw InvalidInput("lacunary kernel needs m >= 1");
  return {"lacunary", shift_kernel(m + 1), lacunary_progression_kernel(m),
          -static_cast<int>(m) - 1};
}

Kernel hadamard(const Kernel& h1, const Kernel& h2) {
  const nlohmann::json params = {{"left", {{"name", h1.name()}, {"m", h1.order()}, {"params", h1.params()}}},
                                 {"right", {{"name", h2.name()}, {"m", h2.order()}, {"params", h2.params()}}}};
  const std::size_t order = std::max(h1.order(), h2.order());
  // Multiplying by a kernel that is identically one on the other's support
  // changes nothing, so the analytic metadata carries over.
  const auto absorbs = [](const Kernel& unit, const Kernel& other) {
    return unit.traits().unit_tail && unit.order() <= other.order();
  };
  if (absorbs(h2, h1) || absorbs(h1, h2)) {
    const Kernel& kept = absorbs(h2, h1) ? h1 : h2;
    Kernel::Traits t = kept.traits();
    t.co_k = CoKWitness::none;
    return Kernel("hadamard", params, order, [kept](std::size_t n) { return kept.coeff(n); }, t);
  }
  Kernel::Traits t;
  t.positive = h1.positive() && h2.positive();
  t.conv_radius = {h1.traits().conv_radius.value * h2.traits().conv_radius.value, false};
  if (h1.traits().degree || h2.traits().degree) {
    t.degree = std::min(h1.traits().degree.value_or(std::numeric_limits<std::size_t>::max()),
                        h2.traits().degree.value_or(std::numeric_limits<std::size_t>::max()));
    t.conv_radius = {kInf, true};
  }
  return Kernel("hadamard", params, order,
                [h1, h2](std::size_t n) { return h1.coeff(n) * h2.coeff(n); }, t);
}

TruncatedSeries apply_operator(const OperatorSpec& spec, const TruncatedSeries& f) {
  const std::size_t m = spec.order();
  if (!f.vanishes_to(m)) {
    throw InvalidInput("operator input must vanish to order " + std::to_string(m));
  }
  const long long out_order = static_cast<long long>(f.order()) + spec.shift();
  if (out_order < 0) return TruncatedSeries::zero(0);
  std::vector<Complex> out(static_cast<std::size_t>(out_order) + 1);
  for (std::size_t n = m; n <= f.order(); ++n) {
    const long long idx = static_cast<long long>(n) + spec.shift();
    out[static_cast<std::size_t>(idx)] = spec.kernel().coeff(n) * f[n];
  }
  return TruncatedSeries(std::move(out));
}

TruncatedSeries cesaro(const TruncatedSeries& f) {
  std::vector<Complex> out(f.order() + 1);
  Complex prefix{};
  for (std::size_t n = 0; n <= f.order(); ++n) {
    prefix += f[n];
    out[n] = prefix / (static_cast<double>(n) + 1.0);
  }
  return TruncatedSeries(std::move(out));
}

InfRatio inf_ratio(const Kernel& kernel, std::size_t horizon) {
  if (kernel.traits().inf_ratio) return *kernel.traits().inf_ratio;
  const std::size_t m = kernel.order();
  if (horizon < m + 2) throw InvalidInput("inf_ratio: horizon too short");
  InfRatio best{kInf, false, true};
  double next = kernel.coeff(m + 1);
  for (std::size_t n = m + 1; n < horizon; ++n) {
    const double c = next;
    next = kernel.coeff(n + 1);
    if (!(c > 0.0) || !(next > 0.0)) {
      throw InvalidInput("inf_ratio: kernel " + kernel.name() + " has a nonpositive coefficient");
    }
    best.value = std::min(best.value, c / next);
  }
  return best;
}

ConvergenceRadius radius_of_convergence(const Kernel& kernel, std::size_t horizon) {
  const auto& known = kernel.traits().conv_radius;
  if (known.exact) return known;
  double limsup = 0.0;
  for (std::size_t n = std::max<std::size_t>(horizon / 2, 1); n <= horizon; ++n) {
    const double c = std::abs(kernel.coeff(n));
    if (c > 0.0) limsup = std::max(limsup, std::pow(c, 1.0 / static_cast<double>(n)));
  }
  return {limsup == 0.0 ? kInf : 1.0 / limsup, false};
}

nlohmann::json to_json(const OperatorSpec& spec) {
  return {{"name", spec.kernel().name()},
          {"m", spec.kernel().order()},
          {"l", spec.shift()},
          {"params", spec.kernel().params()}};
}

Kernel kernel_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("name")) throw InvalidInput("kernel descriptor needs a name");
  const std::string name = j.at("name").get<std::string>();
  const nlohmann::json params = j.value("params", nlohmann::json::object());
  const auto integer = [&](const char* key) {
    if (!params.contains(key)) throw InvalidInput(name + " kernel needs parameter " + key);
    const long long v = params.at(key).get<long long>();
    if (v < 0) throw InvalidInput(name + " kernel parameter " + key + " must be >= 0");
    return static_cast<std::size_t>(v);
  };
  try {
    Kernel k = [&]() -> Kernel {
      if (name == "geometric") return geometric_kernel();
      if (name == "shift") return shift_kernel(integer("m"));
      if (name == "derivative") return derivative_kernel(integer("m"));
      if (name == "integral") return integral_kernel();
      if (name == "lacunary") return lacunary_progression_kernel(integer("m"));
      if (name == "lacunary_series") return lacunary_series_kernel(integer("m"));
      if (name == "dilation") return dilation_kernel(params.at("s").get<double>());
      if (name == "hypergeometric") {
        return hypergeometric_kernel({params.at("a").get<double>(), params.at("b").get<double>(),
                                      params.at("c").get<double>()});
      }
      if (name == "polynomial") {
        return polynomial_kernel(params.at("coeffs").get<std::vector<double>>());
      }
      if (name == "hadamard") {
        return hadamard(kernel_from_json(params.at("left")), kernel_from_json(params.at("right")));
      }
      throw InvalidInput("unknown kernel " + name);
    }();
    if (j.contains("m") && j.at("m").get<long long>() != static_cast<long long>(k.order())) {
      throw InvalidInput("descriptor vanishing order does not match kernel " + name);
    }
    return params.value("assert_co_k", false) ? k.with_asserted_co_k() : k;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed kernel descriptor: " + std::string(e.what()));
  }
}

OperatorSpec operator_from_json(const nlohmann::json& j) {
  try {
    return OperatorSpec(kernel_from_json(j), j.value("l", 0));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed operator descriptor: " + std::string(e.what()));
  }
}

}  // namespace bohrconv
