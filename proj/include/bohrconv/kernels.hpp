#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bohrconv/series.hpp"
#include "bohrconv/specfun.hpp"

namespace bohrconv {

/// Status of the "h~2 belongs to the closed convex hull of convex maps"
/// hypothesis. Built-ins that satisfy it carry a proof-backed witness; user
/// kernels may only assert it.
enum class CoKWitness { none, proof_backed, asserted };

/// inf_{n >= m+1} c_n / c_{n+1}.
struct InfRatio {
  double value = 0.0;
  /// Analytically known rather than a finite-horizon scan.
  bool exact = false;
  /// Reached at a finite index; false when only approached as n -> infinity.
  bool attained = true;
};

struct ConvergenceRadius {
  double value = 0.0;  ///< may be +infinity
  bool exact = false;
};

/// Convolution function h(z) = sum_{n >= m} c_n z^n with real coefficients.
///
/// Coefficients come from a generator, so changing the horizon costs nothing.
/// Analytic metadata (exact infimum, convergence radius, closed form) is
/// attached by the built-in factories; a finite scan cannot certify it.
class Kernel {
 public:
  using Generator = std::function<double(std::size_t)>;

  struct Traits {
    std::optional<InfRatio> inf_ratio;
    ConvergenceRadius conv_radius{1.0, true};
    bool positive = true;  ///< c_n > 0 for every n >= m
    CoKWitness co_k = CoKWitness::none;
    /// h(x) for real 0 <= x < conv_radius.
    std::function<double(double)> closed_form;
    /// c_n = 1 for every n >= m.
    bool unit_tail = false;
    /// Last nonzero index for polynomial kernels.
    std::optional<std::size_t> degree;
  };

  Kernel(std::string name, nlohmann::json params, std::size_t order, Generator coeff,
         Traits traits);

  const std::string& name() const { return name_; }
  const nlohmann::json& params() const { return params_; }
  /// Vanishing order m.
  std::size_t order() const { return order_; }
  /// c_n; zero below the vanishing order.
  double coeff(std::size_t n) const { return n < order_ ? 0.0 : coeff_(n); }
  std::vector<double> coefficients(std::size_t horizon) const;
  TruncatedSeries series(std::size_t horizon = kDefaultOrder) const;

  const Traits& traits() const { return traits_; }
  bool positive() const { return traits_.positive; }
  CoKWitness co_k() const { return traits_.co_k; }

  /// Same kernel with the co-K witness asserted by the caller.
  Kernel with_asserted_co_k() const;

  /// h(x) for real x inside the disk of convergence: closed form when known,
  /// else summed until the terms drop below 1e-17 of the total.
  double sum(double x) const;

 private:
  std::string name_;
  nlohmann::json params_;
  std::size_t order_;
  Generator coeff_;
  Traits traits_;
};

/// A = S_{m,l}(h * .): convolve with h, then multiply by z^l.
class OperatorSpec {
 public:
  /// Throws InvalidInput unless m + l >= 0.
  OperatorSpec(Kernel kernel, int shift);

  const Kernel& kernel() const { return kernel_; }
  int shift() const { return shift_; }
  std::size_t order() const { return kernel_.order(); }

 private:
  Kernel kernel_;
  int shift_;
};

/// Pair (h1, h2) with shift l, denoting A^{m,l}_{h1*h2}.
struct KernelPair {
  std::string name;
  Kernel h1;
  Kernel h2;
  int shift = 0;
};

// Built-in kernels.
Kernel geometric_kernel();
/// z^m/(1-z): c_n = 1 for n >= m.
Kernel shift_kernel(std::size_t m);
/// z^m/(1-z)^{m+1}: c_n = C(n, m). With l = -m this is the m-th derivative / m!.
Kernel derivative_kernel(std::size_t m);
/// -log(1-z)/z: c_n = 1/(n+1). With l = +1 this integrates from 0.
Kernel integral_kernel();
/// F(a,b,c,z), c_n = gamma_n.
Kernel hypergeometric_kernel(const HypergeometricParams& p);
/// c_n = s^n, i.e. f(z) -> f(s z).
Kernel dilation_kernel(double s);
/// z^{m+1}/(1-z^m): ones at exponents m+1, 2m+1, 3m+1, ...
Kernel lacunary_progression_kernel(std::size_t m);
/// 1/(1-z^m): ones at multiples of m.
Kernel lacunary_series_kernel(std::size_t m);
/// Finite kernel given by its coefficients c_0..c_d (leading zeros set m).
Kernel polynomial_kernel(std::vector<double> coeffs);

/// Lacunary pair (z^{m+1}/(1-z), z^{m+1}/(1-z^m)) with l = -(m+1); requires m >= 1.
KernelPair lacunary_kernel(std::size_t m);

/// Kernel of the coefficientwise product h1 * h2.
Kernel hadamard(const Kernel& h1, const Kernel& h2);

/// (A f) coefficients: index n+l receives c_n a_n for n >= m.
/// Throws InvalidInput when f is not in H_m.
TruncatedSeries apply_operator(const OperatorSpec& spec, const TruncatedSeries& f);

/// Cesaro means: coefficient n is (a_0 + ... + a_n)/(n+1).
TruncatedSeries cesaro(const TruncatedSeries& f);

/// Exact value for built-ins, else min_{m+1 <= n <= horizon} c_n/c_{n+1}.
/// Throws InvalidInput on a nonpositive coefficient.
InfRatio inf_ratio(const Kernel& kernel, std::size_t horizon = 1024);

/// Analytic value for built-ins, else 1/max |c_n|^{1/n} over n in [horizon/2, horizon].
ConvergenceRadius radius_of_convergence(const Kernel& kernel, std::size_t horizon = 1024);

/// Operator descriptor {name, m, l, params}.
nlohmann::json to_json(const OperatorSpec& spec);
/// Rebuilds a built-in or polynomial kernel from its descriptor.
OperatorSpec operator_from_json(const nlohmann::json& j);
Kernel kernel_from_json(const nlohmann::json& j);

}  // namespace bohrconv
