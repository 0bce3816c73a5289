#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "bohrconv/kernels.hpp"
#include "bohrconv/specfun.hpp"

namespace bohrconv {

enum class Method { closed_form, bisection, minimization };
std::string to_string(Method method);

/// One checked hypothesis behind a result.
struct Hypothesis {
  std::string name;
  bool ok = false;
};

/// A computed Bohr radius. Radii may exceed one; nothing is clamped.
struct RadiusResult {
  double value = 0.0;
  Method method = Method::closed_form;
  /// |m(value, a) - 1|, or the root residual of the defining equation.
  double residual = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<Hypothesis> hypotheses;
};

inline constexpr double kRootTolerance = 1e-12;

// Built-in convolution pairs A^{m,l}_{h1*h2}; h2 = z^m/(1-z) except for lacunary.
KernelPair id0_pair();
/// (z^m/(1-z)^{m+1}, z^m/(1-z)), l = -m: the m-th derivative divided by m!.
KernelPair derivative_pair(std::size_t m);
/// (-log(1-z)/z, 1/(1-z)), l = +1: integration from 0.
KernelPair integral_pair();

enum class CoKPolicy {
  require,  ///< h2 must carry a witness (proof-backed or asserted)
  assume,   ///< missing witness is reported but tolerated
};

/// Conditions under which the convolution closed form is the supremum:
/// 0 < a <= 1, a > r (or a = 1), r <= a * inf c_n/c_{n+1}, c_n > 0, shared
/// vanishing order, and the co-K witness for h2.
std::vector<Hypothesis> theorem1_hypotheses(const Kernel& h1, const Kernel& h2, double a,
                                            double r);

/// m_{id -> A^{m,l}_{h1*h2}}(r, a)
///   = r^{m+l} c_m d_m a + (1/a - a) a^{-m} r^l ((h1*h2)(ar) - c_m d_m (ar)^m).
/// Throws HypothesisViolation when a condition of theorem1_hypotheses fails.
double bombieri_value_thm1(const Kernel& h1, const Kernel& h2, int l, double a, double r,
                           CoKPolicy policy = CoKPolicy::require);
double bombieri_value_thm1(const KernelPair& pair, double a, double r,
                           CoKPolicy policy = CoKPolicy::require);

/// Root of m(r, a) = 1 on [lo, hi] by bisection. m must increase in r.
RadiusResult radius_with_coefficient(const std::function<double(double, double)>& m_fun,
                                     double a, double lo, double hi);

/// Radius of a convolution pair at initial coefficient a, by bisection of the
/// closed form over its validity region r in [0, min(a, a * inf_ratio)].
RadiusResult theorem1_radius(const KernelPair& pair, double a,
                             CoKPolicy policy = CoKPolicy::require);

/// 1/(1+2a) for 1/2 < a <= 1.
double radius_id0(double a);
/// 1 on [0, 1/3]; (3 - sqrt(8(1-r^2)))/r on [1/3, 1/sqrt 2]. Larger r is open.
double bombieri_id0(double r);

/// Right end of the range where the Cesaro bound is known: the root of
/// 2x = 3(1-x) log(1/(1-x)).
double cesaro_bound_limit();
/// (1/r) log(1/(1-r)), an upper bound for the Cesaro Bohr-Bombieri function.
double cesaro_bombieri_bound(double r);

/// 1 - (2/3)^{1/(m+1)}.
double radius_derivative_pair(std::size_t m);
/// (1/a)(1 - ((1+a)/(1+2a))^{1/(m+1)}) when a^2 > 1 - ((1+a)/(1+2a))^{1/(m+1)}.
RadiusResult radius_derivative_pair_with_a(std::size_t m, double a);

/// The r in (0,1) with Li_2(r^2) = 1: a lower bound for R_{d -> id_1}.
RadiusResult radius_integral_lower();

/// r(a) = (1/a)(1 - W(x)/(e x)), x = (1-2a^2)/((a^2-1) e): the radius at which
/// the majorant of the primitive of (z-a)/(1-az) reaches one. Defined on (0, 1).
double integral_radius_curve(double a);

struct CurveMinimum {
  double r_min = 0.0;
  double a_min = 0.0;
};
/// min over 0 < a < 1 of integral_radius_curve: an upper bound for R_{d -> id_1}.
CurveMinimum radius_integral_upper();

/// sqrt(1 + W(-2/e^2)/2): below it the curve has r(a) > a.
double integral_threshold();
/// integral_radius_curve(a) for threshold < a <= 1 (limit value 1 at a = 1).
RadiusResult radius_integral_with_a(double a);
/// m_{id_0 -> int}(r, a) = ar + (1/a - a) r (-log(1-ar)/(ar) - 1).
double integral_bombieri(double r, double a);

/// (1/a) (a/(1+2a))^{1/m} when a^{2m-1} > 1/(1+2a): the convolution closed
/// form for the lacunary pair. Only m = 1 meets the co-K hypothesis; for m >= 2
/// the function (z^m+a)/(1+az^m) already exceeds lacunary_bombieri, so the
/// value overstates the true radius when a < 1.
RadiusResult radius_lacunary_with_a(std::size_t m, double a);
/// a + (1/a - a) (ar)^m / (1 - (ar)^m).
double lacunary_bombieri(std::size_t m, double r, double a);

/// Minimal positive root of F(a,b,c,x) - 1 = 1/2.
RadiusResult radius_hypergeometric(const HypergeometricParams& p);

/// Nonnegative continuous weights phi_n on [0,1), truncated at `horizon`
/// with an optional bound for the dropped tail sum_{n > horizon} phi_n(x).
struct WeightProfile {
  std::function<double(std::size_t, double)> phi;
  std::size_t horizon = 256;
  std::function<double(double)> tail;
};
/// phi_n(x) = x^n with its exact geometric tail.
WeightProfile geometric_profile(std::size_t horizon = 256);

/// Minimal positive root of phi_0(x) = (2/p) sum_{n>=1} phi_n(x), p in (0, 2].
double theorem_b_radius(const WeightProfile& profile, double p);

/// Upper bound 1/R_c(h) for R_{A^{m,l}_h -> id}; 0 for entire kernels.
/// Throws HypothesisViolation for polynomial kernels.
double convergence_radius_bound(const Kernel& kernel, int l);

/// Root of r^{4m} + r^2 = 1. By Cauchy-Schwarz this is a lower bound for
/// R_{S_{2m,-2m} -> id}; it does not bound R_{S_{m,-m} -> id}, whose estimate
/// is the root of r^{2m} + r^2 = 1.
double shift_pair_lower_bound(std::size_t m);

/// Certified lower bound for R_{T -> id}: the larger of the Schwarz-Pick and
/// Cauchy-Schwarz estimates of M_r(T^{-1} psi) over ||psi|| <= 1.
/// Requires c_n != 0 for every n >= m.
RadiusResult identity_radius_lower_bound(const OperatorSpec& spec);

}  // namespace bohrconv
