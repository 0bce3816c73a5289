#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bohrconv/bohr.hpp"
#include "bohrconv/kernels.hpp"
#include "bohrconv/series.hpp"

namespace bohrconv {

/// Slack for inequality checks, absorbing truncation and rounding.
inline constexpr double kCheckSlack = 1e-9;
/// An excess must beat this to count as a sharpness violation.
inline constexpr double kViolationThreshold = 1e-4;

/// z^pre_vanish * rotation * prod (z - a_k)/(1 - conj(a_k) z).
struct BlaschkeSample {
  std::vector<Complex> zeros;
  Complex rotation{1.0, 0.0};
  std::size_t pre_vanish = 0;
};

/// Rational function num/den with den(0) != 0.
struct Rational {
  std::vector<Complex> num;
  std::vector<Complex> den;

  Complex operator()(Complex z) const;
  /// Taylor coefficients through `order` by long division.
  TruncatedSeries series(std::size_t order = kDefaultOrder) const;
  /// max |value| over `grid_points` equispaced points of the unit circle.
  double sup_norm(std::size_t grid_points = 1024) const;
};

Rational to_rational(const BlaschkeSample& b);
/// (w + a)/(1 + a w) composed after w: the same function with w(0) = 0 moved to a.
Rational pin_initial_value(const Rational& w, double a);

/// Zero count uniform in [0, max_degree]; |zero|^2 uniform in [0, 0.81);
/// angles and rotation uniform. A pure function of (seed, index).
BlaschkeSample random_blaschke(std::uint64_t seed, std::uint64_t index,
                               std::size_t max_degree = 8, std::size_t pre_vanish = 0);

/// omega = z B(z) for a random Blaschke product B with exactly `degree` zeros.
TruncatedSeries random_schwarz(std::uint64_t seed, std::size_t degree,
                               std::size_t order = kDefaultOrder);

struct EmpiricalOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::size_t max_degree = 8;
  std::size_t order = kDefaultOrder;
};

struct EmpiricalPoint {
  double r = 0.0;
  /// Best normalized |T2 M_r f| over every sample.
  double value = 0.0;
  /// Best over the automorphism samples alone.
  double automorphism_value = 0.0;
  double automorphism_a = 0.0;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
};

/// Automorphism parameters used when a is unconstrained: a uniform grid on
/// [0,1) refined toward 1, where extremal parameters of sharp radii cluster.
std::vector<double> automorphism_grid();

/// Lower bounds for m_{T1 -> T2}(r[, a]) at each radius. Samples are
/// T1 f = z^{m+l} phi with phi a disc automorphism or a random Blaschke
/// product; a fixes |phi(0)|, which is |a_m| when T1 is the identity on H_m.
/// Requires m(T1) >= m(T2) and nonzero T1 coefficients from m(T1) on.
std::vector<EmpiricalPoint> empirical_bombieri(const OperatorSpec& t1, const OperatorSpec& t2,
                                               std::span<const double> radii,
                                               std::optional<double> a,
                                               const EmpiricalOptions& opts = {});
double empirical_bombieri(const OperatorSpec& t1, const OperatorSpec& t2, double r,
                          std::optional<double> a, const EmpiricalOptions& opts = {});

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool skipped = false;
  std::string reason;
  double margin() const { return rhs - lhs; }
};

/// sum_{n>=m+1} c_n d_n |a_n|^2 x^n
///   <= (1/a - a)^2 a^{-2m} ((h1*h2)(a^2 x) - c_m d_m (a^2 x)^m),  a = |a_m|.
/// `sup_norm` replaces the grid estimate of ||f|| when the caller knows it.
InequalityReport check_lemma(const Kernel& h1, const Kernel& h2, const TruncatedSeries& f,
                             double x, std::optional<double> sup_norm = std::nullopt);

/// With f = g o omega: sum_{n>=1} lambda_n |a_n|^2 <= sum_{n>=1} lambda_n |b_n|^2.
/// lambda[0] is ignored. Throws InvalidInput unless lambda is nonnegative and
/// nonincreasing from index 1.
InequalityReport check_goluzin(const TruncatedSeries& g, const TruncatedSeries& omega,
                               std::span<const double> lambda,
                               std::optional<double> omega_sup_norm = std::nullopt);

/// Coefficient n of the result is g_{n+l}/c_n for n >= m. Throws InvalidInput
/// if g does not vanish to order m+l or some c_n on the support is zero.
TruncatedSeries inverse_operator(const OperatorSpec& spec, const TruncatedSeries& g);

/// Throws InvalidInput unless |c_n| <= |c_{n+1}| for m <= n < horizon.
void require_nondecreasing_kernel(const OperatorSpec& spec, std::size_t horizon);

/// g is taken as exact: a shorter g is zero-padded to the order of omega or phi.
/// f = T^{-1}((Tg) o omega); lhs = M_r f, rhs = M_r(Tg).
InequalityReport check_subordination_majorant(const OperatorSpec& spec, const TruncatedSeries& g,
                                              const TruncatedSeries& omega, double r);
/// f = T^{-1}(phi Tg); lhs = M_r f, rhs = M_r(Tg).
InequalityReport check_majorization_majorant(const OperatorSpec& spec, const TruncatedSeries& g,
                                             const TruncatedSeries& phi, double r,
                                             std::optional<double> phi_sup_norm = std::nullopt);

struct SharpnessResult {
  double r = 0.0;
  /// max over the automorphism family of |T2 M_r f| / ||T1 f|| - 1.
  double excess = 0.0;
  double a = 0.0;
  bool violated = false;
};
SharpnessResult automorphism_sharpness(const OperatorSpec& t1, const OperatorSpec& t2, double r,
                                       double threshold = kViolationThreshold);

/// One aggregated check: {check, params, samples, worst_margin, holds}.
struct CheckReport {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  std::size_t samples = 0;
  double worst_margin = 0.0;
  bool holds = true;
  nlohmann::json worst = nullptr;
};
nlohmann::json to_json(const CheckReport& report);

/// Built-in operators with |c_n| <= |c_{n+1}|, used by the comparison suites.
std::vector<OperatorSpec> comparison_operators();
/// Built-in convolution pairs: id0, derivative m <= 3, integral, lacunary m <= 3.
std::vector<KernelPair> builtin_pairs();

/// Empirical supremum against the closed form on a grid inside the validity
/// region: r_j = j/(r_count+1) * min(a, a inf_ratio) for j = 1..r_count.
/// Under CoKPolicy::require a pair without a co-K witness is skipped (zero
/// samples, params.skip_reason); CoKPolicy::assume tests it anyway.
CheckReport thm1_oracle_report(const KernelPair& pair, std::span<const double> a_values,
                               std::size_t r_count, const EmpiricalOptions& opts,
                               double tolerance = 1e-6,
                               CoKPolicy policy = CoKPolicy::require);
CheckReport lemma_report(const KernelPair& pair, std::size_t trials, std::uint64_t seed);
CheckReport goluzin_report(std::size_t trials, std::uint64_t seed);
CheckReport subordination_report(const OperatorSpec& spec, std::size_t trials, std::uint64_t seed);
CheckReport majorization_report(const OperatorSpec& spec, std::size_t trials, std::uint64_t seed);
/// "id0": the automorphism family with g = 1 (majorization) and g = z
/// (subordination) at r = R + 0.01, where a violation is expected, and at r = R.
/// "lacunary": id0 -> A_{1/(1-z^2)} around 1/sqrt(3); all samples below, the
/// automorphism family above.
std::vector<CheckReport> sharpness_reports(const std::string& pair, const EmpiricalOptions& opts);

struct SuiteOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::size_t order = kDefaultOrder;
  /// Closed-form agreement tolerance of the oracle suite.
  double tolerance = 1e-6;
  /// Restricts the sharpness suite; empty runs id0 and lacunary.
  std::string pair;
};
inline const std::vector<std::string> kSuites = {"thm1-oracle", "lemma", "goluzin", "thm8",
                                                 "thm9",        "sharpness", "all"};
/// Throws InvalidInput for an unknown suite name.
std::vector<CheckReport> run_suite(const std::string& suite, const SuiteOptions& opts);

}  // namespace bohrconv
