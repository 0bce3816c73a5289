#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace bohrconv {

using Complex = std::complex<double>;

/// Default truncation order for series built by the library.
inline constexpr std::size_t kDefaultOrder = 256;

/// Coefficient envelope past the truncation point:
/// |a_n| <= scale * (n+1)^power * growth^n for every n > order.
struct TailBound {
  double scale = 1.0;
  double power = 0.0;
  double growth = 1.0;
};

/// Finite prefix a_0..a_N of a power series sum a_n z^n.
///
/// Values are immutable once built. The optional tail bound lets majorant
/// sums report how much mass the truncation dropped.
class TruncatedSeries {
 public:
  /// The zero series of order 0.
  TruncatedSeries();
  explicit TruncatedSeries(std::vector<Complex> coeffs,
                           std::optional<TailBound> tail = std::nullopt);

  static TruncatedSeries from_real(std::span<const double> coeffs,
                                   std::optional<TailBound> tail = std::nullopt);
  static TruncatedSeries zero(std::size_t order);
  /// value * z^n, truncated at `order` (n may exceed order).
  static TruncatedSeries monomial(std::size_t n, std::size_t order, Complex value = 1.0);
  /// 1/(1-z): all coefficients one.
  static TruncatedSeries geometric(std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  /// Coefficient n, or zero beyond the truncation order.
  Complex operator[](std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : Complex{}; }

  /// Index of the first coefficient above 1e-15 relative to the largest one;
  /// 0 for the zero series.
  std::size_t vanish_order() const;
  /// True when f lies in H_m: every coefficient below index m is negligible.
  bool vanishes_to(std::size_t m) const;
  bool is_zero() const;

  const std::optional<TailBound>& tail() const { return tail_; }
  TruncatedSeries with_tail(std::optional<TailBound> tail) const;
  TruncatedSeries truncated(std::size_t order) const;

  friend TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g);
  friend TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g);
  friend TruncatedSeries operator*(Complex s, const TruncatedSeries& f);

 private:
  std::vector<Complex> coeffs_;
  std::optional<TailBound> tail_;
};

/// Coefficientwise product; order is min(order(f), order(g)).
TruncatedSeries hadamard(const TruncatedSeries& f, const TruncatedSeries& g);

/// Cauchy product truncated at min(order(f), order(g)).
TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g);

/// Bohr sum  sum_{n<=N} |a_n| r^n.
double majorant(const TruncatedSeries& f, double r);

struct MajorantValue {
  double value = 0.0;
  /// Upper bound on the dropped tail sum; empty when f carries no tail bound
  /// or the bound diverges at r.
  std::optional<double> tail;
};
MajorantValue majorant_with_tail(const TruncatedSeries& f, double r);

/// Coefficients of g(omega(z)) through min(order(g), order(omega)).
/// Requires omega(0) = 0, which makes the truncation exact.
TruncatedSeries compose(const TruncatedSeries& g, const TruncatedSeries& omega);

Complex evaluate(const TruncatedSeries& f, Complex z);

/// max |f(z)| over equispaced points of the circle |z| = 1 - 1e-9.
double sup_norm_estimate(const TruncatedSeries& f, std::size_t grid_points = 1024);

/// z^m (z+a)/(1+az) through order N, the extremal family of the Bohr problem.
TruncatedSeries disc_automorphism(double a, std::size_t m, std::size_t order = kDefaultOrder);

}  // namespace bohrconv
