#include "bohrconv/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bohrconv/errors.hpp"

namespace bohrconv {

namespace {

constexpr double kVanishThreshold = 1e-15;
constexpr double kSupNormRadius = 1.0 - 1e-9;

void require_finite(const std::vector<Complex>& coeffs) {
  for (const auto& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidInput("series coefficient is not finite");
    }
  }
}

std::optional<TailBound> weaker_tail(const std::optional<TailBound>& a,
                                     const std::optional<TailBound>& b) {
  if (!a || !b) return std::nullopt;
  return TailBound{a->scale + b->scale, std::max(a->power, b->power),
                   std::max(a->growth, b->growth)};
}

}  // namespace

TruncatedSeries::TruncatedSeries() : coeffs_(1, Complex{}) {}

TruncatedSeries::TruncatedSeries(std::vector<Complex> coeffs, std::optional<TailBound> tail)
    : coeffs_(std::move(coeffs)), tail_(tail) {
  if (coeffs_.empty()) coeffs_.push_back(Complex{});
  require_finite(coeffs_);
}

TruncatedSeries TruncatedSeries::from_real(std::span<const double> coeffs,
                                           std::optional<TailBound> tail) {
  return TruncatedSeries(std::vector<Complex>(coeffs.begin(), coeffs.end()), tail);
}

TruncatedSeries TruncatedSeries::zero(std::size_t order) {
  return TruncatedSeries(std::vector<Complex>(order + 1), TailBound{0.0, 0.0, 0.0});
}

TruncatedSeries TruncatedSeries::monomial(std::size_t n, std::size_t order, Complex value) {
  std::vector<Complex> c(order + 1);
  if (n <= order) c[n] = value;
  return TruncatedSeries(std::move(c), TailBound{0.0, 0.0, 0.0});
}

TruncatedSeries TruncatedSeries::geometric(std::size_t order) {
  return TruncatedSeries(std::vector<Complex>(order + 1, Complex{1.0}),
                         TailBound{1.0, 0.0, 1.0});
}

std::size_t TruncatedSeries::vanish_order() const {
  double biggest = 0.0;
  for (const auto& c : coeffs_) biggest = std::max(biggest, std::abs(c));
  if (biggest == 0.0) return 0;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    if (std::abs(coeffs_[n]) > kVanishThreshold * biggest) return n;
  }
  return 0;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return c == Complex{}; });
}

bool TruncatedSeries::vanishes_to(std::size_t m) const {
  return is_zero() || vanish_order() >= m;
}

TruncatedSeries TruncatedSeries::with_tail(std::optional<TailBound> tail) const {
  TruncatedSeries out = *this;
  out.tail_ = tail;
  return out;
}

TruncatedSeries TruncatedSeries::truncated(std::size_t order) const {
  std::vector<Complex> c(order + 1);
  const std::size_t n = std::min(order + 1, coeffs_.size());
  std::copy_n(coeffs_.begin(), n, c.begin());
  // Growing the order pads with zeros, so the old tail bound no longer holds.
  return TruncatedSeries(std::move(c), order <= this->order() ? tail_ : std::nullopt);
}

TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) {
  const std::size_t order = std::min(f.order(), g.order());
  std::vector<Complex> c(order + 1);
  for (std::size_t n = 0; n <= order; ++n) c[n] = f.coeffs_[n] + g.coeffs_[n];
  return TruncatedSeries(std::move(c), weaker_tail(f.tail_, g.tail_));
}

TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) {
  return f + Complex{-1.0} * g;
}

TruncatedSeries operator*(Complex s, const TruncatedSeries& f) {
  std::vector<Complex> c(f.coeffs_);
  for (auto& x : c) x *= s;
  auto tail = f.tail_;
  if (tail) tail->scale *= std::abs(s);
  return TruncatedSeries(std::move(c), tail);
}

TruncatedSeries hadamard(const TruncatedSeries& f, const TruncatedSeries& g) {
  const std::size_t order = std::min(f.order(), g.order());
  std::vector<Complex> c(order + 1);
  for (std::size_t n = 0; n <= order; ++n) c[n] = f[n] * g[n];
  std::optional<TailBound> tail;
  if (f.tail() && g.tail()) {
    tail = TailBound{f.tail()->scale * g.tail()->scale, f.tail()->power + g.tail()->power,
                     f.tail()->growth * g.tail()->growth};
  }
  return TruncatedSeries(std::move(c), tail);
}

TruncatedSeries multiply(const TruncatedSeries& f, const TruncatedSeries& g) {
  const std::size_t order = std::min(f.order(), g.order());
  std::vector<Complex> c(order + 1);
  const auto fc = f.coeffs();
  const auto gc = g.coeffs();
  for (std::size_t i = 0; i <= order; ++i) {
    if (fc[i] == Complex{}) continue;
    for (std::size_t j = 0; i + j <= order; ++j) c[i + j] += fc[i] * gc[j];
  }
  return TruncatedSeries(std::move(c));
}

double majorant(const TruncatedSeries& f, double r) {
  double sum = 0.0;
  double power = 1.0;
  for (const auto& c : f.coeffs()) {
    sum += std::abs(c) * power;
    power *= r;
  }
  return sum;
}

MajorantValue majorant_with_tail(const TruncatedSeries& f, double r) {
  MajorantValue out{majorant(f, r), std::nullopt};
  const auto& tail = f.tail();
  if (!tail) return out;
  if (tail->scale == 0.0) {
    out.tail = 0.0;
    return out;
  }
  const double q = tail->growth * r;
  if (q >= 1.0) return out;
  // Sum the envelope until the terms are negligible; they decrease
  // geometrically once n exceeds power / -log(q).
  double total = 0.0;
  for (std::size_t n = f.order() + 1;; ++n) {
    const double term = tail->scale * std::pow(static_cast<double>(n + 1), tail->power) *
                        std::pow(q, static_cast<double>(n));
    total += term;
    const bool decreasing = static_cast<double>(n) * -std::log(q) > tail->power;
    if ((decreasing && term < 1e-18 * std::max(total, 1e-300)) || term == 0.0) break;
    if (n > f.order() + 10'000'000) return out;
  }
  out.tail = total;
  return out;
}

TruncatedSeries compose(const TruncatedSeries& g, const TruncatedSeries& omega) {
  if (std::abs(omega[0]) > 1e-15) {
    throw InvalidInput("compose: inner series must vanish at the origin");
  }
  const std::size_t order = std::min(g.order(), omega.order());
  const TruncatedSeries w = omega.truncated(order);
  std::size_t top = order;
  while (top > 0 && g[top] == Complex{}) --top;
  // Horner: g0 + w (g1 + w (g2 + ...)).
  TruncatedSeries acc = TruncatedSeries::monomial(0, order, g[top]);
  for (std::size_t k = top; k-- > 0;) {
    acc = multiply(w, acc);
    std::vector<Complex> c(acc.coeffs().begin(), acc.coeffs().end());
    c[0] += g[k];
    acc = TruncatedSeries(std::move(c));
  }
  return acc;
}

Complex evaluate(const TruncatedSeries& f, Complex z) {
  const auto c = f.coeffs();
  Complex acc{};
  for (std::size_t n = c.size(); n-- > 0;) acc = acc * z + c[n];
  return acc;
}

double sup_norm_estimate(const TruncatedSeries& f, std::size_t grid_points) {
  if (grid_points < 64) throw InvalidInput("sup_norm_estimate: need at least 64 grid points");
  double best = 0.0;
  for (std::size_t k = 0; k < grid_points; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(grid_points);
    best = std::max(best, std::abs(evaluate(f, std::polar(kSupNormRadius, theta))));
  }
  return best;
}

TruncatedSeries disc_automorphism(double a, std::size_t m, std::size_t order) {
  if (!(a >= 0.0 && a < 1.0)) throw DomainError("disc_automorphism: need 0 <= a < 1");
  std::vector<Complex> c(order + 1);
  if (m <= order) c[m] = a;
  double coeff = 1.0 - a * a;
  for (std::size_t n = m + 1; n <= order; ++n) {
    c[n] = coeff;
    coeff *= -a;
  }
  // |a_{m+k}| = (1-a^2) a^{k-1}, i.e. (1-a^2) a^{-(m+1)} a^n at index n.
  std::optional<TailBound> tail = TailBound{0.0, 0.0, 0.0};
  if (a > 0.0) {
    const double scale = (1.0 - a * a) / std::pow(a, static_cast<double>(m + 1));
    tail = std::isfinite(scale) ? std::optional(TailBound{scale, 0.0, a}) : std::nullopt;
  }
  return TruncatedSeries(std::move(c), tail);
}

}  // namespace bohrconv
