#pragma once

#include <cstddef>
#include <vector>

namespace bohrconv {

/// Principal real branch of Lambert W (the one with W(x) >= -1), x >= -1/e.
/// Throws DomainError below the branch point.
double lambert_w(double x);

/// W(x)/x, continuous through x = 0 where it equals 1.
double lambert_w_over_x(double x);

/// Li_2(x) = sum x^n / n^2 for x in [0, 1].
double dilog(double x);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
double pochhammer(double a, std::size_t n);

/// Binomial coefficient C(n, k) by the multiplicative recurrence.
double binomial(std::size_t n, std::size_t k);

/// Parameters of the Gauss function F(a,b,c,z) = sum gamma_n z^n,
/// gamma_n = (a)_n (b)_n / ((c)_n n!).
struct HypergeometricParams {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
};

/// gamma_0..gamma_N via gamma_{n+1} = gamma_n (a+n)(b+n) / ((c+n)(1+n)).
/// Throws InvalidInput if a parameter is <= -1 or some gamma_n < 0.
std::vector<double> hypergeometric_coeffs(const HypergeometricParams& p, std::size_t order);

}  // namespace bohrconv
