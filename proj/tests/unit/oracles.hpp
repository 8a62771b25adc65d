#pragma once

// Independent reference values used only by the tests.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// int_0^inf u^p e^{-u a} / (u^2 + z^2) du
inline double laplace_weight(double p, double z, double a) {
  boost::math::quadrature::exp_sinh<double> es;
  return es.integrate([&](double u) { return std::pow(u, p) * std::exp(-u * a) / (u * u + z * z); }, 1e-14);
}

// PV int_0^inf k^(alpha-1) sin(k a) / (k^2 - z^2) dk by rotating the contour
// onto the imaginary axis: pole half-residue plus a Laplace integral.
inline double pv_sine(double alpha, double z, double a) {
  return 0.5 * pi * std::pow(z, alpha - 2.0) * std::cos(z * a) -
         std::sin(alpha * pi / 2.0) * laplace_weight(alpha - 1.0, z, a);
}

// (i/pi)[S(L - x) + S(L + x)] for |x| < L.
inline std::complex<double> appendix_k(int m, double x, double alpha, double L) {
  const double z = m * pi / L;
  return {0.0, (pv_sine(alpha, z, L - x) + pv_sine(alpha, z, L + x)) / pi};
}

// Exact action of the interval operator on sin(m pi x / L) (unnormalized).
inline double true_action_on_sine(int m, double x, double alpha, double D, double hbar, double L) {
  const double z = m * pi / L;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double k = laplace_weight(alpha, z, L - x) - laplace_weight(alpha, z, L + x);
  return D * std::pow(hbar, alpha) *
         (std::pow(z, alpha) * std::sin(z * x) + sign * z * std::sin(alpha * pi / 2.0) / pi * k);
}

// sum_n c / (pi (c^2 + (x + nP)^2))
inline double periodized_cauchy(double x, double c, double P) {
  const double u = 2.0 * pi * c / P;
  return std::sinh(u) / (P * (std::cosh(u) - std::cos(2.0 * pi * x / P)));
}

// sum_n exp(-(x + nP)^2 / (4c)) / sqrt(4 pi c), summed in real space.
inline double periodized_gaussian(double x, double c, double P) {
  double s = 0.0;
  for (int n = -50; n <= 50; ++n) {
    const double y = x + n * P;
    s += std::exp(-y * y / (4.0 * c));
  }
  return s / std::sqrt(4.0 * pi * c);
}

// (1/pi) int_0^inf cos(k x) e^{-c k^alpha} dk by Ooura's double-exponential
// Fourier rule; independent of the library's panel quadrature.
inline double stable_density_ooura(double x, double alpha, double c) {
  if (x == 0.0) {
    return std::tgamma(1.0 + 1.0 / alpha) / (pi * std::pow(c, 1.0 / alpha));
  }
  static boost::math::quadrature::ooura_fourier_cos<double> integrator(1e-14, 12);
  const auto [value, err] = integrator.integrate([&](double k) { return std::exp(-c * std::pow(k, alpha)); }, std::abs(x));
  return value / pi;
}

// int_{-L}^{L} e^{iky} sin(z y) dy by adaptive Gauss-Kronrod.
inline std::complex<double> y_integral(double k, double z, double L) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double re = GK::integrate([&](double y) { return std::cos(k * y) * std::sin(z * y); }, -L, L, 20, 1e-14);
  const double im = GK::integrate([&](double y) { return std::sin(k * y) * std::sin(z * y); }, -L, L, 20, 1e-14);
  return {re, im};
}

}  // namespace oracle
