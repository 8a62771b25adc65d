#include "oscillatory_pv.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "levybox/errors.hpp"

namespace levybox::detail {

namespace {

constexpr int kIbpTerms = 6;

double trig_of(Trig trig, double x) { return trig == Trig::Sine ? std::sin(x) : std::cos(x); }

// j-th derivative of g(k) = k^power / (k^2 - z^2) for k >> z, from the
// expansion g = sum_i z^(2i) k^(power - 2 - 2i).
double g_derivative(double power, double z, double k, int j) {
  double sum = 0.0;
  double zpow = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double q = power - 2.0 - 2.0 * i;
    double falling = 1.0;
    for (int s = 0; s < j; ++s) falling *= (q - s);
    const double term = zpow * falling * std::pow(k, q - j);
    sum += term;
    if (std::abs(term) <= 1e-20 * std::abs(sum) && i > 0) break;
    zpow *= z * z;
  }
  return sum;
}

// Adaptive Gauss-Kronrod on [lo, hi]; boost reports the error of the rule on
// [-1, 1], so it is rescaled to the panel here.
template <typename F>
double gk(F&& f, double lo, double hi, double& error) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 6, 1e-14, &err);
  error += err * std::max(1.0, 0.5 * (hi - lo));
  return v;
}

}  // namespace

PvIntegral pv_power_trig(double power, double z, double a, Trig trig, const QuadratureSpec& quad) {
  using boost::math::quadrature::tanh_sinh;
  if (!(a > 0.0) || !(z > 0.0)) throw InvalidArgument("pv_power_trig", "requires a > 0 and z > 0");
  if (!(power < 3.0)) throw InvalidArgument("pv_power_trig", "integrand must decay (power < 3)");

  PvIntegral out;
  auto integrand = [&](double k) { return std::pow(k, power) * trig_of(trig, k * a) / ((k - z) * (k + z)); };

  // [0, z/2]: algebraic endpoint behaviour at k = 0.
  {
    tanh_sinh<double> ts;
    double err = 0.0;
    out.value += ts.integrate(integrand, 0.0, 0.5 * z, 1e-14, &err);
    out.quadrature_error += err;
  }

  // [z/2, 3z/2]: subtract the numerator at the pole.
  {
    const double phi_z = std::pow(z, power) * trig_of(trig, z * a);
    auto regular = [&](double k) {
      const double phi = std::pow(k, power) * trig_of(trig, k * a);
      return (phi - phi_z) / ((k - z) * (k + z));
    };
    out.value += gk(regular, 0.5 * z, z, out.quadrature_error);
    out.value += gk(regular, z, 1.5 * z, out.quadrature_error);
    out.value += phi_z * std::log(3.0 / 5.0) / (2.0 * z);
  }

  // [3z/2, K]: panels no wider than half an oscillation period.
  const double cutoff = std::max({quad.k_cutoff, 8.0 * z, 60.0 / a});
  out.cutoff = cutoff;
  {
    const double width = std::min(std::numbers::pi / a, 0.5 * z);
    const double span = cutoff - 1.5 * z;
    const auto panels = static_cast<long>(std::ceil(span / width));
    if (panels > quad.max_subdivisions)
      throw ToleranceFailure("pv_power_trig", "k-range needs " + std::to_string(panels) +
                                                  " panels, above max_subdivisions");
    const double h = span / static_cast<double>(panels);
    for (long p = 0; p < panels; ++p) {
      const double lo = 1.5 * z + static_cast<double>(p) * h;
      const double hi = (p + 1 == panels) ? cutoff : lo + h;
      out.value += gk(integrand, lo, hi, out.quadrature_error);
    }
  }

  // Tail: int_K^inf g(k) e^{ika} dk = -e^{iKa} sum_j (-1)^j g^(j)(K) / (ia)^(j+1) + R,
  // |R| <= |g^(n-1)(K)| / a^n.
  {
    const Complex ia(0.0, a);
    Complex series = 0.0;
    Complex ia_pow = ia;
    double sign = 1.0;
    for (int j = 0; j < kIbpTerms; ++j) {
      series += sign * g_derivative(power, z, cutoff, j) / ia_pow;
      ia_pow *= ia;
      sign = -sign;
    }
    const Complex tail = -std::polar(1.0, cutoff * a) * series;
    out.value += trig == Trig::Sine ? tail.imag() : tail.real();
    out.tail_bound = std::abs(g_derivative(power, z, cutoff, kIbpTerms - 1)) / std::pow(a, kIbpTerms);
  }
  return out;
}

}  // namespace levybox::detail
