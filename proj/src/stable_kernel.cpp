#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "levybox/errors.hpp"
#include "levybox/propagator.hpp"

namespace levybox {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadratureWindow = 40.0;  // in units of the kernel scale

// (1/pi) int_0^inf cos(u x) e^{-u^alpha} du for 0 <= x <= kQuadratureWindow.
double scaled_density_quadrature(double x, double alpha) {
  const double upper = std::pow(45.0, 1.0 / alpha);
  auto f = [&](double u) { return std::cos(u * x) * std::exp(-std::pow(u, alpha)); };
  const double width = std::min(1.0, x > 0.0 ? kPi / x : 1.0);
  const auto panels = static_cast<long>(std::ceil(upper / width));
  const double h = upper / static_cast<double>(panels);

  // u^alpha is not smooth at the origin.
  boost::math::quadrature::tanh_sinh<double> ts;
  double sum = ts.integrate(f, 0.0, h, 1e-15);
  for (long p = 1; p < panels; ++p) {
    const double lo = static_cast<double>(p) * h;
    sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, lo + h, 0, 1e-15);
  }
  return sum / kPi;
}

// (1/pi) sum_n (-1)^(n+1) Gamma(n alpha + 1) / n! sin(n alpha pi / 2) x^(-n alpha - 1).
// Convergent for alpha < 1, asymptotic for alpha > 1.
bool scaled_density_series(double x, double alpha, double& result) {
  double sum = 0.0;
  double previous = INFINITY;
  const double log_x = std::log(x);
  for (int n = 1; n < 400; ++n) {
    const double log_mag = std::lgamma(n * alpha + 1.0) - std::lgamma(n + 1.0) - (n * alpha + 1.0) * log_x;
    const double mag = std::exp(log_mag);
    const double term = ((n % 2 == 1) ? 1.0 : -1.0) * mag * std::sin(n * alpha * kPi / 2.0);
    sum += term;
    if (mag < 1e-17 * std::abs(sum) && n > 1) {
      result = sum / kPi;
      return true;
    }
    if (mag > previous && alpha > 1.0) return false;  // asymptotic series started to diverge
    previous = mag;
  }
  return false;
}

}  // namespace

void StableKernelParams::validate() const {
  if (!std::isfinite(alpha) || !(alpha > 0.0 && alpha <= 2.0))
    throw InvalidArgument("alpha", "stable kernel exponent must lie in (0, 2]");
  if (!std::isfinite(k_coeff) || !(k_coeff > 0.0)) throw InvalidArgument("k_coeff", "must be > 0");
  if (!std::isfinite(t) || !(t > 0.0)) throw InvalidArgument("t", "must be > 0");
}

double StableKernelParams::scale() const { return std::pow(k_coeff * t, 1.0 / alpha); }

double stable_density(double x, const StableKernelParams& p) {
  p.validate();
  const double scale = p.scale();
  const double xs = std::abs(x) / scale;
  if (!std::isfinite(xs)) throw InvalidArgument("x", "must be finite");
  if (xs <= kQuadratureWindow) return scaled_density_quadrature(xs, p.alpha) / scale;
  if (p.alpha == 2.0) return 0.0;
  double value = 0.0;
  if (!scaled_density_series(xs, p.alpha, value))
    throw ToleranceFailure("stable_density", "x = " + std::to_string(x) + " is outside the reliable window");
  return value / scale;
}

std::vector<double> periodic_stable_density(std::span<const long> half_steps, std::size_t n_cells, double period,
                                            const StableKernelParams& p) {
  p.validate();
  if (n_cells < 2) throw InvalidArgument("n_cells", "must be >= 2");
  const double c = p.k_coeff * p.t;
  // Modes until e^{-c k^alpha} < 1e-18.
  const double k_max = std::pow(41.5 / c, 1.0 / p.alpha);
  const auto modes = static_cast<std::size_t>(std::ceil(k_max * period / (2.0 * kPi)));
  if (modes >= n_cells / 2)
    throw ToleranceFailure("periodic_stable_density", "window under-resolved: kernel needs " +
                                                          std::to_string(modes) + " Fourier modes");

  // cos(2 pi j r / (2 N)) from a table indexed by (j r) mod 2N.
  const std::size_t table_size = 2 * n_cells;
  std::vector<double> cos_table(table_size);
  for (std::size_t r = 0; r < table_size; ++r)
    cos_table[r] = std::cos(2.0 * kPi * static_cast<double>(r) / static_cast<double>(table_size));
  std::vector<double> weight(modes + 1);
  for (std::size_t j = 1; j <= modes; ++j)
    weight[j] = 2.0 * std::exp(-c * std::pow(2.0 * kPi * static_cast<double>(j) / period, p.alpha));

  std::vector<double> out(half_steps.size());
  const auto ts = static_cast<long>(table_size);
  for (std::size_t i = 0; i < half_steps.size(); ++i) {
    const long r = ((half_steps[i] % ts) + ts) % ts;
    double s = 1.0;
    long idx = 0;
    for (std::size_t j = 1; j <= modes; ++j) {
      idx += r;
      if (idx >= ts) idx -= ts;
      s += weight[j] * cos_table[static_cast<std::size_t>(idx)];
    }
    out[i] = s / period;
  }
  return out;
}

double chapman_kolmogorov_residual(double alpha, double t, const Grid& window, double k_coeff) {
  const StableKernelParams full{alpha, k_coeff, t};
  const StableKernelParams half{alpha, k_coeff, 0.5 * t};
  full.validate();
  const std::size_t n = window.size();
  const double h = window.spacing();
  const double period = static_cast<double>(n) * h;

  // Nodes sit at (2i - (n-1)) h/2; lattice offsets d_k = k h at 2k half steps.
  std::vector<long> node_steps(n);
  std::vector<long> lattice_steps(n);
  for (std::size_t i = 0; i < n; ++i) {
    node_steps[i] = 2 * static_cast<long>(i) - static_cast<long>(n - 1);
    lattice_steps[i] = 2 * static_cast<long>(i);
  }
  const auto p_full = periodic_stable_density(node_steps, n, period, full);
  const auto p_half = periodic_stable_density(node_steps, n, period, half);
  const auto p_half_lattice = periodic_stable_density(lattice_steps, n, period, half);

  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double conv = 0.0;
    // x_i - x_j = (i - j) h, wrapped onto the period.
    for (std::size_t j = 0; j <= i; ++j) conv += p_half[j] * p_half_lattice[i - j];
    for (std::size_t j = i + 1; j < n; ++j) conv += p_half[j] * p_half_lattice[n + i - j];
    residual += std::abs(p_full[i] - h * conv);
  }
  return residual * h;
}

}  // namespace levybox
