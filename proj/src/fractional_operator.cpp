#include "levybox/fractional_operator.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "levybox/errors.hpp"
#include "oscillatory_pv.hpp"

namespace levybox {

namespace {

constexpr double kPi = std::numbers::pi;

double parity_sign(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

void require_fractional_alpha(double alpha, const char* operation) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw InvalidArgument("params.alpha", std::string(operation) + " requires 1 < alpha < 2");
}

void require_mode_index(int m) {
  if (m < 1) throw InvalidArgument("m", "mode index must be >= 1");
}

// Cell moments of the kernel u^(nu-1) on [d, d+1] (units of h) against the
// two linear hat pieces: w0 weights the near node, w1 the far node.
struct CellWeights {
  std::vector<double> w0;
  std::vector<double> w1;
};

CellWeights product_weights(std::size_t cells, double nu) {
  const double mu = nu - 1.0;
  CellWeights cw{std::vector<double>(cells), std::vector<double>(cells)};
  for (std::size_t d = 0; d < cells; ++d) {
    const double dd = static_cast<double>(d);
    double total;
    double far;
    if (d == 0) {
      total = 1.0 / nu;
      far = 1.0 / (nu + 1.0);
    } else {
      // (d+1)^nu - d^nu without cancellation.
      total = std::pow(dd, nu) * std::expm1(nu * std::log1p(1.0 / dd)) / nu;
      far = boost::math::quadrature::gauss<double, 20>::integrate(
          [&](double s) { return std::pow(dd + s, mu) * s; }, 0.0, 1.0);
    }
    cw.w0[d] = total - far;
    cw.w1[d] = far;
  }
  return cw;
}

std::vector<Complex> second_difference(std::span<const Complex> v, double h) {
  const std::size_t n = v.size();
  std::vector<Complex> out(n);
  const double inv = 1.0 / (h * h);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv;
  out[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) * inv;
  out[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) * inv;
  return out;
}

GridFunction apply_core(const GridFunction& psi, const BoxParams& params) {
  const Grid& grid = psi.grid();
  const double h = grid.spacing();
  if (params.alpha == 2.0) {
    auto d2 = second_difference(psi.values(), h);
    const double scale = -params.hbar * params.hbar * params.d_alpha;
    for (auto& v : d2) v *= scale;
    return GridFunction(grid, std::move(d2));
  }
  const GridFunction smoothed = riesz_interval_integral(psi, params);
  auto d2 = second_difference(smoothed.values(), h);
  const double c = riesz_prefactor(params);
  for (auto& v : d2) v *= c;
  return GridFunction(grid, std::move(d2));
}

detail::PvIntegral pv_or_zero(double power, double z, double a, detail::Trig trig, const QuadratureSpec& quad) {
  if (a == 0.0) return {};
  return detail::pv_power_trig(power, z, a, trig, quad);
}

}  // namespace

double riesz_prefactor(const BoxParams& params) {
  params.validate();
  if (params.alpha == 2.0)
    throw InvalidArgument("params.alpha", "alpha = 2 is degenerate here; local branch required");
  const double a = params.alpha;
  return std::pow(params.hbar, a) * params.d_alpha / (2.0 * std::tgamma(2.0 - a) * std::cos(a * kPi / 2.0));
}

GridFunction riesz_interval_integral(const GridFunction& f, const BoxParams& params) {
  params.validate();
  require_fractional_alpha(params.alpha, "riesz_interval_integral");
  const Grid& grid = f.grid();
  const std::size_t n = grid.size();
  const double nu = 2.0 - params.alpha;
  const auto cw = product_weights(n - 1, nu);
  const double scale = std::pow(grid.spacing(), nu);

  GridFunction out(grid);
  for (std::size_t i = 0; i < n; ++i) {
    Complex sum = 0.0;
    for (std::size_t d = 0; i + d + 1 < n; ++d) sum += f[i + d] * cw.w0[d] + f[i + d + 1] * cw.w1[d];
    for (std::size_t d = 0; d < i; ++d) sum += f[i - d] * cw.w0[d] + f[i - d - 1] * cw.w1[d];
    out[i] = scale * sum;
  }
  return out;
}

OperatorApplication apply_operator_realspace(const GridFunction& psi, const BoxParams& params, double rel_tol) {
  params.validate();
  const Grid& grid = psi.grid();
  if (grid.half_width() != params.half_width)
    throw InvalidArgument("grid.half_width", "must equal params.half_width");
  if (!psi.satisfies_box_boundary())
    throw InvalidArgument("psi", "box wavefunction must vanish at both walls");
  if (!(grid.spacing() < params.half_width / 8.0))
    throw InvalidArgument("grid.n_points", "grid too coarse: need spacing < L/8");

  OperatorApplication out{apply_core(psi, params), {}, false, -1.0, {}};
  out.endpoint_values = {out.values[0], out.values[grid.size() - 1]};

  const std::size_t n = grid.size();
  if (n % 2 == 1 && (n + 1) / 2 >= 18) {
    const Grid coarse = grid.coarsened();
    GridFunction psi_c(coarse);
    for (std::size_t j = 0; j < coarse.size(); ++j) psi_c[j] = psi[2 * j];
    const GridFunction op_c = apply_core(psi_c, params);
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t j = 1; j + 1 < coarse.size(); ++j) {
      diff = std::max(diff, std::abs(out.values[2 * j] - op_c[j]));
      scale = std::max(scale, std::abs(out.values[2 * j]));
    }
    out.refinement_change = scale > 0.0 ? diff / scale : diff;
    if (out.refinement_change > rel_tol) {
      out.warnings.push_back("apply_operator_realspace: result changes by " +
                             std::to_string(out.refinement_change) +
                             " (relative) under 2x refinement, above rel_tol");
    }
  }
  return out;
}

Complex appendix_y_integral(int m, double k, const BoxParams& params) {
  params.validate();
  require_mode_index(m);
  const double L = params.half_width;
  const double z = m * kPi / L;
  const double delta_plus = (k - z) * L;   // kL = m pi + delta_plus
  const double delta_minus = (k + z) * L;  // kL = -m pi + delta_minus
  auto sinc = [](double d) {
    if (std::abs(d) < 1e-4) return 1.0 - d * d / 6.0 + d * d * d * d / 120.0;
    return std::sin(d) / d;
  };
  const Complex i2zL(0.0, 2.0 * z * L);
  if (std::abs(delta_plus) < 0.5) return i2zL * sinc(delta_plus) / (k + z);
  if (std::abs(delta_minus) < 0.5) return i2zL * sinc(delta_minus) / (k - z);
  return Complex(0.0, parity_sign(m) * 2.0 * z) * std::sin(k * L) / ((k + z) * (k - z));
}

AppendixKIntegral appendix_k_integral(int m, double x, const BoxParams& params, const QuadratureSpec& quad) {
  params.validate();
  quad.validate();
  require_mode_index(m);
  const double L = params.half_width;
  if (!(std::abs(x) <= L)) throw InvalidArgument("x", "must lie in [-L, L]");
  const double z = m * kPi / L;
  const auto left = pv_or_zero(params.alpha - 1.0, z, L - x, detail::Trig::Sine, quad);
  const auto right = pv_or_zero(params.alpha - 1.0, z, L + x, detail::Trig::Sine, quad);

  AppendixKIntegral out;
  out.value = Complex(0.0, (left.value + right.value) / kPi);
  out.quadrature_error = (left.quadrature_error + right.quadrature_error) / kPi;
  out.tail_bound = (left.tail_bound + right.tail_bound) / kPi;
  if (out.error_budget() > quad.abs_tol) {
    throw ToleranceFailure("appendix_k_integral",
                           "error budget " + std::to_string(out.error_budget()) + " exceeds abs_tol");
  }
  return out;
}

Complex appendix_residue_value(int m, double x, const BoxParams& params) {
  params.validate();
  require_mode_index(m);
  const double z = m * kPi / params.half_width;
  return Complex(0.0, parity_sign(m) * std::pow(z, params.alpha - 2.0) * std::cos(z * x));
}

EigenActionReport appendix_eigen_action_report(int m, const BoxParams& params, const QuadratureSpec& quad,
                                               std::size_t n_nodes) {
  params.validate();
  quad.validate();
  require_mode_index(m);
  if (n_nodes < 1) throw InvalidArgument("n_nodes", "must be >= 1");
  const double L = params.half_width;
  const double z = m * kPi / L;
  const double outer = parity_sign(m) * params.d_alpha * std::pow(params.hbar, params.alpha) * z / kPi;

  EigenActionReport rep;
  rep.m = m;
  rep.closed_form = params.d_alpha * std::pow(params.hbar * z, params.alpha);
  for (std::size_t j = 0; j < n_nodes; ++j) {
    const double x = -L + (static_cast<double>(j) + 0.5) * 2.0 * L / static_cast<double>(n_nodes);
    const double s = std::sin(z * x);
    if (std::abs(s) < 0.2) continue;
    // i d/dx of (i/pi)[S(L-x) + S(L+x)] is (1/pi)[S'(L-x) - S'(L+x)],
    // S'(a) = PV int k^alpha cos(ka) / (k^2 - z^2) dk.
    const auto left = detail::pv_power_trig(params.alpha, z, L - x, detail::Trig::Cosine, quad);
    const auto right = detail::pv_power_trig(params.alpha, z, L + x, detail::Trig::Cosine, quad);
    rep.nodes.push_back(x);
    rep.values.push_back(outer * (left.value - right.value) / s);
    rep.errors.push_back(std::abs(outer / s) * (left.quadrature_error + right.quadrature_error +
                                                left.tail_bound + right.tail_bound));
  }
  if (rep.values.empty()) throw InvalidArgument("n_nodes", "no usable interior nodes");
  double sum = 0.0;
  for (double v : rep.values) sum += v;
  rep.eigenvalue = sum / static_cast<double>(rep.values.size());
  const auto [lo, hi] = std::minmax_element(rep.values.begin(), rep.values.end());
  rep.spread = (*hi - *lo) / std::abs(rep.eigenvalue);
  for (double v : rep.values)
    rep.max_rel_deviation = std::max(rep.max_rel_deviation, std::abs(v - rep.closed_form) / rep.closed_form);
  return rep;
}

double appendix_eigen_action(int m, const BoxParams& params, const QuadratureSpec& quad) {
  const auto rep = appendix_eigen_action_report(m, params, quad);
  if (rep.spread > quad.rel_tol) {
    throw ToleranceFailure("appendix_eigen_action", "recovered eigenvalue varies across nodes by " +
                                                        std::to_string(rep.spread) + " (relative), above rel_tol");
  }
  return rep.eigenvalue;
}

}  // namespace levybox
