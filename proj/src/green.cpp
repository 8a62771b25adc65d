#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "levybox/errors.hpp"
#include "levybox/propagator.hpp"
#include "levybox/spectral.hpp"

namespace levybox {

namespace {

constexpr double kPi = std::numbers::pi;

void require_inside(double x, double x0, double L) {
  if (!(std::abs(x) <= L)) throw InvalidArgument("x", "must lie in [-L, L]");
  if (!(std::abs(x0) <= L)) throw InvalidArgument("x0", "must lie in [-L, L]");
}

std::vector<EigenMode> sector_modes(const BoxParams& params, int per_parity, Sector sector) {
  if (sector == Sector::Both) return lowest_modes(params, per_parity);
  std::vector<EigenMode> modes;
  if (sector == Sector::Odd)
    for (int m = 1; m <= per_parity; ++m) modes.push_back(make_mode(Parity::Odd, m, params));
  else
    for (int m = 0; m < per_parity; ++m) modes.push_back(make_mode(Parity::Even, m, params));
  return modes;
}

// Gauss-Legendre 20 nodes and weights mapped onto [lo, hi], appended.
void append_panel(double lo, double hi, std::vector<double>& nodes, std::vector<double>& weights) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  const double c = 0.5 * (hi + lo);
  const double r = 0.5 * (hi - lo);
  for (std::size_t j = 0; j < GL::abscissa().size(); ++j) {
    const double a = GL::abscissa()[j];
    const double w = GL::weights()[j] * r;
    nodes.push_back(c - r * a);
    weights.push_back(w);
    if (a != 0.0) {
      nodes.push_back(c + r * a);
      weights.push_back(w);
    }
  }
}

}  // namespace

std::string to_string(GreenMethod m) {
  switch (m) {
    case GreenMethod::Spectral: return "spectral";
    case GreenMethod::Images: return "images";
    case GreenMethod::Alpha2Closed: return "alpha2_closed";
  }
  return "unknown";
}

std::string to_string(Sector s) {
  switch (s) {
    case Sector::Odd: return "odd";
    case Sector::Even: return "even";
    case Sector::Both: return "both";
  }
  return "unknown";
}

GreenEvaluation green_spectral(double x, double x0, double t, const BoxParams& params, int m_max, Sector sector,
                               double abs_tol) {
  params.validate();
  require_inside(x, x0, params.half_width);
  if (!std::isfinite(t)) throw InvalidArgument("t", "must be finite");
  if (m_max < 1) throw InvalidArgument("m_max", "must be >= 1");

  GreenEvaluation out{0.0, 0.0, GreenMethod::Spectral, sector, {}};
  const double L = params.half_width;
  if (std::abs(x) == L || std::abs(x0) == L) return out;

  const auto modes = sector_modes(params, m_max, sector);
  std::vector<Complex> partial;
  partial.reserve(modes.size());
  Complex s = 0.0;
  for (const auto& mode : modes) {
    s += std::polar(1.0, -mode.energy * t / params.hbar) * eigenfunction_value(mode, x, L) *
         eigenfunction_value(mode, x0, L);
    partial.push_back(s);
  }
  const std::size_t decade = std::max<std::size_t>(1, partial.size() / 10);
  Complex mean = 0.0;
  for (std::size_t i = partial.size() - decade; i < partial.size(); ++i) mean += partial[i];
  mean /= static_cast<double>(decade);
  double spread = 0.0;
  for (std::size_t i = partial.size() - decade; i < partial.size(); ++i)
    spread = std::max(spread, std::abs(partial[i] - mean));

  out.value = mean;
  out.error_budget = spread;
  if (spread > abs_tol)
    out.warnings.push_back("green_spectral: truncation estimate " + std::to_string(spread) + " exceeds abs_tol");
  return out;
}

GreenEvaluation green_spectral_damped(double x, double x0, double t, const BoxParams& params, double eta,
                                      Sector sector) {
  params.validate();
  require_inside(x, x0, params.half_width);
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("eta", "must be > 0");
  const double L = params.half_width;
  const double k_max = std::sqrt(39.2 / eta);  // e^{-eta k^2} < 1e-17 beyond
  const int per_parity = static_cast<int>(std::ceil(k_max * L / kPi)) + 1;

  GreenEvaluation out{0.0, 0.0, GreenMethod::Spectral, sector, {}};
  if (std::abs(x) == L || std::abs(x0) == L) return out;
  for (const auto& mode : sector_modes(params, per_parity, sector)) {
    const double damp = std::exp(-eta * mode.wavenumber * mode.wavenumber);
    out.value += damp * std::polar(1.0, -mode.energy * t / params.hbar) * eigenfunction_value(mode, x, L) *
                 eigenfunction_value(mode, x0, L);
  }
  out.error_budget = 1e-17 * static_cast<double>(per_parity) / L;
  return out;
}

Complex green_images_at_eta(double x, double x0, double t, const BoxParams& params, int l_max, double eta,
                            double* truncation) {
  params.validate();
  require_inside(x, x0, params.half_width);
  if (l_max < 1) throw InvalidArgument("l_max", "must be >= 1");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("eta", "must be > 0");
  const double L = params.half_width;
  const double a = params.alpha;
  const double omega_coeff = params.d_alpha * std::pow(params.hbar, a - 1.0) * t;
  const double s1 = x - x0;
  const double s2 = x + x0;

  // Nodes: graded near k = 0, where k^alpha is not smooth, then uniform
  // panels narrow enough to resolve the fastest phase.
  const double k_max = std::sqrt(40.0 / eta);
  const double freq = std::abs(omega_coeff) * a * std::pow(k_max, a - 1.0) + std::abs(s1) + std::abs(s2) +
                      2.0 * static_cast<double>(l_max) * L;
  const double width = std::min(0.5, 6.0 / freq);
  const auto panels = static_cast<std::size_t>(std::ceil(k_max / width));
  const double h = k_max / static_cast<double>(panels);
  std::vector<double> nodes;
  std::vector<double> weights;
  nodes.reserve(20 * (panels + 24));
  weights.reserve(20 * (panels + 24));
  double lo = h * std::ldexp(1.0, -24);
  append_panel(0.0, lo, nodes, weights);
  for (int j = 23; j >= 0; --j) {
    const double hi = h * std::ldexp(1.0, -j);
    append_panel(lo, hi, nodes, weights);
    lo = hi;
  }
  for (std::size_t p = 1; p < panels; ++p)
    append_panel(static_cast<double>(p) * h, static_cast<double>(p + 1) * h, nodes, weights);

  const int l_half = l_max / 2;
  Complex full = 0.0;
  Complex half = 0.0;
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    const double k = nodes[q];
    // 1 + 2 sum_{l=1}^{n} cos(2 k l L) by the Chebyshev recurrence.
    const double c1 = std::cos(2.0 * k * L);
    double prev = 1.0;
    double cur = c1;
    double dirichlet = 1.0 + 2.0 * c1;
    double dirichlet_half = l_half >= 1 ? dirichlet : 1.0;
    for (int l = 2; l <= l_max; ++l) {
      const double next = 2.0 * c1 * cur - prev;
      prev = cur;
      cur = next;
      dirichlet += 2.0 * cur;
      if (l == l_half) dirichlet_half = dirichlet;
    }
    const Complex phase =
        weights[q] * std::exp(-eta * k * k) * std::polar(1.0, -omega_coeff * std::pow(k, a));
    const double images = std::cos(k * s1) - std::cos(k * s2);
    full += phase * (images * dirichlet);
    half += phase * (images * dirichlet_half);
  }
  const double scale = 0.5 / kPi;
  if (truncation) *truncation = std::abs(full - half) * scale;
  return full * scale;
}

Alpha2Evaluation green_box_alpha2(double x, double x0, double t, double mass, int l_max, double half_width,
                                  double hbar) {
  if (!std::isfinite(t) || t == 0.0) throw InvalidArgument("t", "must be nonzero");
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("mass", "must be > 0");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw InvalidArgument("hbar", "must be > 0");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw InvalidArgument("half_width", "must be > 0");
  if (l_max < 1) throw InvalidArgument("l_max", "must be >= 1");
  require_inside(x, x0, half_width);

  const Complex prefactor = std::sqrt(Complex(mass, 0.0) / Complex(0.0, 8.0 * kPi * hbar * t));
  const double q = mass / (2.0 * hbar * t);
  auto pair = [&](int l) {
    const double a = x - x0 + 2.0 * l * half_width;
    const double b = x + x0 + 2.0 * l * half_width;
    return prefactor * (std::polar(1.0, q * a * a) - std::polar(1.0, q * b * b));
  };

  Complex raw = pair(0);
  Complex cesaro_sum = raw;
  Complex raw_half = raw;
  Complex cesaro_half = raw;
  const int l_half = l_max / 2;
  for (int n = 1; n <= l_max; ++n) {
    raw += pair(n) + pair(-n);
    cesaro_sum += raw;
    if (n == l_half) {
      raw_half = raw;
      cesaro_half = cesaro_sum / static_cast<double>(n + 1);
    }
  }
  const Complex cesaro = cesaro_sum / static_cast<double>(l_max + 1);

  Alpha2Evaluation out;
  out.raw = raw;
  out.raw_increment = std::abs(raw - raw_half);
  out.cesaro_increment = std::abs(cesaro - cesaro_half);
  out.averaged = {cesaro, out.cesaro_increment, GreenMethod::Alpha2Closed, Sector::Odd, {}};
  if (std::abs(x) == half_width || std::abs(x0) == half_width) {
    out.averaged.warnings.push_back("green_box_alpha2: wall point; truncated sum vanishes only to rounding");
  }
  return out;
}

GreenEvaluation green_images(double x, double x0, double t, const BoxParams& params, int l_max,
                             const QuadratureSpec& quad, ImageSeries* series) {
  params.validate();
  quad.validate();
  require_inside(x, x0, params.half_width);
  if (l_max < 10) throw InvalidArgument("l_max", "image sum needs at least 10 windings");
  if (!std::isfinite(t)) throw InvalidArgument("t", "must be finite");

  if (params.alpha == 2.0) {
    const double mass = 1.0 / (2.0 * params.d_alpha);
    auto closed = green_box_alpha2(x, x0, t, mass, l_max, params.half_width, params.hbar);
    GreenEvaluation out = closed.averaged;
    out.method = GreenMethod::Images;
    return out;
  }

  const double base = quad.eta * (params.half_width / kPi) * (params.half_width / kPi);
  const std::array<double, 3> etas{10.0 * base, base, 0.1 * base};
  std::array<Complex, 3> values;
  double truncation = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    double tr = 0.0;
    values[j] = green_images_at_eta(x, x0, t, params, l_max, etas[j], &tr);
    truncation = std::max(truncation, tr);
  }
  if (series) {
    series->etas.assign(etas.begin(), etas.end());
    series->values.assign(values.begin(), values.end());
  }
  const double quadrature = 1e-13 * (1.0 + 2.0 * l_max);
  const double d01 = std::abs(values[0] - values[1]);
  const double d12 = std::abs(values[1] - values[2]);
  // Below the quadrature floor the eta dependence is noise, not a trend.
  if (!(d12 < d01) && std::max(d01, d12) > quadrature) {
    throw ToleranceFailure("green_images", "eta extrapolation is non-monotone (|dG| " + std::to_string(d01) +
                                               " then " + std::to_string(d12) + ")");
  }

  // Lagrange extrapolation to eta = 0: quadratic through all three, linear
  // through the two smallest.
  const auto& e = etas;
  const Complex quadratic = values[0] * (e[1] * e[2]) / ((e[0] - e[1]) * (e[0] - e[2])) +
                            values[1] * (e[0] * e[2]) / ((e[1] - e[0]) * (e[1] - e[2])) +
                            values[2] * (e[0] * e[1]) / ((e[2] - e[0]) * (e[2] - e[1]));
  const Complex linear = (values[2] * e[1] - values[1] * e[2]) / (e[1] - e[2]);

  GreenEvaluation out{quadratic, 0.0, GreenMethod::Images, Sector::Odd, {}};
  const double extrapolation = std::abs(quadratic - linear);
  out.error_budget = truncation + extrapolation + quadrature;
  return out;
}

}  // namespace levybox
