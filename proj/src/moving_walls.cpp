#include "levybox/moving_walls.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levybox/errors.hpp"

namespace levybox {

namespace {

constexpr double kPi = std::numbers::pi;

double grid_step(std::span<const double> e_grid) {
  if (e_grid.size() < 2) throw InvalidArgument("e_grid", "needs at least two points");
  const double step = (e_grid.back() - e_grid.front()) / static_cast<double>(e_grid.size() - 1);
  if (!(step > 0.0)) throw InvalidArgument("e_grid", "must be increasing");
  for (std::size_t i = 1; i < e_grid.size(); ++i) {
    if (std::abs(e_grid[i] - e_grid[i - 1] - step) > 1e-9 * step)
      throw InvalidArgument("e_grid", "must be uniformly spaced");
  }
  return step;
}

}  // namespace

void MovingWallParams::validate(const std::string& prefix) const {
  base.validate(prefix + ".base");
  if (!std::isfinite(epsilon) || epsilon < 0.0) throw InvalidArgument(prefix + ".epsilon", "must be >= 0");
  if (!(epsilon / base.half_width < 0.1))
    throw InvalidArgument(prefix + ".epsilon", "epsilon / L must be < 0.1 (adiabatic regime)");
  if (!std::isfinite(nu) || !(nu > 0.0)) throw InvalidArgument(prefix + ".nu", "must be > 0");
  if (base.hbar != 1.0) throw InvalidArgument(prefix + ".base.hbar", "moving walls use hbar = 1");
}

Complex trace_g0(double t, const BoxParams& params, int m_max) {
  params.validate();
  if (m_max < 1) throw InvalidArgument("m_max", "must be >= 1");
  if (!std::isfinite(t)) throw InvalidArgument("t", "must be finite");
  Complex s = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    const double e = params.d_alpha * std::pow(params.hbar * kPi * m / params.half_width, params.alpha);
    s += std::polar(1.0, -e * t / params.hbar);
  }
  return s;
}

DensityResult dos_static(std::span<const double> e_grid, const BoxParams& params, double sigma) {
  params.validate();
  if (!std::isfinite(sigma) || !(sigma > 0.0)) throw InvalidArgument("sigma", "must be > 0");
  const double step = grid_step(e_grid);
  DensityResult out;
  out.rho.assign(e_grid.size(), 0.0);
  if (sigma < 3.0 * step)
    out.warnings.push_back("dos_static: sigma is below 3 grid spacings; peaks are under-resolved");

  const double norm = params.hbar / (sigma * std::sqrt(2.0 * kPi));
  const double e_cut = e_grid.back() + 12.0 * sigma;
  for (int m = 1;; ++m) {
    const double level = params.d_alpha * std::pow(params.hbar * kPi * m / params.half_width, params.alpha);
    if (level > e_cut) break;
    ++out.levels;
    for (std::size_t i = 0; i < e_grid.size(); ++i) {
      const double u = (e_grid[i] - level) / sigma;
      out.rho[i] += norm * std::exp(-0.5 * u * u);
    }
  }
  for (std::size_t i = 1; i < e_grid.size(); ++i) out.mass += 0.5 * step * (out.rho[i] + out.rho[i - 1]);
  return out;
}

double quasienergy(int m, int n, double xi, const MovingWallParams& walls, QuasiOrder order) {
  walls.validate();
  if (m < 1) throw InvalidArgument("m", "must be >= 1");
  if (!(std::abs(xi) <= kPi)) throw InvalidArgument("xi", "must lie in [-pi, pi]");
  const auto& b = walls.base;
  const double shift = n * walls.nu;
  if (order == QuasiOrder::Exact)
    return shift + b.d_alpha * std::pow(kPi * m / (b.half_width + walls.epsilon * std::sin(xi)), b.alpha);
  const double level = b.d_alpha * std::pow(kPi * m / b.half_width, b.alpha);
  return shift + level -
         walls.epsilon * b.alpha * b.d_alpha * std::pow(kPi * m, b.alpha) * std::sin(xi) /
             std::pow(b.half_width, b.alpha + 1.0);
}

BandRecord band_edges(int m, int n, const MovingWallParams& walls) {
  BandRecord r;
  r.m = m;
  r.n = n;
  r.e_min = quasienergy(m, n, kPi / 2.0, walls, QuasiOrder::Exact);
  r.e_max = quasienergy(m, n, -kPi / 2.0, walls, QuasiOrder::Exact);
  r.center = 0.5 * (r.e_min + r.e_max);
  const auto& b = walls.base;
  r.half_width_first_order =
      walls.epsilon * b.alpha * b.d_alpha * std::pow(kPi * m, b.alpha) / std::pow(b.half_width, b.alpha + 1.0);
  return r;
}

DensityResult dos_bands(std::span<const double> e_grid, const MovingWallParams& walls, int n_lo, int n_hi, int m_max,
                        int xi_samples, QuasiOrder order) {
  walls.validate();
  if (xi_samples < 64) throw InvalidArgument("xi_samples", "must be >= 64");
  if (m_max < 1) throw InvalidArgument("m_max", "must be >= 1");
  if (n_hi < n_lo) throw InvalidArgument("n_range", "n_hi must be >= n_lo");
  const double step = grid_step(e_grid);
  const double lo_edge = e_grid.front() - 0.5 * step;
  const double hi_edge = e_grid.back() + 0.5 * step;

  DensityResult out;
  std::vector<double> counts(e_grid.size(), 0.0);
  std::vector<BandRecord> bands;
  const double per_sample = 1.0 / static_cast<double>(xi_samples);
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int m = 1; m <= m_max; ++m) {
      const BandRecord rec = band_edges(m, n, walls);
      if (rec.e_max < lo_edge || rec.e_min >= hi_edge) continue;
      bands.push_back(rec);
      ++out.levels;
      for (int j = 0; j < xi_samples; ++j) {
        const double xi = -kPi + (j + 0.5) * 2.0 * kPi / xi_samples;
        const double e = quasienergy(m, n, xi, walls, order);
        const double pos = (e - lo_edge) / step;
        if (pos < 0.0 || pos >= static_cast<double>(e_grid.size())) continue;
        counts[static_cast<std::size_t>(pos)] += per_sample;
      }
    }
  }
  out.rho.resize(e_grid.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.rho[i] = counts[i] / step;
    out.mass += counts[i];
  }

  std::sort(bands.begin(), bands.end(), [](const BandRecord& a, const BandRecord& b) { return a.e_min < b.e_min; });
  for (std::size_t i = 1; i < bands.size(); ++i) {
    if (bands[i].e_min < bands[i - 1].e_max) {
      out.warnings.push_back("dos_bands: band (m=" + std::to_string(bands[i].m) + ", n=" + std::to_string(bands[i].n) +
                             ") overlaps band (m=" + std::to_string(bands[i - 1].m) +
                             ", n=" + std::to_string(bands[i - 1].n) + ")");
    }
  }
  return out;
}

}  // namespace levybox
