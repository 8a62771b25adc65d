#pragma once

#include <span>
#include <string>
#include <vector>

#include "levybox/types.hpp"

namespace levybox {

/// Walls at +-(L + epsilon sin(nu t)); hbar = 1 throughout.
struct MovingWallParams {
  double epsilon = 0.0;
  double nu = 1.0;
  BoxParams base{};

  /// Requires epsilon / L < 0.1 and base.hbar == 1.
  void validate(const std::string& prefix = "walls") const;
};

struct BandRecord {
  int m = 1;
  int n = 0;
  double e_min = 0.0;
  double e_max = 0.0;
  double center = 0.0;
  double half_width_first_order = 0.0;
};

enum class QuasiOrder { Exact, First };

/// g0(t) = sum_{m=1}^{m_max} exp(-i D (hbar pi m / L)^alpha t / hbar). Every
/// term has modulus one, so the dropped tail is not bounded.
Complex trace_g0(double t, const BoxParams& params, int m_max);

struct DensityResult {
  std::vector<double> rho;
  double mass = 0.0;  // trapezoid integral of rho over the energy grid (static) or bin sum (bands)
  int levels = 0;     // levels or bands that contributed
  std::vector<std::string> warnings;
};

/// hbar sum_m N(E; E_m, sigma) over the odd levels E_m = D (hbar pi m / L)^alpha,
/// each a unit-mass Gaussian. Levels beyond max(e_grid) + 12 sigma are skipped.
DensityResult dos_static(std::span<const double> e_grid, const BoxParams& params, double sigma);

/// n nu + D (pi m / (L + epsilon sin xi))^alpha, or its first-order expansion in epsilon.
double quasienergy(int m, int n, double xi, const MovingWallParams& walls, QuasiOrder order);

/// Edges from the exact branch at xi = +-pi/2 and the first-order half-width
/// epsilon alpha D (pi m)^alpha / L^(alpha+1).
BandRecord band_edges(int m, int n, const MovingWallParams& walls);

/// Histogram of E_{m,n}(xi) over xi_samples midpoint samples of [-pi, pi] for
/// m = 1..m_max and n = n_lo..n_hi. e_grid holds uniformly spaced bin centers;
/// each band adds unit mass (density times bin width) to the bins it hits.
DensityResult dos_bands(std::span<const double> e_grid, const MovingWallParams& walls, int n_lo, int n_hi, int m_max,
                        int xi_samples, QuasiOrder order = QuasiOrder::Exact);

}  // namespace levybox
