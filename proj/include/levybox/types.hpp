#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace levybox {

using Complex = std::complex<double>;

/// Physical configuration of the well: kinetic exponent alpha, generalized
/// diffusion coefficient D_alpha, action scale hbar and half width L (walls at +-L).
struct BoxParams {
  double alpha = 1.5;
  double d_alpha = 1.0;
  double hbar = 1.0;
  double half_width = 1.0;

  /// Throws InvalidArgument unless 1 < alpha <= 2 and the scales are positive.
  /// `prefix` is prepended to field names in error messages (e.g. "params").
  void validate(const std::string& prefix = "params") const;
};

/// Uniform grid over [-L, L] including both walls.
class Grid {
public:
  Grid(std::size_t n_points, double half_width);

  std::size_t size() const noexcept { return n_points_; }
  double half_width() const noexcept { return half_width_; }
  double spacing() const noexcept { return spacing_; }

  /// Node i; the last node is exactly +L.
  double node(std::size_t i) const noexcept;
  std::vector<double> nodes() const;

  /// Trapezoid weights for integrals over [-L, L].
  std::vector<double> trapezoid_weights() const;

  /// The grid with every second node. Requires an odd node count.
  Grid coarsened() const;

  bool operator==(const Grid& other) const noexcept = default;

private:
  std::size_t n_points_;
  double half_width_;
  double spacing_;
};

/// Complex samples on a Grid, one per node.
class GridFunction {
public:
  explicit GridFunction(Grid grid);
  GridFunction(Grid grid, std::vector<Complex> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }
  Complex operator[](std::size_t i) const noexcept { return values_[i]; }
  Complex& operator[](std::size_t i) noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  /// True when both endpoint samples are exactly zero (box boundary condition).
  bool satisfies_box_boundary() const noexcept;

  /// Trapezoid-rule integral of |f|^2.
  double norm_squared() const;

  /// Samples of a callable on the grid.
  template <typename F>
  static GridFunction sample(const Grid& grid, F&& f) {
    GridFunction out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) out.values_[i] = Complex(f(grid.node(i)));
    return out;
  }

private:
  Grid grid_;
  std::vector<Complex> values_;
};

/// Controls for oscillatory and singular integrals.
struct QuadratureSpec {
  double k_cutoff = 400.0;
  double eta = 1e-3;
  double abs_tol = 1e-9;
  double rel_tol = 1e-6;
  int max_subdivisions = 200000;

  void validate(const std::string& prefix = "quad") const;
};

/// Trapezoid inner product <f, g> = sum w_i conj(f_i) g_i.
Complex inner_product(const GridFunction& f, const GridFunction& g);

/// Largest |f_i - g_i| over all nodes (or only interior nodes when `interior_only`).
double max_abs_difference(const GridFunction& f, const GridFunction& g, bool interior_only = false);

}  // namespace levybox
