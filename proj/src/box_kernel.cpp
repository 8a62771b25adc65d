#include <cmath>
#include <numbers>

#include "levybox/errors.hpp"
#include "levybox/propagator.hpp"

namespace levybox {

namespace {

// Single-step box kernel on the grid. Every argument x_i -+ x_j + 2lL is a
// multiple of the spacing, so p is tabulated once on that lattice. The images
// spaced by 2L carry the sine modes sin(m pi x / L) only, and the factor 1/2
// normalizes them on [-L, L].
Eigen::MatrixXd box_kernel(const Grid& grid, const StableKernelParams& p, int l_max) {
  const auto n = static_cast<long>(grid.size());
  const long cells = n - 1;
  const double h = grid.spacing();
  const long q_max = (2 * static_cast<long>(l_max) + 2) * cells;
  std::vector<double> table(static_cast<std::size_t>(q_max + 1));
  for (long q = 0; q <= q_max; ++q) table[static_cast<std::size_t>(q)] = stable_density(static_cast<double>(q) * h, p);
  auto lookup = [&](long q) { return table[static_cast<std::size_t>(std::abs(q))]; };

  Eigen::MatrixXd k(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      double s = 0.0;
      for (long l = -l_max; l <= l_max; ++l) s += lookup(i - j + l * cells) - lookup(i + j - cells + l * cells);
      k(i, j) = 0.5 * s;
    }
  }
  return k;
}

// Two-sided mass of the free kernel beyond |x| = reach.
double tail_mass(const StableKernelParams& p, double reach) {
  const double c = p.k_coeff * p.t;
  if (p.alpha == 2.0) return std::erfc(reach / (2.0 * std::sqrt(c)));
  return 2.0 * c * std::tgamma(p.alpha) * std::sin(p.alpha * std::numbers::pi / 2.0) /
         (std::numbers::pi * std::pow(reach, p.alpha));
}

}  // namespace

BoxKernelComposition compose_box_kernel(int n_steps, double t, double alpha, double k_coeff, const Grid& grid,
                                        int l_max, double leak_tol) {
  if (n_steps < 1) throw InvalidArgument("n_steps", "must be >= 1");
  if (l_max < 1) throw InvalidArgument("l_max", "must be >= 1");
  const StableKernelParams full{alpha, k_coeff, t};
  full.validate();
  const StableKernelParams step{alpha, k_coeff, t / n_steps};

  BoxKernelComposition out;
  const Eigen::MatrixXd single = box_kernel(grid, step, l_max);
  out.direct = n_steps == 1 ? single : box_kernel(grid, full, l_max);

  const auto w = grid.trapezoid_weights();
  const Eigen::VectorXd weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<long>(w.size()));
  out.composed = single;
  for (int s = 1; s < n_steps; ++s) out.composed = out.composed * weights.asDiagonal() * single;

  out.residual = (out.composed - out.direct).cwiseAbs().maxCoeff();
  const long last = out.composed.rows() - 1;
  out.boundary_max = std::max(out.composed.row(0).cwiseAbs().maxCoeff(), out.composed.row(last).cwiseAbs().maxCoeff());
  out.min_same_side = INFINITY;
  for (long i = 1; i < last; ++i)
    for (long j = 1; j < last; ++j)
      if (grid.node(static_cast<std::size_t>(i)) * grid.node(static_cast<std::size_t>(j)) > 0.0)
        out.min_same_side = std::min(out.min_same_side, out.composed(i, j));

  out.leaked_mass = tail_mass(step, (2.0 * l_max - 1.0) * grid.half_width());
  if (out.leaked_mass > leak_tol) {
    out.warnings.push_back("compose_box_kernel: single-step mass beyond the retained windings is " +
                           std::to_string(out.leaked_mass) + ", above tolerance");
  }
  return out;
}

}  // namespace levybox
