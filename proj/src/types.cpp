#include "levybox/types.hpp"

#include <algorithm>
#include <cmath>

#include "levybox/errors.hpp"

namespace levybox {

namespace {

std::string join(const std::string& prefix, const char* field) {
  return prefix.empty() ? std::string(field) : prefix + "." + field;
}

void require_finite(double v, const std::string& field) {
  if (!std::isfinite(v)) throw InvalidArgument(field, "must be finite");
}

}  // namespace

void BoxParams::validate(const std::string& prefix) const {
  require_finite(alpha, join(prefix, "alpha"));
  if (!(alpha > 1.0 && alpha <= 2.0))
    throw InvalidArgument(join(prefix, "alpha"), "must lie in (1, 2]");
  require_finite(d_alpha, join(prefix, "d_alpha"));
  if (!(d_alpha > 0.0)) throw InvalidArgument(join(prefix, "d_alpha"), "must be > 0");
  require_finite(hbar, join(prefix, "hbar"));
  if (!(hbar > 0.0)) throw InvalidArgument(join(prefix, "hbar"), "must be > 0");
  require_finite(half_width, join(prefix, "half_width"));
  if (!(half_width > 0.0)) throw InvalidArgument(join(prefix, "half_width"), "must be > 0");
}

Grid::Grid(std::size_t n_points, double half_width) : n_points_(n_points), half_width_(half_width) {
  if (n_points < 3) throw InvalidArgument("grid.n_points", "must be >= 3");
  if (!std::isfinite(half_width) || !(half_width > 0.0))
    throw InvalidArgument("grid.half_width", "must be finite and > 0");
  spacing_ = 2.0 * half_width / static_cast<double>(n_points - 1);
}

double Grid::node(std::size_t i) const noexcept {
  if (i + 1 == n_points_) return half_width_;
  // Mirror the lower half so nodes are exactly symmetric about 0.
  const std::size_t j = n_points_ - 1 - i;
  if (j < i) return half_width_ - static_cast<double>(j) * spacing_;
  return -half_width_ + static_cast<double>(i) * spacing_;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> out(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) out[i] = node(i);
  return out;
}

std::vector<double> Grid::trapezoid_weights() const {
  std::vector<double> w(n_points_, spacing_);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

Grid Grid::coarsened() const {
  if (n_points_ % 2 == 0 || n_points_ < 5)
    throw InvalidArgument("grid.n_points", "coarsening needs an odd node count >= 5");
  return Grid((n_points_ + 1) / 2, half_width_);
}

GridFunction::GridFunction(Grid grid) : grid_(grid), values_(grid.size()) {}

GridFunction::GridFunction(Grid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw InvalidArgument("values", "length must equal grid.n_points");
}

bool GridFunction::satisfies_box_boundary() const noexcept {
  return values_.front() == Complex(0.0) && values_.back() == Complex(0.0);
}

double GridFunction::norm_squared() const {
  const auto w = grid_.trapezoid_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += w[i] * std::norm(values_[i]);
  return s;
}

void QuadratureSpec::validate(const std::string& prefix) const {
  if (!std::isfinite(k_cutoff) || !(k_cutoff > 0.0))
    throw InvalidArgument(join(prefix, "k_cutoff"), "must be finite and > 0");
  if (!std::isfinite(eta) || eta < 0.0) throw InvalidArgument(join(prefix, "eta"), "must be >= 0");
  if (!(abs_tol > 0.0 && abs_tol < 1.0))
    throw InvalidArgument(join(prefix, "abs_tol"), "must lie in (0, 1)");
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw InvalidArgument(join(prefix, "rel_tol"), "must lie in (0, 1)");
  if (max_subdivisions < 1) throw InvalidArgument(join(prefix, "max_subdivisions"), "must be >= 1");
}

Complex inner_product(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw InvalidArgument("grid", "inner product of functions on different grids");
  const auto w = f.grid().trapezoid_weights();
  Complex s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * std::conj(f[i]) * g[i];
  return s;
}

double max_abs_difference(const GridFunction& f, const GridFunction& g, bool interior_only) {
  if (!(f.grid() == g.grid())) throw InvalidArgument("grid", "comparison of functions on different grids");
  const std::size_t lo = interior_only ? 1 : 0;
  const std::size_t hi = interior_only ? f.size() - 1 : f.size();
  double m = 0.0;
  for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

}  // namespace levybox
