#include "levybox/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levybox/errors.hpp"

namespace levybox {

namespace {

constexpr double kPi = std::numbers::pi;

void require_grid_matches(const Grid& grid, const BoxParams& params) {
  if (grid.half_width() != params.half_width)
    throw InvalidArgument("grid.half_width", "must equal params.half_width");
}

}  // namespace

std::string to_string(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

EigenMode make_mode(Parity parity, int index, const BoxParams& params) {
  params.validate();
  const double L = params.half_width;
  EigenMode mode{parity, index, 0.0, 0.0};
  if (parity == Parity::Odd) {
    if (index < 1) throw InvalidArgument("index", "odd modes start at m = 1");
    mode.wavenumber = index * kPi / L;
  } else {
    if (index < 0) throw InvalidArgument("index", "even modes start at m = 0");
    mode.wavenumber = (2 * index + 1) * kPi / (2.0 * L);
  }
  mode.energy = params.d_alpha * std::pow(params.hbar * mode.wavenumber, params.alpha);
  return mode;
}

double eigenvalue(Parity parity, int index, const BoxParams& params) {
  return make_mode(parity, index, params).energy;
}

double eigenfunction_value(const EigenMode& mode, double x, double half_width) {
  if (std::abs(x) >= half_width) return 0.0;
  const double norm = 1.0 / std::sqrt(half_width);
  return mode.parity == Parity::Odd ? norm * std::sin(mode.wavenumber * x) : norm * std::cos(mode.wavenumber * x);
}

GridFunction eigenfunction(const EigenMode& mode, const BoxParams& params, const Grid& grid) {
  require_grid_matches(grid, params);
  return GridFunction::sample(grid, [&](double x) { return eigenfunction_value(mode, x, params.half_width); });
}

std::vector<EigenMode> lowest_modes(const BoxParams& params, int per_parity) {
  if (per_parity < 1) throw InvalidArgument("m_max", "must be >= 1");
  std::vector<EigenMode> modes;
  modes.reserve(2 * static_cast<std::size_t>(per_parity));
  for (int m = 1; m <= per_parity; ++m) modes.push_back(make_mode(Parity::Odd, m, params));
  for (int m = 0; m < per_parity; ++m) modes.push_back(make_mode(Parity::Even, m, params));
  std::stable_sort(modes.begin(), modes.end(), [](const EigenMode& a, const EigenMode& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.parity == Parity::Odd && b.parity == Parity::Even;
  });
  return modes;
}

double SpectralState::norm_squared() const {
  double s = 0.0;
  for (const auto& e : entries) s += std::norm(e.coeff);
  return s;
}

SpectralState project(const GridFunction& psi0, const BoxParams& params, int m_max, double rel_tol) {
  params.validate();
  require_grid_matches(psi0.grid(), params);
  if (!psi0.satisfies_box_boundary())
    throw InvalidArgument("psi0", "initial state must vanish at both walls");

  SpectralState state{params, {}, 0.0, {}};
  double captured = 0.0;
  for (const auto& mode : lowest_modes(params, m_max)) {
    const Complex a = inner_product(eigenfunction(mode, params, psi0.grid()), psi0);
    state.entries.push_back({mode, a});
    captured += std::norm(a);
  }
  const double total = psi0.norm_squared();
  state.truncation_residual = total - captured;
  if (state.truncation_residual > rel_tol * total) {
    state.warnings.push_back("project: truncation residual " + std::to_string(state.truncation_residual) +
                             " exceeds rel_tol * ||psi0||^2");
  }
  return state;
}

SpectralState evolve(const SpectralState& state, double t) {
  SpectralState out = state;
  for (auto& e : out.entries) e.coeff *= std::polar(1.0, -e.mode.energy * t / state.params.hbar);
  return out;
}

GridFunction reconstruct(const SpectralState& state, const Grid& grid) {
  require_grid_matches(grid, state.params);
  GridFunction out(grid);
  const double L = state.params.half_width;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double x = grid.node(i);
    Complex s = 0.0;
    for (const auto& e : state.entries) s += e.coeff * eigenfunction_value(e.mode, x, L);
    out[i] = s;
  }
  return out;
}

}  // namespace levybox
