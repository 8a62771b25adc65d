#include "levybox/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include "levybox/errors.hpp"
#include "levybox/fractional_operator.hpp"

namespace levybox {

namespace {

constexpr double kAppendixTolerance = 1e-6;

void add_warnings(CommandOutput& out, const std::vector<std::string>& ws) {
  for (const auto& w : ws)
    if (std::find(out.warnings.begin(), out.warnings.end(), w) == out.warnings.end()) out.warnings.push_back(w);
}

void track(CommandOutput& out, const std::string& key, double value) {
  auto [it, inserted] = out.error_budgets.emplace(key, value);
  if (!inserted) it->second = std::max(it->second, value);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

CommandOutput run_eigen(const RunConfig& cfg) {
  CommandOutput out{&schemas::eigen(), {}, {}, {}, {}};
  for (const auto& mode : lowest_modes(cfg.params, cfg.m_max))
    out.rows.push_back({to_string(mode.parity), static_cast<long>(mode.index), mode.wavenumber, mode.energy});
  return out;
}

CommandOutput run_evolve(const RunConfig& cfg) {
  CommandOutput out{&schemas::evolve(), {}, {}, {}, {}};
  const double L = cfg.params.half_width;
  const auto& o = cfg.evolve;
  GridFunction psi0 = GridFunction::sample(cfg.grid, [&](double x) {
    const double u = (x - o.center) / o.width;
    return (L * L - x * x) * std::exp(-0.5 * u * u);
  });
  const double norm = std::sqrt(psi0.norm_squared());
  if (!(norm > 0.0)) throw InvalidArgument("evolve.width", "initial state vanishes on the grid");
  std::vector<Complex> scaled(psi0.values().begin(), psi0.values().end());
  for (auto& v : scaled) v /= norm;
  const SpectralState state = project(GridFunction(cfg.grid, std::move(scaled)), cfg.params, cfg.m_max);
  track(out, "project.truncation_residual", std::abs(state.truncation_residual));
  add_warnings(out, state.warnings);
  for (double t : o.times) {
    const GridFunction psi = reconstruct(evolve(state, t), cfg.grid);
    for (std::size_t i = 0; i < cfg.grid.size(); ++i)
      out.rows.push_back({cfg.grid.node(i), psi[i].real(), psi[i].imag(), t});
  }
  return out;
}

CommandOutput run_green(const RunConfig& cfg) {
  CommandOutput out{&schemas::green(), {}, {}, {}, {}};
  const auto& o = cfg.green;
  const double L = cfg.params.half_width;
  const std::vector<double> xs = o.x.empty() ? Grid(41, L).nodes() : o.x;
  std::size_t noisy = 0;
  for (double x : xs) {
    GreenEvaluation g;
    std::string key;
    switch (o.method) {
      case GreenRoute::Spectral:
        g = green_spectral(x, o.x0, o.t, cfg.params, cfg.m_max, o.sector, cfg.quad.abs_tol);
        key = "green_spectral";
        break;
      case GreenRoute::Images:
        g = green_images(x, o.x0, o.t, cfg.params, cfg.l_max, cfg.quad);
        key = "green_images";
        break;
      case GreenRoute::Alpha2:
        g = green_box_alpha2(x, o.x0, o.t, o.mass, cfg.l_max, L, cfg.params.hbar).averaged;
        key = "green_box_alpha2";
        break;
    }
    track(out, key, g.error_budget);
    if (o.method == GreenRoute::Spectral && !g.warnings.empty()) ++noisy;
    else add_warnings(out, g.warnings);
    out.rows.push_back(
        {x, o.x0, o.t, g.value.real(), g.value.imag(), g.error_budget, to_string(g.method), to_string(g.sector)});
  }
  if (noisy > 0) {
    out.warnings.push_back("green: truncation estimate exceeds abs_tol at " + std::to_string(noisy) + " of " +
                           std::to_string(xs.size()) + " points");
  }
  return out;
}

CommandOutput run_apply_op(const RunConfig& cfg) {
  CommandOutput out{&schemas::apply_op(), {}, {}, {}, {}};
  const EigenMode mode = make_mode(cfg.apply_op.parity, cfg.apply_op.m, cfg.params);
  const GridFunction psi = eigenfunction(mode, cfg.params, cfg.grid);
  const auto res = apply_operator_realspace(psi, cfg.params);
  if (res.refinement_change >= 0.0) track(out, "apply_operator_realspace.refinement_change", res.refinement_change);
  add_warnings(out, res.warnings);
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    out.rows.push_back(
        {cfg.grid.node(i), res.values[i].real(), res.values[i].imag(), mode.energy * psi[i].real()});
  }
  return out;
}

CommandOutput run_appendix(const RunConfig& cfg) {
  CommandOutput out{&schemas::appendix(), {}, {}, {}, {}};
  double worst = 0.0;
  for (double alpha : cfg.appendix.alpha) {
    BoxParams p = cfg.params;
    p.alpha = alpha;
    for (int m : cfg.appendix.m) {
      for (double xu : cfg.appendix.x) {
        const double x = xu * p.half_width;
        const auto k = appendix_k_integral(m, x, p, cfg.quad);
        const Complex residue = appendix_residue_value(m, x, p);
        const double diff = std::abs(k.value - residue);
        worst = std::max(worst, diff);
        track(out, "appendix_k_integral", k.error_budget());
        out.rows.push_back({static_cast<long>(m), alpha, x, k.value.imag(), residue.imag(), diff, k.error_budget()});
      }
    }
  }
  out.error_budgets["appendix.max_abs_diff"] = worst;
  if (worst >= kAppendixTolerance) {
    out.failure = "verify-appendix: max |quadrature - residue| = " + std::to_string(worst) + " exceeds 1e-6";
  }
  return out;
}

CommandOutput run_ck(const RunConfig& cfg) {
  CommandOutput out{&schemas::ck(), {}, {}, {}, {}};
  const Grid window(static_cast<std::size_t>(cfg.ck.n_points), cfg.ck.half_width);
  for (double alpha : cfg.ck.alpha) {
    const double r = chapman_kolmogorov_residual(alpha, cfg.ck.t, window, cfg.ck.k_coeff);
    track(out, "chapman_kolmogorov_residual", r);
    out.rows.push_back({alpha, cfg.ck.t, static_cast<long>(cfg.ck.n_points), cfg.ck.half_width, r});
  }
  return out;
}

CommandOutput run_dos(const RunConfig& cfg) {
  CommandOutput out{&schemas::dos(), {}, {}, {}, {}};
  const auto& o = cfg.dos;
  const auto grid = linspace(o.e_min, o.e_max, o.n_points);
  DensityResult d;
  if (cfg.walls) {
    d = dos_bands(grid, cfg.walls->params, cfg.walls->n_lo, cfg.walls->n_hi, cfg.m_max, o.xi_samples, o.order);
    track(out, "dos_bands.mass_deficit", std::abs(d.levels - d.mass));
  } else {
    d = dos_static(grid, cfg.params, o.sigma);
  }
  add_warnings(out, d.warnings);
  for (std::size_t i = 0; i < grid.size(); ++i) out.rows.push_back({grid[i], d.rho[i]});
  return out;
}

CommandOutput run_walls(const RunConfig& cfg) {
  CommandOutput out{&schemas::walls(), {}, {}, {}, {}};
  const auto& w = *cfg.walls;
  for (int n = w.n_lo; n <= w.n_hi; ++n) {
    for (int m = 1; m <= cfg.m_max; ++m) {
      const BandRecord b = band_edges(m, n, w.params);
      out.rows.push_back({static_cast<long>(b.m), static_cast<long>(b.n), b.e_min, b.e_max, b.center,
                          b.half_width_first_order});
    }
  }
  return out;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["version"] = version;
  j["started_utc"] = started_utc;
  j["duration_seconds"] = duration_seconds;
  j["status"] = status;
  if (!failure.empty()) j["failure"] = failure;
  j["config"] = config;
  j["error_budgets"] = error_budgets;
  j["warnings"] = warnings;
  j["outputs"] = nlohmann::json::array();
  for (const auto& o : outputs) j["outputs"].push_back({{"path", o.path}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  return j;
}

std::filesystem::path resolve_output_dir(const IoConfig& io) {
  const char* root = std::getenv("LEVYBOX_OUTPUT_ROOT");
  if (root && *root && io.output_dir.is_relative()) return std::filesystem::path(root) / io.output_dir;
  return io.output_dir;
}

CommandOutput compute(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Eigen: return run_eigen(cfg);
    case Command::Evolve: return run_evolve(cfg);
    case Command::Green: return run_green(cfg);
    case Command::ApplyOp: return run_apply_op(cfg);
    case Command::VerifyAppendix: return run_appendix(cfg);
    case Command::CkCheck: return run_ck(cfg);
    case Command::Dos: return run_dos(cfg);
    case Command::Walls: return run_walls(cfg);
  }
  throw InvalidArgument("command", "unhandled command");
}

RunManifest run(const RunConfig& cfg) {
  RunManifest manifest;
  manifest.config = config_to_json(cfg);
  manifest.started_utc = utc_now();
  const auto t0 = std::chrono::steady_clock::now();

  CommandOutput out = compute(cfg);

  const auto dir = resolve_output_dir(cfg.io);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  const std::string name = section_name(cfg.command) + "." + to_string(cfg.io.format);
  write_table(dir / name, out.rows, *out.schema, cfg.io.format);
  manifest.outputs.push_back({name, sha256_file(dir / name), std::filesystem::file_size(dir / name)});

  manifest.error_budgets = out.error_budgets;
  manifest.warnings = out.warnings;
  if (!out.failure.empty()) {
    manifest.status = "tolerance_failure";
    manifest.failure = out.failure;
  }
  manifest.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string text = manifest.to_json().dump(2) + "\n";
  std::ofstream f(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + (dir / "manifest.json").string());
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("write failed for " + (dir / "manifest.json").string());
  return manifest;
}

}  // namespace levybox
