// One PASS/FAIL line per acceptance criterion. Run with --criterion N, or
// without arguments to run all of them. Exit status is non-zero if any
// selected criterion fails.
#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "levybox/config.hpp"
#include "levybox/errors.hpp"
#include "levybox/fractional_operator.hpp"
#include "levybox/moving_walls.hpp"
#include "levybox/propagator.hpp"
#include "levybox/run.hpp"
#include "levybox/spectral.hpp"
#include "levybox/table.hpp"

using namespace levybox;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kSpectrumRelTol = 1e-12;
constexpr double kSpectrumSeconds = 1.0;
constexpr double kAppendixAbsTol = 1e-6;
constexpr double kAppendixSeconds = 30.0;
constexpr double kEigenActionRelTol = 1e-6;
constexpr double kPoissonAbsTol = 1e-4;
constexpr double kAlpha2ImagesTol = 1e-8;
constexpr double kCkExactTol = 1e-10;
constexpr double kCkStableTol = 1e-8;
constexpr double kCkSeconds = 10.0;
constexpr double kSpotRelTol = 1e-10;
constexpr double kUnitarityTol = 1e-12;
constexpr double kRevivalTol = 1e-8;
constexpr double kRichardsonTarget = 4.0;
constexpr double kRichardsonBand = 0.2;
constexpr double kWidthRelTol = 0.02;
constexpr double kGapRatioLo = 3.5;
constexpr double kGapRatioHi = 4.5;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BoxParams box(double alpha, double d_alpha = 1.0) {
  BoxParams p;
  p.alpha = alpha;
  p.d_alpha = d_alpha;
  return p;
}

Outcome standard_box_limit() {
  const auto t0 = std::chrono::steady_clock::now();
  const double m_mass = 1.0;
  const auto modes = lowest_modes(box(2.0, 1.0 / (2.0 * m_mass)), 5);
  double worst = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double expected = n * n * kPi * kPi / (2.0 * m_mass * 4.0);
    worst = std::max(worst, std::abs(modes[i].energy - expected) / expected);
  }
  const double dt = seconds_since(t0);
  return {modes.size() == 10 && worst < kSpectrumRelTol && dt < kSpectrumSeconds,
          fmt("levels=%zu max_rel_err=%.3e runtime=%.3fs", modes.size(), worst, dt)};
}

Outcome appendix_verification() {
  const auto t0 = std::chrono::steady_clock::now();
  QuadratureSpec quad;
  quad.abs_tol = kAppendixAbsTol;
  double worst = 0.0;
  int failed = 0;
  int raised = 0;
  for (double alpha : {1.25, 1.5, 1.75}) {
    const auto p = box(alpha);
    for (int m = 1; m <= 5; ++m) {
      for (double x : {-0.5, 0.0, 0.5}) {
        try {
          const auto k = appendix_k_integral(m, x, p, quad);
          const double diff = std::abs(k.value - appendix_residue_value(m, x, p));
          worst = std::max(worst, diff);
          if (!(diff < kAppendixAbsTol)) ++failed;
        } catch (const ToleranceFailure&) {
          ++raised;
          ++failed;
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  return {failed == 0 && dt < kAppendixSeconds,
          fmt("cases=45 failed=%d quadrature_failures=%d max_abs_diff=%.3e runtime=%.1fs", failed, raised, worst, dt)};
}

Outcome eigen_action() {
  QuadratureSpec quad;
  quad.abs_tol = 1e-6;
  double worst = 0.0;
  std::string per;
  for (double alpha : {1.25, 1.5, 1.75}) {
    for (int m = 1; m <= 3; ++m) {
      try {
        const auto r = appendix_eigen_action_report(m, box(alpha), quad);
        worst = std::max(worst, r.max_rel_deviation);
        per += fmt(" a%.2f/m%d=%.2e", alpha, m, r.max_rel_deviation);
      } catch (const Error& e) {
        worst = INFINITY;
        per += fmt(" a%.2f/m%d=error", alpha, m);
      }
    }
  }
  return {worst < kEigenActionRelTol, fmt("max_rel_dev=%.3e", worst) + per};
}

// Closed Gaussian-Fresnel box propagator, Cesaro mean over |l| <= l_max written
// with Fejer weights 1 - |l| / (l_max + 1).
Complex fresnel_box(double x, double x0, double t, double mass, int l_max) {
  const Complex amp = std::sqrt(mass / (8.0 * kPi * t)) * std::exp(Complex(0.0, -kPi / 4.0));
  Complex sum = 0.0;
  for (int l = -l_max; l <= l_max; ++l) {
    const double w = 1.0 - std::abs(l) / (l_max + 1.0);
    const double a = x - x0 + 2.0 * l;
    const double b = x + x0 + 2.0 * l;
    sum += w * (std::exp(Complex(0.0, mass * a * a / (2.0 * t))) - std::exp(Complex(0.0, mass * b * b / (2.0 * t))));
  }
  return amp * sum;
}

Outcome poisson_identity() {
  const BoxParams p = box(1.5);
  const Grid grid(41, 1.0);
  const double x0 = 0.3;
  const double t = 0.5;
  const int l_max = 50;
  QuadratureSpec quad;

  double worst_abs = 0.0;
  int outside_budget = 0;
  int raised = 0;
  double worst_damped = 0.0;  // winding sum at the smallest eta vs the matching damped spectral sum
  std::string first_error;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.node(i);
    const auto s = green_spectral(x, x0, t, p, 4000, Sector::Odd, kPoissonAbsTol);
    ImageSeries series;
    try {
      const auto g = green_images(x, x0, t, p, l_max, quad, &series);
      const double diff = std::abs(g.value - s.value);
      worst_abs = std::max(worst_abs, diff);
      if (diff > g.error_budget + s.error_budget) ++outside_budget;
    } catch (const ToleranceFailure& e) {
      ++raised;
      if (first_error.empty()) first_error = e.what();
    }
    const double eta = quad.eta * 0.1 / (kPi * kPi);
    const Complex w = green_images_at_eta(x, x0, t, p, l_max, eta);
    const Complex d = green_spectral_damped(x, x0, t, p, eta, Sector::Odd).value;
    worst_damped = std::max(worst_damped, std::abs(w - d));
  }
  const bool alpha15 = raised == 0 && outside_budget == 0 && worst_abs < kPoissonAbsTol;

  // alpha = 2: images path against the closed Gaussian-Fresnel form.
  const BoxParams p2 = box(2.0, 0.5);
  double worst2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.node(i);
    const auto g = green_images(x, x0, t, p2, l_max, quad);
    worst2 = std::max(worst2, std::abs(g.value - fresnel_box(x, x0, t, 1.0, l_max)));
  }
  const bool alpha2 = worst2 < kAlpha2ImagesTol;
  std::string detail = fmt("alpha=1.5: max_abs_diff(returned points)=%.3e outside_budget=%d extrapolation_failures=%d "
                           "fixed_eta_identity=%.3e; alpha=2: max_abs_diff=%.3e",
                           worst_abs, outside_budget, raised, worst_damped, worst2);
  if (!first_error.empty()) detail += " [" + first_error + "]";
  return {alpha15 && alpha2, detail};
}

Outcome semigroup() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid window(16384, 100.0);
  std::string detail;
  bool ok = true;
  for (double alpha : {1.0, 1.5, 2.0}) {
    const double r = chapman_kolmogorov_residual(alpha, 1.0, window);
    const double tol = alpha == 1.5 ? kCkStableTol : kCkExactTol;
    ok = ok && r < tol;
    detail += fmt("alpha=%.1f residual=%.3e ", alpha, r);
  }
  const double dt = seconds_since(t0);
  detail += fmt("runtime=%.2fs", dt);
  return {ok && dt < kCkSeconds, detail};
}

Outcome spot_values() {
  const double g = stable_density(0.0, {2.0, 1.0, 1.0});
  const double c = stable_density(0.0, {1.0, 1.0, 1.0});
  const double eg = std::abs(g - 1.0 / (2.0 * std::sqrt(kPi))) * 2.0 * std::sqrt(kPi);
  const double ec = std::abs(c - 1.0 / kPi) * kPi;
  return {eg < kSpotRelTol && ec < kSpotRelTol, fmt("gauss_rel_err=%.3e cauchy_rel_err=%.3e", eg, ec)};
}

Outcome unitarity_revival() {
  const Grid grid(1025, 1.0);
  auto psi0 = GridFunction::sample(grid, [](double x) {
    return (1.0 - x * x) * std::exp(-(x - 0.2) * (x - 0.2) / (2.0 * 0.15 * 0.15));
  });
  psi0[0] = 0.0;
  psi0[grid.size() - 1] = 0.0;

  const auto state = project(psi0, box(1.5), 200);
  const double n0 = state.norm_squared();
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  double drift = 0.0;
  for (int i = 0; i < 100; ++i) drift = std::max(drift, std::abs(evolve(state, dist(rng)).norm_squared() - n0));

  const auto s2 = project(psi0, box(2.0, 0.5), 200);
  const auto before = reconstruct(s2, grid);
  const auto after = reconstruct(evolve(s2, 16.0 / kPi), grid);
  const double revival = max_abs_difference(before, after);
  return {drift < kUnitarityTol && revival < kRevivalTol,
          fmt("norm_drift=%.3e revival_err=%.3e", drift, revival)};
}

double interior_residual(const BoxParams& p, std::size_t n, double interior) {
  const Grid grid(n, 1.0);
  const auto mode = make_mode(Parity::Odd, 1, p);
  const auto psi = eigenfunction(mode, p, grid);
  const auto h = apply_operator_realspace(psi, p);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (std::abs(grid.node(i)) <= interior) worst = std::max(worst, std::abs(h.values[i] - mode.energy * psi[i]));
  return worst;
}

Outcome operator_convergence() {
  const BoxParams p2 = box(2.0);
  const double r1 = interior_residual(p2, 257, 1.0);
  const double r2 = interior_residual(p2, 513, 1.0);
  const double ratio = r1 / r2;
  const bool ok = std::abs(ratio - kRichardsonTarget) <= kRichardsonBand;

  std::string report = " alpha=1.5 residuals(|x|<=0.5):";
  double previous = INFINITY;
  bool monotone = true;
  for (std::size_t n : {129u, 257u, 513u, 1025u}) {
    const double r = interior_residual(box(1.5), n, 0.5);
    report += fmt(" n=%zu:%.3e", n, r);
    monotone = monotone && r < previous;
    previous = r;
  }
  report += monotone ? " monotone" : " not monotone";
  return {ok, fmt("alpha=2 residuals %.3e/%.3e ratio=%.4f", r1, r2, ratio) + report};
}

MovingWallParams wall_params(double eps) {
  MovingWallParams w;
  w.epsilon = eps;
  w.nu = 1.0;
  w.base = box(1.5);
  return w;
}

double first_order_gap(double eps) {
  double g = 0.0;
  for (int j = 0; j <= 1024; ++j) {
    const double xi = -kPi + 2.0 * kPi * j / 1024;
    g = std::max(g, std::abs(quasienergy(1, 0, xi, wall_params(eps), QuasiOrder::Exact) -
                             quasienergy(1, 0, xi, wall_params(eps), QuasiOrder::First)));
  }
  return g;
}

Outcome moving_walls() {
  const auto b = band_edges(1, 0, wall_params(0.01));
  const double width = b.e_max - b.e_min;
  const double rel = std::abs(width - 2.0 * b.half_width_first_order) / (2.0 * b.half_width_first_order);
  const double ratio = first_order_gap(0.01) / first_order_gap(0.005);
  return {rel < kWidthRelTol && ratio >= kGapRatioLo && ratio <= kGapRatioHi,
          fmt("width=%.6f first_order=%.6f rel_diff=%.3e gap_ratio=%.4f", width, 2.0 * b.half_width_first_order, rel,
              ratio)};
}

std::vector<json> determinism_configs() {
  return {
      {{"command", "eigen"}, {"m_max", 20}},
      {{"command", "evolve"}, {"m_max", 40}, {"grid", {{"n_points", 257}}}},
      {{"command", "green"}, {"m_max", 200}, {"green", {{"x", {-0.5, 0.0, 0.5}}}}},
      {{"command", "apply-op"}, {"grid", {{"n_points", 257}}}},
      {{"command", "verify-appendix"}, {"verify_appendix", {{"m", {1, 2}}, {"alpha", {1.5}}, {"x", {0.0}}}}},
      {{"command", "ck-check"}, {"ck_check", {{"n_points", 4096}, {"half_width", 40.0}}}},
      {{"command", "dos"}, {"dos", {{"e_max", 20.0}, {"n_points", 401}}}},
      {{"command", "walls"}, {"walls", {{"epsilon", 0.01}, {"nu", 3.0}, {"n_lo", -1}, {"n_hi", 1}}}},
      {{"command", "dos"},
       {"io", {{"format", "json"}}},
       {"walls", {{"epsilon", 0.02}, {"nu", 2.0}}},
       {"dos", {{"e_max", 20.0}, {"n_points", 401}, {"xi_samples", 256}}}},
  };
}

Outcome determinism() {
  const auto root = std::filesystem::temp_directory_path() / "levybox_acceptance_determinism";
  std::filesystem::remove_all(root);
  int mismatched = 0;
  int files = 0;
  std::string bad;
  const auto configs = determinism_configs();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::vector<std::string> digests[2];
    for (int rep = 0; rep < 2; ++rep) {
      auto doc = configs[i];
      doc["io"]["output_dir"] = (root / fmt("%zu_%d", i, rep)).string();
      const auto manifest = run(parse_config(doc));
      for (const auto& out : manifest.outputs) digests[rep].push_back(out.sha256);
    }
    files += static_cast<int>(digests[0].size());
    if (digests[0].empty() || digests[0] != digests[1]) {
      ++mismatched;
      bad += " " + configs[i]["command"].get<std::string>();
    }
  }
  std::filesystem::remove_all(root);
  return {mismatched == 0, fmt("configs=%zu files=%d mismatched=%d", configs.size(), files, mismatched) + bad};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"standard box limit", standard_box_limit},
      {"appendix residue identity", appendix_verification},
      {"eigen action via k-space route", eigen_action},
      {"image sum vs spectral sum", poisson_identity},
      {"Chapman-Kolmogorov semigroup", semigroup},
      {"stable kernel spot values", spot_values},
      {"unitarity and revival", unitarity_revival},
      {"real-space operator convergence", operator_convergence},
      {"moving-wall band widths", moving_walls},
      {"determinism", determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu (%s): %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
