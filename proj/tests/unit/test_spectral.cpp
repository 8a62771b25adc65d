#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "levybox/errors.hpp"
#include "levybox/spectral.hpp"

using namespace levybox;

namespace {

constexpr double kPi = std::numbers::pi;

GridFunction bump(const Grid& g, double center, double width) {
  const double L = g.half_width();
  auto f = GridFunction::sample(g, [&](double x) {
    const double u = (x - center) / width;
    return (L * L - x * x) * std::exp(-0.5 * u * u);
  });
  const double n = std::sqrt(f.norm_squared());
  std::vector<Complex> v(f.values().begin(), f.values().end());
  for (auto& c : v) c /= n;
  return GridFunction(g, std::move(v));
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("eigenvalues follow D (hbar k)^alpha for both parities") {
    BoxParams p;
    p.alpha = 1.5;
    p.half_width = 2.0;
    p.hbar = 0.7;
    p.d_alpha = 1.3;
    CHECK(eigenvalue(Parity::Odd, 3, p) == doctest::Approx(1.3 * std::pow(0.7 * 3 * kPi / 2.0, 1.5)).epsilon(1e-15));
    CHECK(eigenvalue(Parity::Even, 0, p) == doctest::Approx(1.3 * std::pow(0.7 * kPi / 4.0, 1.5)).epsilon(1e-15));
    CHECK_THROWS_AS(make_mode(Parity::Odd, 0, p), InvalidArgument);
    CHECK_THROWS_AS(make_mode(Parity::Even, -1, p), InvalidArgument);
  }

  TEST_CASE("merged spectrum at alpha = 2 is the standard box") {
    BoxParams p;
    p.alpha = 2.0;
    p.d_alpha = 0.5;
    const auto modes = lowest_modes(p, 10);
    REQUIRE(modes.size() == 20);
    for (int n = 1; n <= 20; ++n) {
      const double expected = n * n * kPi * kPi / 8.0;
      CHECK(modes[n - 1].energy == doctest::Approx(expected).epsilon(1e-13));
      CHECK(modes[n - 1].parity == (n % 2 == 0 ? Parity::Odd : Parity::Even));
    }
  }

  TEST_CASE("eigenfunctions vanish exactly at the walls and are orthonormal") {
    BoxParams p;
    const Grid g(513, 1.0);
    const auto modes = lowest_modes(p, 6);
    for (const auto& a : modes) {
      const auto fa = eigenfunction(a, p, g);
      CHECK(fa.satisfies_box_boundary());
      for (const auto& b : modes) {
        const Complex ip = inner_product(fa, eigenfunction(b, p, g));
        CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }

  TEST_CASE("projection and reconstruction round-trip a finite mode combination") {
    BoxParams p;
    const Grid g(257, 1.0);
    const auto m1 = make_mode(Parity::Odd, 2, p);
    const auto m2 = make_mode(Parity::Even, 1, p);
    const auto f1 = eigenfunction(m1, p, g);
    const auto f2 = eigenfunction(m2, p, g);
    std::vector<Complex> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = 0.6 * f1[i] + Complex(0.0, 0.8) * f2[i];
    const GridFunction psi(g, v);
    const auto s = project(psi, p, 20);
    CHECK(std::abs(s.truncation_residual) < 1e-12);
    CHECK(max_abs_difference(reconstruct(s, g), psi) < 1e-12);
    CHECK(s.warnings.empty());
  }

  TEST_CASE("projection rejects states that do not vanish at the walls") {
    BoxParams p;
    const Grid g(65, 1.0);
    CHECK_THROWS_AS(project(GridFunction::sample(g, [](double) { return 1.0; }), p, 5), InvalidArgument);
  }

  TEST_CASE("truncated projection warns") {
    BoxParams p;
    const Grid g(1025, 1.0);
    const auto s = project(bump(g, 0.2, 0.05), p, 3);
    CHECK(s.truncation_residual > 1e-6);
    CHECK_FALSE(s.warnings.empty());
  }

  TEST_CASE("evolution is unitary for arbitrary times") {
    BoxParams p;
    const Grid g(1025, 1.0);
    const auto s0 = project(bump(g, 0.1, 0.15), p, 200);
    const double n0 = s0.norm_squared();
    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> dist(-1e3, 1e3);
    for (int k = 0; k < 50; ++k) CHECK(std::abs(evolve(s0, dist(rng)).norm_squared() - n0) < 1e-12);
  }

  TEST_CASE("evolution composes and reverses") {
    BoxParams p;
    const Grid g(257, 1.0);
    const auto s0 = project(bump(g, -0.3, 0.2), p, 40);
    const auto a = evolve(evolve(s0, 0.37), 1.21);
    const auto b = evolve(s0, 1.58);
    const auto back = evolve(evolve(s0, 2.5), -2.5);
    for (std::size_t i = 0; i < s0.entries.size(); ++i) {
      CHECK(std::abs(a.entries[i].coeff - b.entries[i].coeff) < 1e-13);
      CHECK(std::abs(back.entries[i].coeff - s0.entries[i].coeff) < 1e-13);
    }
  }

  TEST_CASE("alpha = 2 state revives at T = 16 / pi") {
    BoxParams p;
    p.alpha = 2.0;
    p.d_alpha = 0.5;
    const Grid g(1025, 1.0);
    const auto s0 = project(bump(g, 0.25, 0.1), p, 60);
    const auto start = reconstruct(s0, g);
    const auto later = reconstruct(evolve(s0, 16.0 / kPi), g);
    CHECK(max_abs_difference(start, later) < 1e-8);
    const auto half = reconstruct(evolve(s0, 8.0 / kPi), g);
    CHECK(max_abs_difference(start, half) > 1e-2);
  }
}
