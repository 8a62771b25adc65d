#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "levybox/errors.hpp"
#include "levybox/types.hpp"

using namespace levybox;

TEST_SUITE("types") {
  TEST_CASE("grid nodes are symmetric and hit the walls exactly") {
    const Grid g(1025, 1.0);
    CHECK(g.size() == 1025);
    CHECK(g.spacing() == doctest::Approx(2.0 / 1024).epsilon(1e-15));
    CHECK(g.node(0) == -1.0);
    CHECK(g.node(1024) == 1.0);
    CHECK(g.node(512) == 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.node(i) == -g.node(g.size() - 1 - i));
  }

  TEST_CASE("trapezoid weights integrate linear functions exactly") {
    const Grid g(17, 2.5);
    const auto w = g.trapezoid_weights();
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      s0 += w[i];
      s1 += w[i] * (3.0 * g.node(i) + 1.0);
    }
    CHECK(s0 == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(s1 == doctest::Approx(5.0).epsilon(1e-14));
  }

  TEST_CASE("coarsening keeps every other node") {
    const Grid g(33, 1.0);
    const Grid c = g.coarsened();
    REQUIRE(c.size() == 17);
    for (std::size_t j = 0; j < c.size(); ++j) CHECK(c.node(j) == doctest::Approx(g.node(2 * j)).epsilon(1e-15));
    CHECK_THROWS_AS(Grid(32, 1.0).coarsened(), InvalidArgument);
  }

  TEST_CASE("invalid grids are rejected") {
    CHECK_THROWS_AS(Grid(2, 1.0), InvalidArgument);
    CHECK_THROWS_AS(Grid(10, 0.0), InvalidArgument);
    CHECK_THROWS_AS(Grid(10, -1.0), InvalidArgument);
  }

  TEST_CASE("box params validation names the field and the range") {
    BoxParams p;
    CHECK_NOTHROW(p.validate());
    p.alpha = 2.5;
    try {
      p.validate();
      FAIL("expected InvalidArgument");
    } catch (const InvalidArgument& e) {
      CHECK(e.field() == "params.alpha");
      CHECK(std::string(e.what()).find("(1, 2]") != std::string::npos);
    }
    p.alpha = 1.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p.alpha = 2.0;
    CHECK_NOTHROW(p.validate());
    p.d_alpha = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
  }

  TEST_CASE("quadrature spec validation") {
    QuadratureSpec q;
    CHECK_NOTHROW(q.validate());
    q.eta = 0.0;
    CHECK_NOTHROW(q.validate());
    q.eta = -1e-3;
    CHECK_THROWS_AS(q.validate(), InvalidArgument);
  }

  TEST_CASE("grid functions: boundary check, norm and inner product") {
    const Grid g(257, 1.0);
    auto f = GridFunction::sample(g, [](double x) { return std::sin(std::numbers::pi * x); });
    CHECK_FALSE(f.satisfies_box_boundary());  // sin(pi) is not exactly zero in floating point
    f[0] = 0.0;
    f[g.size() - 1] = 0.0;
    CHECK(f.satisfies_box_boundary());
    // The trapezoid rule is exact for this trigonometric polynomial over a full period.
    CHECK(f.norm_squared() == doctest::Approx(1.0).epsilon(1e-13));
    const auto h = GridFunction::sample(g, [](double x) { return std::sin(2.0 * std::numbers::pi * x); });
    CHECK(std::abs(inner_product(f, h)) < 1e-14);
    const auto c = GridFunction::sample(g, [](double x) { return std::cos(x); });
    CHECK_FALSE(c.satisfies_box_boundary());
    CHECK(max_abs_difference(f, f) == 0.0);
  }
}
