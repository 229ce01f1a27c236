#include <doctest.h>

#include <cmath>
#include <random>

#include "geomdet/detection.hpp"
#include "geomdet/figure.hpp"
#include "oracle/fixtures.hpp"
#include "oracle/oracle.hpp"

using namespace geomdet;

TEST_SUITE("figure") {

TEST_CASE("plane basis is orthonormal and orthogonal to the all-ones vector") {
  for (std::size_t n = 2; n <= 16; ++n) {
    const auto b = plane_basis(n);
    REQUIRE(b.size() == n - 1);
    for (std::size_t r = 0; r < b.size(); ++r) {
      double ones = 0;
      for (double v : b[r]) ones += v;
      CHECK(std::abs(ones) < 1e-12);
      for (std::size_t s = 0; s < b.size(); ++s) {
        double dot = 0;
        for (std::size_t i = 0; i < n; ++i) dot += b[r][i] * b[s][i];
        CHECK(std::abs(dot - (r == s ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
  const auto b3 = plane_basis(3);
  CHECK(b3[0][0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(b3[0][1] == doctest::Approx(-1 / std::sqrt(2.0)));
  CHECK(b3[1][2] == doctest::Approx(-2 / std::sqrt(6.0)));
}

TEST_CASE("projection is an isometry on the hyperplane") {
  std::mt19937_64 rng(51);
  for (std::size_t n : {3u, 5u}) {
    for (int t = 0; t < 50; ++t) {
      const auto a = embed_observation(Posterior(oracle::dirichlet(n, rng)));
      const auto b = embed_observation(Posterior(oracle::dirichlet(n, rng)));
      const auto pa = project_point(a), pb = project_point(b);
      double sq = 0;
      for (std::size_t i = 0; i < pa.size(); ++i) sq += (pa[i] - pb[i]) * (pa[i] - pb[i]);
      CHECK(std::abs(std::sqrt(sq) - distance(a, b)) < 1e-12);
      const auto back = unproject(pa);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - a[i]) < 1e-12);
      // The reconstructed posterior survives the trip through the plane.
      const auto p1 = reconstruct_posterior(a), p2 = reconstruct_posterior(back);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(p1[i] - p2[i]) < 1e-10);
    }
  }
  const auto origin = project_point(EmbeddedPoint(std::vector<double>(3, 0.0)));
  CHECK(origin[0] == 0.0);
  CHECK(origin[1] == 0.0);
}

TEST_CASE("discrete figure of the table channel") {
  const auto doc = figure_discrete(fixtures::table_channel(), Prior::uniform(3));
  CHECK(doc.checks.passed());
  REQUIRE(doc.checks.triangle_side.has_value());
  CHECK(std::abs(*doc.checks.triangle_side - std::sqrt(2.0) / 6.0) < 1e-12);
  REQUIRE(doc.checks.bisector_residual.has_value());
  CHECK(*doc.checks.bisector_residual <= 1e-9);
  CHECK(doc.projection.points.size() == 9u);
  CHECK(doc.boundaries.size() == 3u);
  for (const auto& s : doc.boundaries) {
    CHECK(s.x1 == 0.0);
    CHECK(s.y1 == 0.0);
  }
  double cu = 0, cv = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    cu += doc.projection.points[i].coords[0];
    cv += doc.projection.points[i].coords[1];
  }
  CHECK(std::abs(cu) < 1e-15);
  CHECK(std::abs(cv) < 1e-15);
  CHECK(doc.has_svg());
  CHECK(doc.svg("x") == doc.svg("x"));
  CHECK(doc.svg("x").find("<!-- x -->") != std::string::npos);
  CHECK(doc.csv().rfind("label,kind,u,v\n", 0) == 0);
}

TEST_CASE("uninformative observations sit at the origin") {
  const auto doc = figure_discrete(fixtures::uniform_table_channel(), Prior::uniform(3));
  CHECK(doc.checks.passed());
  for (const auto& p : doc.projection.points)
    if (p.kind == PointKind::observation) {
      CHECK(std::abs(p.coords[0]) < 1e-15);
      CHECK(std::abs(p.coords[1]) < 1e-15);
    }
}

TEST_CASE("awgn locus is a line whose scale follows 1/sigma^2") {
  const auto grid = linear_grid(-5, 5, 201);
  const auto doc = figure_locus(fixtures::awgn(1.0), Prior::uniform(3), grid);
  CHECK(doc.checks.passed());
  REQUIRE(doc.checks.collinearity_residual.has_value());
  CHECK(*doc.checks.collinearity_residual <= 1e-9);
  CHECK(doc.polyline.size() == 201u);

  const auto y1 = embed_channel_observation(fixtures::awgn(1.0), Prior::uniform(3), 0.8);
  const auto y4 = embed_channel_observation(fixtures::awgn(4.0), Prior::uniform(3), 0.8);
  const EmbeddedPoint zero(std::vector<double>(3, 0.0));
  CHECK(distance(y1, zero) == doctest::Approx(4 * distance(y4, zero)).epsilon(1e-12));
}

TEST_CASE("laplace locus has four pieces and two saturated ends") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const auto doc = figure_locus(fixtures::laplace(lambda), Prior::uniform(3), linear_grid(-5, 5, 201));
    CHECK(doc.checks.passed());
    REQUIRE(doc.checks.structure.has_value());
    CHECK(doc.checks.structure->pieces == 4u);
    CHECK(doc.checks.structure->saturation_points == 2u);
    const auto sat = project_point(EmbeddedPoint({0.0, 3 / lambda, -3 / lambda}));
    const auto& last = doc.polyline.back();
    CHECK(std::abs(last[0] - sat[0]) < 1e-12);
    CHECK(std::abs(last[1] - sat[1]) < 1e-12);
  }
}

TEST_CASE("degenerate grids and larger alphabets") {
  const auto one = figure_locus(fixtures::awgn(1.0), Prior::uniform(3), linear_grid(0.5, 0.5, 1));
  CHECK(one.polyline.size() <= 1u);

  AwgnChannel four{Alphabet({"a", "b", "c", "d"}), {-3, -1, 1, 3}, 1.0};
  const auto doc = figure_locus(four, Prior::uniform(4), linear_grid(-4, 4, 41));
  CHECK_FALSE(doc.has_svg());
  CHECK(doc.csv().find("label,kind,c1,c2,c3\n") != std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(linear_grid(0, 1, 3) == std::vector<double>{0, 0.5, 1});
}

}  // TEST_SUITE
