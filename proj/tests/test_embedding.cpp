#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "geomdet/embedding.hpp"
#include "geomdet/error.hpp"
#include "oracle/fixtures.hpp"
#include "oracle/oracle.hpp"

using namespace geomdet;

namespace {

double coordinate_sum(const EmbeddedPoint& p) {
  return std::accumulate(p.coords().begin(), p.coords().end(), 0.0);
}

std::vector<double> to_vec(const Posterior& p) { return {p.values().begin(), p.values().end()}; }

}  // namespace

TEST_SUITE("embedding") {

TEST_CASE("symbol embedding for three symbols") {
  const auto x = embed_symbol(3, 0);
  CHECK(x[0] == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(-1.0 / 18.0).epsilon(1e-15));
  CHECK(x[2] == doctest::Approx(-1.0 / 18.0).epsilon(1e-15));
  CHECK_THROWS(embed_symbol(3, 3));
  CHECK_THROWS(embed_symbol(1, 0));
}

TEST_CASE("simplex geometry for N = 2..16") {
  for (std::size_t n = 2; n <= 16; ++n) {
    CAPTURE(n);
    const auto v = simplex_vertices(n);
    REQUIRE(v.size() == n);
    const long double nn = n;
    const double norm = static_cast<double>(std::sqrt((nn - 1) / nn) / (2 * nn));
    const double edge = static_cast<double>(std::sqrt(2.0L) / (2 * nn));
    CHECK(std::abs(simplex_vertex_norm(n) - norm) < 1e-15);
    CHECK(std::abs(simplex_edge_length(n) - edge) < 1e-15);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(coordinate_sum(v[i])) < 1e-15);
      CHECK(std::abs(distance(v[i], EmbeddedPoint(std::vector<double>(n, 0.0))) - norm) < 1e-12);
      for (std::size_t j = i + 1; j < n; ++j) CHECK(std::abs(distance(v[i], v[j]) - edge) < 1e-12);
    }
  }
  // 1/sqrt(2N) is not the edge length for any N.
  for (std::size_t n = 2; n <= 16; ++n)
    CHECK(std::abs(simplex_edge_length(n) - 1.0 / std::sqrt(2.0 * n)) > 1e-3);
  CHECK(std::abs(simplex_edge_length(3) - std::sqrt(2.0) / 6.0) < 1e-15);
}

TEST_CASE("embedding a uniform posterior gives the origin") {
  const auto y = embed_observation(Posterior({0.25, 0.25, 0.25, 0.25}));
  for (double c : y.coords()) CHECK(c == 0.0);
}

TEST_CASE("embedding observation a of the table channel") {
  const auto y = embed_channel_observation(fixtures::table_channel(), Prior::uniform(3), std::size_t{0});
  CHECK(std::abs(y[0] - 0.0597059262994) < 1e-12);
  CHECK(std::abs(y[1] + 0.0298529631497) < 1e-12);
  CHECK(std::abs(y[2] + 0.0298529631497) < 1e-12);
}

TEST_CASE("two-symbol embedding is the log-likelihood ratio pair") {
  const double p = 0.8;
  const auto y = embed_observation(Posterior({p, 1 - p}));
  const double llr = std::log(p / (1 - p));
  CHECK(y[0] == doctest::Approx(llr).epsilon(1e-14));
  CHECK(y[1] == doctest::Approx(-llr).epsilon(1e-14));
}

TEST_CASE("embedding matches the literal log-quotient formula") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {2u, 3u, 5u, 9u}) {
    for (int t = 0; t < 50; ++t) {
      const auto p = oracle::dirichlet(n, rng);
      const auto y = embed_observation(Posterior(p));
      const auto o = oracle::log_quotient_embedding(p);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - o[i]) < 1e-11 * (1 + std::abs(o[i])));
    }
  }
}

TEST_CASE("awgn closed form of the observation embedding") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uy(-3, 3), us(0.2, 3);
  {
    const auto y = embed_channel_observation(fixtures::awgn(1.0), Prior::uniform(3), 0.5);
    CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(y[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(y[2] == doctest::Approx(-2.0).epsilon(1e-14));
  }
  for (int t = 0; t < 100; ++t) {
    const double v = uy(rng), s2 = us(rng);
    const auto y = embed_channel_observation(fixtures::awgn(s2), Prior::uniform(3), v);
    const double k = 1.0 / (2.0 * s2);
    CHECK(std::abs(y[0] - 2 * k) < 1e-12 * (1 + k));
    CHECK(std::abs(y[1] - (6 * v - 1) * k) < 1e-12 * (1 + std::abs(6 * v - 1) * k));
    CHECK(std::abs(y[2] - (-6 * v - 1) * k) < 1e-12 * (1 + std::abs(6 * v + 1) * k));
  }
}

TEST_CASE("laplace embedding saturates beyond the outer symbols") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (double v : {1.5, 4.0, 50.0}) {
      const auto y = embed_channel_observation(fixtures::laplace(lambda), Prior::uniform(3), v);
      CHECK(std::abs(y[0]) < 1e-12);
      CHECK(std::abs(y[1] - 3 / lambda) < 1e-12);
      CHECK(std::abs(y[2] + 3 / lambda) < 1e-12);
    }
  }
}

TEST_CASE("shifting the log-likelihoods leaves the embedding unchanged") {
  // Dyadic inputs make every intermediate exact.
  const std::vector<double> l = {-0.5, -1.25, -3.0, -0.75};
  std::vector<double> shifted = l;
  for (double& v : shifted) v += 8.0;
  CHECK(embed_observation_from_likelihoods(l) == embed_observation_from_likelihoods(shifted));

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0, 3);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> a(4), b(4);
    const double c = g(rng) * 10;
    for (std::size_t i = 0; i < 4; ++i) b[i] = (a[i] = g(rng)) + c;
    const auto ya = embed_observation_from_likelihoods(a);
    const auto yb = embed_observation_from_likelihoods(b);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ya[i] - yb[i]) < 1e-12 * (1 + std::abs(c)));
  }
}

TEST_CASE("non-finite inputs") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(embed_observation_from_likelihoods(std::vector<double>{0.0, -inf, 0.0}), ErasureError);
  CHECK_THROWS_AS(embed_observation_from_likelihoods(std::vector<double>{0.0, std::nan(""), 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(embed_observation_from_likelihoods(std::vector<double>{0.0, inf, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(embed_observation(Posterior({0.5, 0.5, 0.0})), ErasureError);
}

TEST_CASE("points off the hyperplane are rejected") {
  CHECK_THROWS_AS(EmbeddedPoint({1.0, 0.0, 0.0}), HyperplaneError);
  CHECK_NOTHROW(EmbeddedPoint({1.0, -0.5, -0.5}));
}

TEST_CASE("reconstruction inverts the embedding") {
  std::mt19937_64 rng(6);
  for (std::size_t n : {2u, 3u, 4u, 8u, 16u}) {
    for (int t = 0; t < 200; ++t) {
      const auto p = oracle::dirichlet(n, rng);
      const auto back = to_vec(reconstruct_posterior(embed_observation(Posterior(p))));
      CHECK(oracle::max_abs_diff(p, back) < 1e-10);
    }
  }
  const auto u = reconstruct_posterior(EmbeddedPoint(std::vector<double>(5, 0.0)));
  for (double v : u.values()) CHECK(v == doctest::Approx(0.2).epsilon(1e-15));

  const auto r = reconstruct_posterior(EmbeddedPoint({1.0, 1.0, -2.0}));
  CHECK(std::abs(r[0] - 0.422318798252) < 1e-11);
  CHECK(std::abs(r[2] - 0.155362403497) < 1e-11);
}

TEST_CASE("metric properties") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0, 1);
  auto random_point = [&] {
    std::vector<double> v(4);
    double s = 0;
    for (double& c : v) s += (c = g(rng));
    for (double& c : v) c -= s / 4;
    return EmbeddedPoint(v);
  };
  for (int t = 0; t < 100; ++t) {
    const auto a = random_point(), b = random_point(), c = random_point();
    CHECK(distance(a, a) == 0.0);
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
  }
  CHECK_THROWS(distance(EmbeddedPoint({1.0, -1.0}), EmbeddedPoint({0.0, 0.0, 0.0})));
}

TEST_CASE("reconstruction weight turns sums of squared distances into products") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 2);
  for (int t = 0; t < 100; ++t) {
    const double a = u(rng), b = u(rng);
    CHECK(reconstruction_weight(std::hypot(a, b)) ==
          doctest::Approx(reconstruction_weight(a) * reconstruction_weight(b)).epsilon(1e-13));
  }
  CHECK(reconstruction_weight(0.0) == 1.0);
  CHECK(reconstruction_weight(1.0) < reconstruction_weight(0.5));
}

TEST_CASE("awgn observation embeddings are collinear") {
  std::vector<EmbeddedPoint> pts;
  for (double v : {-3.0, -1.2, -0.1, 0.0, 0.4, 0.9, 1.7, 2.5, 3.3, 6.0})
    pts.push_back(embed_channel_observation(fixtures::awgn(0.7), Prior::uniform(3), v));
  const auto& p0 = pts.front();
  const auto& p1 = pts.back();
  std::vector<double> dir(3);
  for (std::size_t i = 0; i < 3; ++i) dir[i] = p1[i] - p0[i];
  const double dn = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
  for (const auto& p : pts) {
    double along = 0, sq = 0;
    for (std::size_t i = 0; i < 3; ++i) along += (p[i] - p0[i]) * dir[i] / dn;
    for (std::size_t i = 0; i < 3; ++i) {
      const double r = p[i] - p0[i] - along * dir[i] / dn;
      sq += r * r;
    }
    CHECK(std::sqrt(sq) < 1e-9);
  }
}

TEST_CASE("the hyperplane watermark tracks constructed points") {
  reset_hyperplane_residual_watermark();
  (void)embed_symbol(7, 3);
  CHECK(hyperplane_residual_watermark() <= 1e-15);
  (void)EmbeddedPoint({1.0, -1.0 + 1e-12});
  CHECK(hyperplane_residual_watermark() >= 1e-13);
  reset_hyperplane_residual_watermark();
  CHECK(hyperplane_residual_watermark() == 0.0);
}

}  // TEST_SUITE
