#include <doctest.h>

#include <cmath>
#include <random>

#include "diskop/geometry.hpp"

using namespace diskop;

TEST_CASE("rho basic values") {
  const cplx one(1.0, 0.0);
  CHECK(rho(one, one) == doctest::Approx(0.0));
  CHECK(rho(one, cplx(-1.0, 0.0)) == doctest::Approx(2.0));
  // 2 sin(pi/6) = 1, checked against direct complex arithmetic.
  CHECK(rho(one, std::polar(1.0, kPi / 3.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(rho(cplx(0.5, 0.0), one), std::domain_error);
}

TEST_CASE("rho equals the half-angle formula and is symmetric") {
  GridCircle grid(64);
  for (int j = 0; j < 64; j += 5) {
    for (int k = 0; k < 64; k += 7) {
      const double direct = rho(grid.node(j), grid.node(k));
      const double half = 2.0 * std::abs(std::sin(0.5 * (grid.theta(j) - grid.theta(k))));
      CHECK(direct == doctest::Approx(half).epsilon(1e-12));
      CHECK(direct == doctest::Approx(rho(grid.node(k), grid.node(j))));
    }
  }
}

TEST_CASE("quasi-triangle inequality with A0 = 2 on the grid") {
  GridCircle grid(32);
  for (int a = 0; a < 32; a += 3)
    for (int b = 0; b < 32; b += 5)
      for (int c = 0; c < 32; c += 7) {
        const double lhs = rho(grid.node(a), grid.node(b));
        const double rhs =
            2.0 * (rho(grid.node(a), grid.node(c)) + rho(grid.node(c), grid.node(b)));
        CHECK(lhs <= rhs + 1e-12);
      }
}

TEST_CASE("arc_ball full circle and quarter arc") {
  GridCircle grid(16);
  Arc full = arc_ball(cplx(1.0, 0.0), 2.5);
  CHECK(full.measure() == doctest::Approx(1.0));
  CHECK(full.node_range(grid).count == 16);

  // h = 2 arcsin(r/2) inverted at h = pi/4: continuum measure 1/4.
  Arc quarter = arc_ball(cplx(1.0, 0.0), 2.0 * std::sin(kPi / 8.0));
  CHECK(quarter.measure() == doctest::Approx(0.25).epsilon(1e-12));
  // Strict membership: nodes exactly on the boundary circle are excluded.
  // The exact radius sits on a node, so probe from both sides of it.
  auto inside = arc_ball(cplx(1.0, 0.0), 2.0 * std::sin(kPi / 8.0) * (1.0 - 1e-9));
  auto range = inside.node_range(grid);
  CHECK(range.count == 3);
  CHECK(range.first == 15);
  auto outside = arc_ball(cplx(1.0, 0.0), 2.0 * std::sin(kPi / 8.0) * (1.0 + 1e-9));
  CHECK(outside.node_range(grid).count == 5);
  CHECK_THROWS_AS(arc_ball(cplx(1.0, 0.0), -1.0), std::domain_error);
}

TEST_CASE("arc_ball rotation invariance") {
  GridCircle grid(64);
  const double r = 0.7;
  auto a = arc_ball(cplx(1.0, 0.0), r).node_range(grid);
  auto b = arc_ball(cplx(0.0, 1.0), r).node_range(grid);
  CHECK(a.count == b.count);
  CHECK(grid.wrap(b.first - 16) == a.first);  // rotated by pi/2 = 16 nodes
}

TEST_CASE("arc measure monotone and comparable to r") {
  GridCircle grid(256);
  double prev = 0.0;
  for (double r : {0.05, 0.1, 0.3, 0.7, 1.2, 1.9}) {
    Arc arc = arc_ball(cplx(1.0, 0.0), r);
    CHECK(arc.measure() >= prev);
    prev = arc.measure();
    // sigma(B(zeta,r)) in [c r, C r] for r <= 2 (n = 1 doubling):
    // half-width h = 2 asin(r/2) in [r/2-ish, pi r/2].
    CHECK(arc.measure() >= 0.3 * r / kPi);
    CHECK(arc.measure() <= 1.05 * r);
  }
}

TEST_CASE("polar grid weight identities") {
  const int depth = 10;
  PolarGrid g = polar_grid(depth, 64);
  CHECK(g.eps_r == doctest::Approx(std::ldexp(1.0, -depth)));
  // Max radius exactly 1 - 2^-depth (Lobatto endpoint).
  CHECK(g.radii.back() == doctest::Approx(1.0 - g.eps_r).epsilon(1e-15));

  double area = 0.0, lp_area = 0.0, second = 0.0;
  for (int i = 0; i < g.radial_size(); ++i) {
    area += g.w_area[i];
    lp_area += g.w_lp[i] * (1.0 - g.radii[i] * g.radii[i]);
    second += g.w_area[i] * g.radii[i] * g.radii[i];
  }
  // Total mass of truncated nu: (1-eps)^2 in [1-3eps, 1].
  CHECK(area == doctest::Approx(std::pow(1.0 - g.eps_r, 2.0)).epsilon(1e-13));
  CHECK(area >= 1.0 - 3.0 * g.eps_r);
  CHECK(area <= 1.0);
  // Cancellation of the singular factor is exact by construction.
  CHECK(lp_area == doctest::Approx(area).epsilon(1e-13));
  // integral |w|^2 dnu = 1/2 up to truncation.
  CHECK(second == doctest::Approx(0.5).epsilon(4.0 * g.eps_r));

  // Radii strictly increasing within the open interval (0, 1).
  CHECK(g.radii.front() > 0.0);
  CHECK(g.radii.back() < 1.0);
  for (int i = 1; i < g.radial_size(); ++i) CHECK(g.radii[i] > g.radii[i - 1]);
  CHECK_THROWS_AS(polar_grid(3, 64), std::invalid_argument);
}

TEST_CASE("carleson square membership and kernel bounds") {
  CarlesonSquare sq{std::polar(0.9, 0.3)};
  CHECK(sq.contains(sq.apex));
  // Monotone in s along rays inside the angular window.
  const cplx dir = sq.direction();
  for (double s : {0.91, 0.95, 0.99}) CHECK(sq.contains(s * dir));
  CHECK_FALSE(sq.contains(0.5 * dir));

  // For w in S_a: 1-|a| <= |1 - w conj(a)| <= 3(1-|a|), sampled.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double h = sq.height();
  int tested = 0;
  for (int t = 0; t < 2000; ++t) {
    const double s = 1.0 - h * unif(rng);
    const cplx eta = std::polar(1.0, 0.3 + 2.0 * h * (unif(rng) - 0.5));
    const cplx w = s * eta;
    if (!sq.contains(w)) continue;
    ++tested;
    const double d = std::abs(1.0 - w * std::conj(sq.apex));
    CHECK(d >= h - 1e-12);
    CHECK(d <= 3.0 * h + 1e-12);
  }
  CHECK(tested > 100);
}

TEST_CASE("bprime quasi-metric axioms on sampled triples") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  for (int t = 0; t < 500; ++t) {
    const cplx z = std::polar(unif(rng), ang(rng));
    const cplx w = std::polar(unif(rng), ang(rng));
    const cplx v = std::polar(unif(rng), ang(rng));
    CHECK(bprime_metric(z, z) == doctest::Approx(0.0));
    CHECK(bprime_metric(z, w) == doctest::Approx(bprime_metric(w, z)));
    CHECK(bprime_metric(z, w) <= 2.0 * (bprime_metric(z, v) + bprime_metric(v, w)) + 1e-12);
  }
  CHECK_THROWS_AS(bprime_metric(cplx(0.0, 0.0), cplx(1.0, 0.0)), std::domain_error);
}

TEST_CASE("gauss rules integrate polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(8, x, w);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i) acc += w[i] * std::pow(x[i], 10);
  CHECK(acc == doctest::Approx(2.0 / 11.0).epsilon(1e-13));

  gauss_lobatto(16, x, w);
  CHECK(x.front() == doctest::Approx(-1.0));
  CHECK(x.back() == doctest::Approx(1.0));
  acc = 0.0;
  for (int i = 0; i < 16; ++i) acc += w[i] * std::pow(x[i], 28);
  CHECK(acc == doctest::Approx(2.0 / 29.0).epsilon(1e-12));
}
