#include <doctest.h>

#include <cmath>

#include "diskop/extremal.hpp"
#include "diskop/norms.hpp"
#include "diskop/reference.hpp"
#include "diskop/regression.hpp"

using namespace diskop;

TEST_CASE("f_delta_p coefficients: positivity, a1 = 2a, convolution oracle") {
  const double delta = 0.8, p = 2.0;
  const double a = delta / p;
  HoloFunction f = f_delta_p(delta, p, 256);
  CHECK(std::abs(f.coefficient(0) - 1.0) < 1e-15);
  CHECK(std::abs(f.coefficient(1) - 2.0 * a) < 1e-15);
  for (int k = 0; k <= 256; ++k) CHECK(f.coefficient(k).real() > 0.0);

  auto conv = reference::f_delta_p_convolution(a, 256);
  for (int k = 0; k <= 256; ++k)
    CHECK(f.coefficient(k).real() == doctest::Approx(conv[k]).epsilon(1e-10));
}

TEST_CASE("f_delta_p small power limit") {
  HoloFunction f = f_delta_p(1e-9, 2.0, 64);
  for (int k = 1; k <= 64; ++k) CHECK(std::abs(f.coefficient(k)) < 1e-8);
}

TEST_CASE("recurrence matches the closed form near the origin") {
  const double a = 0.37;
  HoloFunction f = f_delta_p(0.74, 2.0, 32);
  auto closed = [&](double x) { return std::pow((1.0 + x) / (1.0 - x), a); };
  for (int i = -6; i <= 6; ++i) {
    const double x = i * 1e-2;
    CHECK(f.eval(cplx(x, 0.0)).real() == doctest::Approx(closed(x)).epsilon(1e-8));
  }
}

TEST_CASE("boundary tangent identity and u/v closed forms") {
  GridCircle grid(256);
  const double delta = 0.9, p = 2.0;
  const double a = delta / p;
  auto uv = u_v_boundary(delta, p, grid);
  const double t = std::tan(a * kPi / 2.0);
  for (int j = 0; j < 256; ++j) {
    CHECK(std::abs(std::abs(uv.v.sample(j)) - t * uv.u.sample(j).real()) <
          1e-8 * (1.0 + uv.u.sample(j).real()));
  }
  // theta = pi: f = 0 up to the rounding of cot(pi/2) ~ 1e-17 to the power a.
  CHECK(std::abs(uv.u.sample(128)) < 1e-7);
  CHECK(std::abs(uv.v.sample(128)) < 1e-7);
}

TEST_CASE("2 C(u) = f + conj(f(0)) as a coefficient identity") {
  GridCircle grid(256);
  const double delta = 0.6, p = 2.0;
  auto uv = u_v_boundary(delta, p, grid);
  HoloFunction cu = cauchy(uv.u);
  HoloFunction f = f_delta_p(delta, p, 96);
  // 2 a_0(Cu) = f_0 + conj(f(0)) = 2; higher: 2 a_k = f_k. The closed-form
  // sampling differs from the true coefficients through the singular cell,
  // a uniform absolute offset across modes at N = 256.
  CHECK(std::abs(2.0 * cu.coefficient(0) - 2.0) < 0.05);
  for (int k = 1; k <= 8; ++k)
    CHECK(std::abs(2.0 * cu.coefficient(k) - f.coefficient(k)) < 0.05);
}

TEST_CASE("closed norms against grid sums at moderate delta") {
  GridCircle grid(4096);
  const double delta = 0.5, p = 2.0;
  const double tau = 1.0 - delta;
  auto uv = u_v_boundary(delta, p, grid);
  NormSpec spec{p, nullptr, nullptr};
  // Closed form sec(pi delta/2)^{1/p}; the grid sum misses part of the
  // singular cell, so allow a few percent.
  const double hp_closed = hp_f_closed(tau, p);
  const double u2 = lp_norm(uv.u, spec), v2 = lp_norm(uv.v, spec);
  const double f_grid = std::sqrt(u2 * u2 + v2 * v2);
  CHECK(f_grid == doctest::Approx(hp_closed).epsilon(0.05));
  CHECK(lp_u_closed(tau, p) == doctest::Approx(u2).epsilon(0.05));
  CHECK(lp_v_closed(tau, p) == doctest::Approx(v2).epsilon(0.05));
}

TEST_CASE("u_v closed form matches Abel evaluation of the coefficients") {
  GridCircle grid(512);
  const double delta = 0.5, p = 2.0;
  HoloFunction f = f_delta_p(delta, p, 255);
  auto samples = f.eval_radius(1.0 - 1.0 / 512.0, grid);
  auto uv = u_v_boundary(delta, p, grid);
  // Away from the singular node at theta = 0 AND from the boundary zero at
  // theta = pi (where the Abel mean floors at (1-r)^a) the means track the
  // closed form.
  for (int j = 32; j < 480; j += 16) {
    if (std::abs(j - 256) < 64) continue;
    const cplx closed = uv.u.sample(j) + cplx(0.0, 1.0) * uv.v.sample(j);
    CHECK(std::abs(samples[j] - closed) < 0.02 * (1.0 + std::abs(closed)));
  }
}

TEST_CASE("shifted boundary norms: self-consistency and grid agreement") {
  // shift 0 reproduces the exact secant closed form.
  for (double p : {1.5, 2.0, 4.0})
    for (double tau : {0.5, 0.1, 1e-4, 1e-10})
      CHECK(lp_f_shift_closed(tau, p, 0.0) ==
            doctest::Approx(hp_f_closed(tau, p)).epsilon(1e-6));

  // At moderate delta the graded quadrature matches plain grid sums.
  GridCircle grid(4096);
  const double delta = 0.5, p = 2.0;
  auto uv = u_v_boundary(delta, p, grid);
  for (double shift : {-1.0, 1.0}) {
    std::vector<cplx> s(4096);
    for (int j = 0; j < 4096; ++j)
      s[j] = uv.u.sample(j) + cplx(0.0, 1.0) * uv.v.sample(j) + shift;
    const double grid_norm = lp_norm(BoundaryFunction(grid, std::move(s)), NormSpec{p, nullptr, nullptr});
    CHECK(lp_f_shift_closed(1.0 - delta, p, shift) ==
          doctest::Approx(grid_norm).epsilon(0.03));
  }
}

TEST_CASE("deep triebel evaluator agrees with the grid path at moderate delta") {
  // At delta = 0.5 the singular mass is grid-resolvable (capture fraction
  // 1 - N^{-(1-delta)} ~ 97%); at delta near 1 only the deep evaluator
  // converges, which is the point of having it.
  const double delta = 0.5, p = 2.0;
  PolarGrid polar = polar_grid(14, 2048);
  NormSpec spec{p, nullptr, &polar};
  HoloFunction f = f_delta_p(delta, p, 1023);
  const double grid_value = triebel_norm(f, spec).value;
  const double deep_value = triebel_f_deep(1.0 - delta, p, FShift::none);
  CHECK(deep_value == doctest::Approx(grid_value).epsilon(0.08));
}

TEST_CASE("deep evaluator handles the shifted variants consistently") {
  // ||C(v)||_F = ||(f-1)/2||_F and ||C(u)||_F = ||(f+1)/2||_F on the grid.
  const double delta = 0.5, p = 2.0;
  PolarGrid polar = polar_grid(14, 2048);
  NormSpec spec{p, nullptr, &polar};
  HoloFunction f = f_delta_p(delta, p, 1023);
  auto shift = [&](double off) {
    std::vector<cplx> c = f.coefficients();
    c[0] += off;
    for (auto& x : c) x *= 0.5;
    return HoloFunction(std::move(c));
  };
  CHECK(triebel_f_deep(0.5, p, FShift::minus_one) ==
        doctest::Approx(triebel_norm(shift(-1.0), spec).value).epsilon(0.08));
  CHECK(triebel_f_deep(0.5, p, FShift::plus_one) ==
        doctest::Approx(triebel_norm(shift(1.0), spec).value).epsilon(0.08));
}

TEST_CASE("g/h decomposition of the triebel norm at moderate delta") {
  PolarGrid polar = polar_grid(14, 2048);
  for (double p : {2.0, 4.0}) {
    const double delta = 0.95;
    HoloFunction f = f_delta_p(delta, p, 1023);
    // g = (1-|z|^2) R f, h = (1-|z|^2) f; ||g|| ~ (1/sqrt p)(1-delta)^{-1/p},
    // ||h|| <~ 1.
    std::vector<cplx> rc = f.coefficients();
    for (std::size_t k = 0; k < rc.size(); ++k) rc[k] *= static_cast<double>(k);
    // (1-r^2)*sum k a_k r^k e^{ik theta}: reuse q_profile with (I+R)^{-1}
    // adjustment: q_profile applies (1+k), so feed coefficients k a_k/(1+k).
    std::vector<cplx> gc(rc.size());
    for (std::size_t k = 0; k < rc.size(); ++k) gc[k] = rc[k] / (1.0 + static_cast<double>(k));
    NormSpec spec{p, nullptr, &polar};
    const double gnorm = mixed_norm(q_profile(HoloFunction(gc), polar), spec).value;
    std::vector<cplx> hc = f.coefficients();
    for (std::size_t k = 0; k < hc.size(); ++k) hc[k] /= (1.0 + static_cast<double>(k));
    const double hnorm = mixed_norm(q_profile(HoloFunction(hc), polar), spec).value;
    const double predicted = std::pow(1.0 - delta, -1.0 / p) / std::sqrt(p);
    CHECK(gnorm / predicted > 0.3);
    CHECK(gnorm / predicted < 3.5);
    CHECK(hnorm < 2.0);
  }
}

TEST_CASE("phi_delta norms and scaling") {
  PolarGrid polar = polar_grid(14, 1024);
  const double p = 2.0, rho = 0.25;

  // Oracle check of the singularity-aware L1 value against an independent
  // graded quadrature of the closed form.
  {
    const double delta = 0.2;
    double radial = 0.0;
    for (int i = 0; i < polar.radial_size(); ++i)
      if (1.0 - polar.radii[i] < rho) radial += polar.w_area[i] * (1.0 - polar.radii[i]);
    const double h = 2.0 * std::asin(0.5 * rho);
    double angular = 0.0;
    double hi = h;
    for (int j = 0; j < 200 && hi > 1e-200; ++j) {
      const double lo = 0.5 * hi;
      for (int q = 0; q < 64; ++q) {
        const double t = lo + (q + 0.5) * (hi - lo) / 64.0;
        angular += std::pow(2.0 * std::sin(0.5 * t), delta - 1.0) * (hi - lo) / 64.0;
      }
      hi = lo;
    }
    CHECK(phi_delta_l1_norm(delta, rho, polar) ==
          doctest::Approx(radial * angular / kPi).epsilon(1e-4));
  }

  // Slopes: delta^{-1} and delta^{-1/p} laws carry the rho^delta prefactor
  // (exact math), so the measured slopes sit slightly above the limits.
  std::vector<double> inv_delta, l1s, mixeds;
  for (double delta : {0.4, 0.2, 0.1}) {
    inv_delta.push_back(1.0 / delta);
    l1s.push_back(phi_delta_l1_norm(delta, rho, polar));
    mixeds.push_back(phi_delta_mixed_norm(p, delta, rho, polar));
  }
  const double l1_slope = loglog_fit(inv_delta, l1s).slope;
  CHECK(l1_slope > 1.0);
  CHECK(l1_slope < 1.45);
  CHECK(loglog_fit(inv_delta, mixeds).slope == doctest::Approx(0.5).epsilon(0.3));

  // The generic sampled mixed norm agrees with the singularity-aware value
  // at moderate delta.
  const double delta = 0.4;
  auto [phi, omega] = phi_delta(p, delta, rho, polar);
  NormSpec spec{p, &omega, &polar};
  const double sampled = mixed_norm(phi, spec).value;
  const double aware = phi_delta_mixed_norm(p, delta, rho, polar);
  CHECK(sampled == doctest::Approx(aware).epsilon(0.15));

  // The reference block norm on the opposite square is delta-stable.
  std::vector<double> blocks;
  for (double d : {0.4, 0.2, 0.1}) {
    Weight w = omega_delta(p, d, polar.angular);
    std::vector<cplx> data(polar.radial_size() * polar.angular.size(), cplx(0.0));
    for (int i = 0; i < polar.radial_size(); ++i) {
      if (1.0 - polar.radii[i] >= rho) continue;
      for (int j = 0; j < polar.angular.size(); ++j) {
        double t = polar.angular.theta(j);
        if (t > kPi) t -= 2.0 * kPi;
        if (2.0 * std::abs(std::sin(0.5 * (t - kPi))) < rho)
          data[i * polar.angular.size() + j] = 1.0 - polar.radii[i] * polar.radii[i];
      }
    }
    DiskFunction block(polar, std::move(data));
    NormSpec s{p, &w, &polar};
    blocks.push_back(mixed_norm(block, s).value);
  }
  CHECK(blocks[2] / blocks[0] > 0.5);
  CHECK(blocks[2] / blocks[0] < 2.0);
}

TEST_CASE("log spike: value at origin, finite mixed norm, loglog growth") {
  PolarGrid polar = polar_grid(14, 256);
  DiskFunction phi = log_spike(polar);
  // Check the profile at the innermost node.
  CHECK(std::abs(phi.sample(0, 0) - 1.0 / std::log(2.0 / (1.0 - polar.radii[0] * polar.radii[0]))) <
        1e-12);
  NormSpec spec{2.0, nullptr, &polar};
  auto res = mixed_norm(phi, spec);
  CHECK_FALSE(res.divergence_flag);

  double prev = 0.0;
  for (int j = 4; j <= 13; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    const double value = abs_bergman_lower(phi, cplx(r, 0.0));
    CHECK(value > prev);
    prev = value;
    const double lower = std::log(std::log(2.0 / (1.0 - r * r)));
    CHECK(value >= 0.05 * lower);
  }
}
