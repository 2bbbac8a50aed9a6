#include "diskop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diskop {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_unit(cplx z, const char* what) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12)
    throw std::domain_error(std::string(what) + ": input not on the unit circle");
}

}  // namespace

GridCircle::GridCircle(int n) : n_(n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("GridCircle: N must be a power of two");
}

double rho(cplx zeta, cplx eta) {
  check_unit(zeta, "rho");
  check_unit(eta, "rho");
  return std::abs(1.0 - zeta * std::conj(eta));
}

double Arc::half_width() const { return 2.0 * std::asin(std::min(radius, 2.0) / 2.0); }

double Arc::measure() const { return full_circle() ? 1.0 : half_width() / kPi; }

bool Arc::contains(cplx eta) const {
  if (full_circle()) return true;
  return std::abs(1.0 - center * std::conj(eta)) < radius;
}

Arc::NodeRange Arc::node_range(const GridCircle& grid) const {
  const int n = grid.size();
  if (full_circle()) return {0, n};
  // Scan the candidate window around the center angle with the exact
  // membership predicate so that strict-inequality boundaries match
  // contains() everywhere.
  const double step = grid.step();
  const double theta_c = std::arg(center);
  const int jc = grid.wrap(static_cast<int>(std::lround(theta_c / step)));
  const int span = static_cast<int>(half_width() / step) + 2;
  int lo = 0;
  for (int d = -std::min(span, n / 2); d <= 0; ++d) {
    if (contains(grid.node(jc + d))) {
      lo = d;
      break;
    }
  }
  if (!contains(grid.node(jc + lo))) return {0, 0};
  int hi = 0;
  for (int d = std::min(span, n / 2 - 1); d >= 0; --d) {
    if (contains(grid.node(jc + d))) {
      hi = d;
      break;
    }
  }
  // Extend to make sure no interior node is missed near the scan edges.
  while (lo > -n / 2 && contains(grid.node(jc + lo - 1))) --lo;
  while (hi < n / 2 - 1 && contains(grid.node(jc + hi + 1))) ++hi;
  int count = hi - lo + 1;
  if (count >= n) return {0, n};
  return {grid.wrap(jc + lo), count};
}

Arc arc_ball(cplx zeta, double r) {
  check_unit(zeta, "arc_ball");
  if (!(r > 0.0)) throw std::domain_error("arc_ball: radius must be positive");
  return Arc{zeta, r};
}

PolarGrid polar_grid(int depth, int n) {
  if (depth < 4) throw std::invalid_argument("polar_grid: depth must be >= 4");
  PolarGrid g{GridCircle(n), depth, std::ldexp(1.0, -depth), {}, {}, {}, {}};

  constexpr int kOrder = 16;
  std::vector<double> xl, wl, xg, wg;
  // Innermost panel: interior Gauss nodes (radii stay in (0,1)); later
  // panels: Lobatto, so the largest node is exactly 1 - 2^-depth.
  gauss_lobatto(kOrder, xl, wl);
  gauss_legendre(kOrder, xg, wg);

  for (int k = 0; k < depth; ++k) {
    // Panel in r: [1 - 2^-k, 1 - 2^-(k+1)].
    const double a = 1.0 - std::ldexp(1.0, -k);
    const double b = 1.0 - std::ldexp(1.0, -(k + 1));
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const auto& x = (k == 0) ? xg : xl;
    const auto& w = (k == 0) ? wg : wl;
    for (int i = 0; i < kOrder; ++i) {
      const double r = mid + half * x[i];
      const double wr = half * w[i];
      if (!g.radii.empty() && std::abs(r - g.radii.back()) < 1e-15) {
        g.w_dr.back() += wr;  // shared Lobatto endpoint between panels
      } else {
        g.radii.push_back(r);
        g.w_dr.push_back(wr);
      }
    }
  }
  g.w_area.resize(g.radii.size());
  g.w_lp.resize(g.radii.size());
  for (std::size_t i = 0; i < g.radii.size(); ++i) {
    const double r = g.radii[i];
    g.w_area[i] = 2.0 * r * g.w_dr[i];
    g.w_lp[i] = (r < 1.0) ? g.w_area[i] / (1.0 - r * r) : 0.0;
  }
  return g;
}

bool CarlesonSquare::contains(cplx z) const {
  const double h = height();
  const double s = std::abs(z);
  if (s == 0.0) return false;
  if (1.0 - s > h) return false;
  return std::abs(1.0 - (z / s) * std::conj(direction())) <= h;
}

double bprime_metric(cplx z, cplx w) {
  const double rz = std::abs(z), rw = std::abs(w);
  if (rz == 0.0 || rw == 0.0) throw std::domain_error("bprime_metric: origin excluded");
  const double radial = std::abs(rz - rw);
  const double angular = std::abs(1.0 - (z / rz) * std::conj(w / rw));
  return std::max(radial, angular);
}

namespace {

double legendre(int n, double x, double* dp = nullptr) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    if (dp) *dp = 0.0;
    return 1.0;
  }
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  if (dp) *dp = n * (x * p1 - p0) / (x * x - 1.0);
  return p1;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double dp;
      double p = legendre(n, x, &dp);
      double dx = -p / dp;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double dp;
    legendre(n, x, &dp);
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

void gauss_lobatto(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 2) throw std::invalid_argument("gauss_lobatto: need n >= 2");
  nodes.resize(n);
  weights.resize(n);
  nodes[0] = -1.0;
  nodes[n - 1] = 1.0;
  const double we = 2.0 / (n * (n - 1.0));
  weights[0] = weights[n - 1] = we;
  // Interior nodes are the roots of P'_{n-1}; Newton on the derivative with
  // the second derivative from Legendre's ODE.
  for (int i = 1; i < n - 1; ++i) {
    double x = std::cos(kPi * (n - 1 - i) / (n - 1.0));  // increasing order
    for (int it = 0; it < 100; ++it) {
      double dp;
      double p = legendre(n - 1, x, &dp);
      // P''_{n-1} via (1-x^2) P'' = 2x P' - n(n-1) P
      double ddp = (2.0 * x * dp - (n - 1.0) * n * p) / (1.0 - x * x);
      double dx = -dp / ddp;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    double p = legendre(n - 1, x);
    weights[i] = 2.0 / (n * (n - 1.0) * p * p);
  }
}

}  // namespace diskop
