#include "diskop/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diskop {

namespace {

double power_integrand(double s, double theta) {
  return std::pow(2.0 * std::sin(0.5 * theta), s);
}

// integral of (2 sin(theta/2))^s over [a, b], 0 <= a < b <= pi.
double power_integral(double s, double a, double b) {
  static thread_local std::vector<double> gx, gw;
  if (gx.empty()) gauss_legendre(8, gx, gw);
  auto panel = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i)
      acc += gw[i] * power_integrand(s, mid + half * gx[i]);
    return half * acc;
  };
  if (a > 0.0) return panel(a, b);
  // Geometric grading toward the singularity, analytic power-law tail below.
  double acc = 0.0;
  double hi = b;
  for (int j = 0; j < 60 && hi > 1e-300; ++j) {
    double lo = 0.5 * hi;
    acc += panel(lo, hi);
    hi = lo;
  }
  if (s > -1.0) acc += std::pow(hi, s + 1.0) / (s + 1.0);  // (2sin(t/2))^s ~ t^s below hi
  return acc;
}

}  // namespace

double power_cell_average(double s, double a, double b) {
  if (!(b > a)) throw std::invalid_argument("power_cell_average: empty cell");
  // Split at 0 by symmetry |2 sin(theta/2)| = |2 sin(-theta/2)|.
  double integral = 0.0;
  if (a < 0.0 && b > 0.0)
    integral = power_integral(s, 0.0, -a) + power_integral(s, 0.0, b);
  else if (b <= 0.0)
    integral = power_integral(s, -b, -a);
  else
    integral = power_integral(s, a, b);
  return integral / (b - a);
}

Weight::Weight(GridCircle grid, std::vector<double> samples, std::optional<PowerWeight> tag)
    : grid_(grid), samples_(std::move(samples)), tag_(tag), prefix_(samples_) {
  if (static_cast<int>(samples_.size()) != grid_.size())
    throw std::invalid_argument("Weight: sample count != grid size");
  for (double v : samples_)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("Weight: samples must be strictly positive and finite");
}

Weight Weight::power(const GridCircle& grid, double exponent) {
  const int n = grid.size();
  const double step = grid.step();
  std::vector<double> s(n);
  for (int j = 0; j < n; ++j) {
    double c = grid.theta(j);
    if (c > kPi) c -= 2.0 * kPi;
    s[j] = power_cell_average(exponent, c - 0.5 * step, c + 0.5 * step);
  }
  return Weight(grid, std::move(s), PowerWeight{exponent});
}

Weight Weight::constant(const GridCircle& grid, double value) {
  return Weight(grid, std::vector<double>(grid.size(), value));
}

double Weight::arc_integral(int start, int count) const {
  return prefix_.arc_sum(start, count) * grid_.node_measure();
}

double Weight::total_mass() const { return prefix_.total() * grid_.node_measure(); }

namespace {

Arc arc_from_range(const GridCircle& grid, int start, int count) {
  if (count >= grid.size()) return Arc{cplx(1.0, 0.0), 2.0};
  const double step = grid.step();
  const double center = step * (start + 0.5 * (count - 1));
  const double half = step * (2.0 * count - 1.0) / 4.0;  // between (m-1)/2 and m/2 cells
  return Arc{std::polar(1.0, center), 2.0 * std::sin(0.5 * half)};
}

}  // namespace

ApReport ap_constant(const Weight& omega, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("ap_constant: p must be > 1");
  const Weight dual = dual_weight(omega, p);
  const GridCircle& grid = omega.grid();
  const int n = grid.size();
  const double inv_n = grid.node_measure();

  double best = -1.0;
  int best_s = 0, best_m = n;
  // Ties broken toward the lexicographically smallest (count, start) so the
  // argmax arc is reproducible across thread schedules.
  auto better = [](double v, int s, int m, double bv, int bs, int bm) {
    if (v != bv) return v > bv;
    return m != bm ? m < bm : s < bs;
  };
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    double lbest = -1.0;
    int lbest_s = 0, lbest_m = n;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16) nowait
#endif
    for (int m = 1; m <= n; ++m) {
      const double measure = m * inv_n;
      const double scale = std::pow(measure, -p);
      const int smax = (m == n) ? 1 : n;
      const bool p2 = (p == 2.0);
      for (int s = 0; s < smax; ++s) {
        const double wa = omega.arc_integral(s, m);
        const double wd = dual.arc_integral(s, m);
        const double v = (p2 ? wa * wd : wa * std::pow(wd, p - 1.0)) * scale;
        if (!std::isfinite(v)) {
          throw std::runtime_error("ap_constant: non-finite value on arc start=" +
                                   std::to_string(s) + " count=" + std::to_string(m));
        }
        if (better(v, s, m, lbest, lbest_s, lbest_m)) {
          lbest = v;
          lbest_s = s;
          lbest_m = m;
        }
      }
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    if (better(lbest, lbest_s, lbest_m, best, best_s, best_m)) {
      best = lbest;
      best_s = lbest_s;
      best_m = lbest_m;
    }
  }
  ApReport rep;
  rep.p = p;
  rep.value = best;
  rep.grid_n = n;
  rep.argmax_start = best_s;
  rep.argmax_count = best_m;
  rep.argmax = arc_from_range(grid, best_s, best_m);
  return rep;
}

double a1_constant(const Weight& omega) {
  const auto m = max_arc_average(omega.samples());
  double best = 0.0;
  for (int j = 0; j < omega.size(); ++j) best = std::max(best, m[j] / omega.sample(j));
  return best;
}

Weight dual_weight(const Weight& omega, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("dual_weight: p must be > 1");
  const double pprime = p / (p - 1.0);
  if (omega.tag()) {
    return Weight::power(omega.grid(), -omega.tag()->exponent * pprime / p);
  }
  std::vector<double> s(omega.size());
  for (int j = 0; j < omega.size(); ++j) s[j] = std::pow(omega.sample(j), -pprime / p);
  return Weight(omega.grid(), std::move(s));
}

Weight omega_delta(double p, double delta, const GridCircle& grid) {
  if (!(p > 1.0) || !(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("omega_delta: need p > 1 and 0 < delta < 1");
  return Weight::power(grid, (p - 1.0) * (1.0 - delta));
}

Weight rubio_majorant(const Weight& phi, double q, double tol) {
  if (!(q > 1.0)) throw std::invalid_argument("rubio_majorant: q must be > 1");
  double c = 4.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double bound = c * q;
    std::vector<double> sum = phi.samples();
    std::vector<double> term = phi.samples();
    bool converged = false;
    const double scale = 1.0 / (2.0 * bound);
    for (int k = 1; k <= 64; ++k) {
      term = max_arc_average(term);  // now M^k(phi)
      const double factor = std::pow(scale, k);
      double sup = 0.0, inf = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < sum.size(); ++j) {
        sum[j] += term[j] * factor;
        sup = std::max(sup, term[j] * factor);
        inf = std::min(inf, sum[j]);
      }
      if (sup < tol * inf) {
        converged = true;
        break;
      }
    }
    if (!converged) throw std::runtime_error("rubio_majorant: series did not converge in 64 terms");
    Weight w(phi.grid(), std::move(sum));
    if (a1_constant(w) <= 2.0 * bound * (1.0 + 1e-9)) return w;
    c *= 2.0;
  }
  throw std::runtime_error("rubio_majorant: a-posteriori A_1 check kept failing");
}

double extrapolation_factor(double ap, double p, double p0, double m_norm_p,
                            double m_norm_dual,
                            const std::function<double(double)>& big_n) {
  if (!(p > 1.0) || !(p0 > 1.0))
    throw std::invalid_argument("extrapolation_factor: need p, p0 > 1");
  if (p == p0) return big_n(ap);
  if (p < p0) return big_n(ap * std::pow(2.0 * m_norm_p, p0 - p));
  return big_n(std::pow(ap, (p0 - 1.0) / (p - 1.0)) *
               std::pow(2.0 * m_norm_dual, (p - p0) / (p - 1.0)));
}

void save_weight_csv(const Weight& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_weight_csv: cannot open " + path);
  out.precision(17);
  if (w.tag()) {
    out << "power s=" << w.tag()->exponent << "\n";
    return;
  }
  for (int j = 0; j < w.size(); ++j) out << w.grid().theta(j) << "," << w.sample(j) << "\n";
}

Weight load_weight_csv(const std::string& path, const GridCircle& grid) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_weight_csv: cannot open " + path);
  std::string line;
  std::vector<double> samples;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line.rfind("power", 0) == 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw std::runtime_error("load_weight_csv: bad power header");
      return Weight::power(grid, std::stod(line.substr(eq + 1)));
    }
    first = false;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("load_weight_csv: bad row: " + line);
    samples.push_back(std::stod(line.substr(comma + 1)));
  }
  if (static_cast<int>(samples.size()) != grid.size())
    throw std::runtime_error("load_weight_csv: row count != grid size");
  return Weight(grid, std::move(samples));
}

}  // namespace diskop
