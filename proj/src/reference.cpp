#include "diskop/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace diskop::reference {

std::vector<double> hl_maximal_bruteforce(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  std::vector<double> out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int m = 1; m <= n; ++m) {
      for (int s = j - m + 1; s <= j; ++s) {
        double sum = 0.0;
        for (int d = 0; d < m; ++d) {
          int idx = (s + d) % n;
          if (idx < 0) idx += n;
          sum += std::abs(values[idx]);
        }
        out[j] = std::max(out[j], sum / m);
      }
    }
  }
  return out;
}

std::vector<double> weighted_maximal_bruteforce(std::span<const double> values,
                                                std::span<const double> weight) {
  const int n = static_cast<int>(values.size());
  std::vector<double> out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int m = 1; m <= n; ++m) {
      for (int s = j - m + 1; s <= j; ++s) {
        double num = 0.0, den = 0.0;
        for (int d = 0; d < m; ++d) {
          int idx = (s + d) % n;
          if (idx < 0) idx += n;
          num += std::abs(values[idx]) * weight[idx];
          den += weight[idx];
        }
        out[j] = std::max(out[j], num / den);
      }
    }
  }
  return out;
}

double ap_constant_bruteforce(const Weight& omega, double p) {
  const int n = omega.size();
  const double pprime_ratio = p / (p - 1.0);
  std::vector<double> dual(n);
  if (omega.tag()) {
    Weight d = dual_weight(omega, p);
    for (int j = 0; j < n; ++j) dual[j] = d.sample(j);
  } else {
    for (int j = 0; j < n; ++j) dual[j] = std::pow(omega.sample(j), -pprime_ratio / p);
  }
  double best = 0.0;
  for (int s = 0; s < n; ++s) {
    for (int m = 1; m <= n; ++m) {
      double wa = 0.0, wd = 0.0;
      for (int d = 0; d < m; ++d) {
        int idx = (s + d) % n;
        wa += omega.sample(idx);
        wd += dual[idx];
      }
      wa /= n;
      wd /= n;
      const double measure = static_cast<double>(m) / n;
      best = std::max(best, wa * std::pow(wd, p - 1.0) / std::pow(measure, p));
      if (m == n) break;
    }
  }
  return best;
}

double a1_constant_bruteforce(const Weight& omega) {
  auto m = hl_maximal_bruteforce(omega.samples());
  double best = 0.0;
  for (int j = 0; j < omega.size(); ++j) best = std::max(best, m[j] / omega.sample(j));
  return best;
}

double rearrangement_bruteforce(std::span<const double> values, int grid_n, double t) {
  // inf over alpha of {measure(|v| > alpha) <= t}, alpha scanned over the
  // distinct |values| (the infimum is attained at one of them or at 0).
  std::vector<double> mags(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) mags[i] = std::abs(values[i]);
  std::sort(mags.begin(), mags.end());
  auto measure_above = [&](double alpha) {
    int count = 0;
    for (double m : mags) count += (m > alpha);
    return static_cast<double>(count) / grid_n;
  };
  if (measure_above(0.0) <= t) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (double alpha : mags)
    if (measure_above(alpha) <= t) best = std::min(best, alpha);
  return best;
}

double median_bruteforce(std::span<const double> values) {
  const int m = static_cast<int>(values.size());
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  // Scan candidates from below; return the smallest value satisfying both
  // defining inequalities (the lower middle order statistic).
  for (double c : sorted) {
    int above = 0, below = 0;
    for (double v : values) {
      above += (v > c);
      below += (v < c);
    }
    if (2 * above <= m && 2 * below <= m) return c;
  }
  throw std::logic_error("median_bruteforce: no candidate satisfied the inequalities");
}

double local_osc_bruteforce(std::span<const double> values, double lambda) {
  const int m = static_cast<int>(values.size());
  std::vector<double> candidates(values.begin(), values.end());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) candidates.push_back(0.5 * (values[i] + values[j]));
  const int rank = static_cast<int>(std::floor(lambda * m + 1e-9));
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> dev(m);
  for (double c : candidates) {
    for (int i = 0; i < m; ++i) dev[i] = std::abs(values[i] - c);
    std::sort(dev.begin(), dev.end(), std::greater<double>());
    best = std::min(best, rank < m ? dev[rank] : 0.0);
  }
  return best;
}

cplx cauchy_kernel_quadrature(const BoundaryFunction& psi, cplx z) {
  const int n = psi.size();
  cplx acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx zeta = psi.grid().node(j);
    acc += psi.sample(j) / (1.0 - z * std::conj(zeta));
  }
  return acc / static_cast<double>(n);
}

cplx bergman_kernel_quadrature(const DiskFunction& phi, cplx z) {
  const PolarGrid& g = phi.grid();
  const int n = g.angular.size();
  cplx acc = 0.0;
  for (int i = 0; i < g.radial_size(); ++i) {
    cplx row = 0.0;
    for (int j = 0; j < n; ++j) {
      const cplx w = std::polar(g.radii[i], g.angular.theta(j));
      const cplx d = 1.0 - z * std::conj(w);
      row += phi.sample(i, j) / (d * d);
    }
    acc += g.w_area[i] * row;
  }
  return acc / static_cast<double>(n);
}

std::vector<double> g_function_serial(const BoundaryFunction& psi, const PolarGrid& grid) {
  const int n = psi.size();
  const auto& hat = psi.coefficients();
  std::vector<double> out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < grid.radial_size(); ++i) {
      const double r = grid.radii[i];
      cplx val = 0.0;
      double rk = 1.0;
      for (int k = 0; k < n / 2; ++k) {
        val += (1.0 + k) * hat[k] * rk * std::polar(1.0, k * psi.grid().theta(j));
        rk *= r;
      }
      acc += grid.w_dr[i] * (1.0 - r * r) * std::norm(val);
    }
    out[j] = std::sqrt(acc);
  }
  return out;
}

std::vector<double> f_delta_p_convolution(double a, int K) {
  // (1+z)^a: b_{k+1} = b_k (a-k)/(k+1); (1-z)^{-a}: e_{k+1} = e_k (a+k)/(k+1).
  std::vector<double> b(K + 1), e(K + 1);
  b[0] = e[0] = 1.0;
  for (int k = 0; k < K; ++k) {
    b[k + 1] = b[k] * (a - k) / (k + 1.0);
    e[k + 1] = e[k] * (a + k) / (k + 1.0);
  }
  std::vector<double> c(K + 1, 0.0);
  for (int k = 0; k <= K; ++k)
    for (int j = 0; j <= k; ++j) c[k] += b[j] * e[k - j];
  return c;
}

}  // namespace diskop::reference
