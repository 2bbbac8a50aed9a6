#include "diskop/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "diskop/fft.hpp"
#include "diskop/sweep.hpp"

namespace diskop {

cplx HoloFunction::eval(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<cplx> HoloFunction::eval_radius(double r, const GridCircle& grid) const {
  const int n = grid.size();
  if (degree() >= n)
    throw std::invalid_argument("HoloFunction::eval_radius: degree >= grid size");
  std::vector<cplx> bins(n, cplx(0.0));
  double rk = 1.0;
  for (int k = 0; k <= degree(); ++k) {
    bins[k] = coeff_[k] * rk;
    rk *= r;
  }
  return dft_inverse(bins);
}

double HoloFunction::tail_mass_estimate() const {
  const int k = degree();
  if (k < 16) return 0.0;
  double total = 0.0;
  for (const auto& c : coeff_) total += std::norm(c);
  if (total == 0.0) return 0.0;
  const double a_end = std::abs(coeff_[k]);
  const double a_ref = std::abs(coeff_[k - 8]);
  if (a_end == 0.0) return 0.0;
  if (a_ref <= a_end) return std::norm(coeff_[k]) * k / total;  // no decay detected
  const double q = std::pow(a_end / a_ref, 1.0 / 8.0);
  const double tail = std::norm(coeff_[k]) * q * q / (1.0 - q * q);
  return tail / total;
}

DiskFunction::DiskFunction(const PolarGrid& grid, std::vector<cplx> data)
    : grid_(&grid), data_(std::move(data)) {
  if (static_cast<int>(data_.size()) != grid.radial_size() * grid.angular.size())
    throw std::invalid_argument("DiskFunction: sample count mismatch");
}

DiskFunction DiskFunction::from_radial(const PolarGrid& grid,
                                       const std::vector<cplx>& radial_values) {
  const int n = grid.angular.size();
  std::vector<cplx> data(grid.radial_size() * n);
  for (int i = 0; i < grid.radial_size(); ++i)
    for (int j = 0; j < n; ++j) data[i * n + j] = radial_values[i];
  return DiskFunction(grid, std::move(data));
}

HoloFunction cauchy(const BoundaryFunction& psi) {
  const int n = psi.size();
  const auto& c = psi.coefficients();
  std::vector<cplx> a(n / 2);
  for (int k = 0; k < n / 2; ++k) a[k] = c[k];
  return HoloFunction(std::move(a));
}

HoloFunction deriv_compose(const HoloFunction& f) {
  std::vector<cplx> a = f.coefficients();
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= (1.0 + static_cast<double>(k));
  return HoloFunction(std::move(a));
}

namespace {

// Fourier moments c_k = integral phi(w) conj(w)^k dnu(w), k = 0..K.
// Per-level contributions are stored and summed in level order so the
// result is bit-identical across runs and thread counts.
std::vector<cplx> disk_moments(const DiskFunction& phi, int kmax) {
  const PolarGrid& g = phi.grid();
  const int n = g.angular.size();
  const int levels = g.radial_size();
  std::vector<cplx> per_level(static_cast<std::size_t>(levels) * (kmax + 1));
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<cplx> row(n), hat(n);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (int i = 0; i < levels; ++i) {
      for (int j = 0; j < n; ++j) row[j] = phi.sample(i, j);
      dft_forward(std::span<const cplx>(row), std::span<cplx>(hat));
      const double r = g.radii[i];
      double rk = g.w_area[i];
      for (int k = 0; k <= kmax; ++k) {
        per_level[static_cast<std::size_t>(i) * (kmax + 1) + k] = rk * hat[k];
        rk *= r;
      }
    }
  }
  std::vector<cplx> c(kmax + 1, cplx(0.0));
  for (int i = 0; i < levels; ++i)
    for (int k = 0; k <= kmax; ++k) c[k] += per_level[static_cast<std::size_t>(i) * (kmax + 1) + k];
  return c;
}

}  // namespace

namespace {

int clamp_modes(int kmax, int n) {
  const int cap = n / 2 - 1;
  return (kmax < 0 || kmax > cap) ? cap : kmax;
}

}  // namespace

HoloFunction bergman(const DiskFunction& phi, int kmax) {
  const int n = phi.grid().angular.size();
  auto c = disk_moments(phi, clamp_modes(kmax, n));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= (1.0 + static_cast<double>(k));
  return HoloFunction(std::move(c));
}

DiskFunction q_operator(const DiskFunction& phi, int kmax) {
  const PolarGrid& g = phi.grid();
  const int n = g.angular.size();
  const int levels = g.radial_size();
  auto c = disk_moments(phi, clamp_modes(kmax, n));
  std::vector<cplx> data(levels * n);
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<cplx> bins(n), row(n);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (int i = 0; i < levels; ++i) {
      const double r = g.radii[i];
      const double factor = 1.0 - r * r;
      std::fill(bins.begin(), bins.end(), cplx(0.0));
      double rk = 1.0;
      for (std::size_t k = 0; k < c.size(); ++k) {
        const double mult = (1.0 + k) * (1.0 + k);
        bins[k] = mult * c[k] * rk;
        rk *= r;
      }
      dft_inverse(std::span<const cplx>(bins), std::span<cplx>(row));
      for (int j = 0; j < n; ++j) data[i * n + j] = factor * row[j];
    }
  }
  return DiskFunction(g, std::move(data));
}

BoundaryFunction g_function(const BoundaryFunction& psi, const PolarGrid& grid) {
  const int n = psi.size();
  if (grid.angular.size() != n)
    throw std::invalid_argument("g_function: polar grid angular size != psi grid");
  const auto& hat = psi.coefficients();
  const int levels = grid.radial_size();
  // Radial contributions accumulate in level order (bit-stable sums).
  std::vector<double> per_level(static_cast<std::size_t>(levels) * n);
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<cplx> bins(n), row(n);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (int i = 0; i < levels; ++i) {
      const double r = grid.radii[i];
      const double wr = grid.w_dr[i] * (1.0 - r * r);
      std::fill(bins.begin(), bins.end(), cplx(0.0));
      double rk = 1.0;
      for (int k = 0; k < n / 2; ++k) {
        bins[k] = (1.0 + k) * hat[k] * rk;
        rk *= r;
      }
      dft_inverse(std::span<const cplx>(bins), std::span<cplx>(row));
      for (int j = 0; j < n; ++j)
        per_level[static_cast<std::size_t>(i) * n + j] = wr * std::norm(row[j]);
    }
  }
  std::vector<double> gsq(n, 0.0);
  for (int i = 0; i < levels; ++i)
    for (int j = 0; j < n; ++j) gsq[j] += per_level[static_cast<std::size_t>(i) * n + j];
  std::vector<cplx> out(n);
  for (int j = 0; j < n; ++j) out[j] = std::sqrt(gsq[j]);
  return BoundaryFunction(psi.grid(), std::move(out));
}

double abs_bergman_lower(const DiskFunction& phi, cplx z) {
  const PolarGrid& g = phi.grid();
  const int n = g.angular.size();
  double acc = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : acc) schedule(static)
#endif
  for (int i = 0; i < g.radial_size(); ++i) {
    const double r = g.radii[i];
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const cplx w = std::polar(r, g.angular.theta(j));
      row += std::abs(phi.sample(i, j)) / std::norm(1.0 - z * std::conj(w));
    }
    acc += g.w_area[i] * row / n;
  }
  return acc;
}

BoundaryFunction hl_maximal(const BoundaryFunction& psi) {
  auto m = max_arc_average(psi.abs_samples());
  std::vector<cplx> out(m.begin(), m.end());
  return BoundaryFunction(psi.grid(), std::move(out));
}

BoundaryFunction weighted_maximal(const BoundaryFunction& psi, const Weight& omega) {
  if (omega.size() != psi.size())
    throw std::invalid_argument("weighted_maximal: weight grid != psi grid");
  auto av = psi.abs_samples();
  std::vector<double> vw(av.size());
  for (std::size_t j = 0; j < av.size(); ++j) vw[j] = av[j] * omega.sample(j);
  auto m = max_arc_average_weighted(vw, omega.samples());
  std::vector<cplx> out(m.begin(), m.end());
  return BoundaryFunction(psi.grid(), std::move(out));
}

BoundaryFunction sparse_T(const BoundaryFunction& psi, const SparseOperatorInput& input) {
  if (input.family == nullptr) throw std::invalid_argument("sparse_T: missing family");
  const GridCircle& grid = psi.grid();
  const int n = grid.size();
  PrefixSums prefix(psi.abs_samples());
  const double dilation = std::ldexp(1.0, input.dilation_level);

  std::vector<double> acc(n, 0.0);
  for (const auto& q : input.family->all()) {
    auto ball = q.containment_ball(dilation);
    auto range = ball.node_range(grid);
    if (range.count == 0) continue;
    const double avg = prefix.arc_sum(range.first, range.count) / range.count;
    const double sq = avg * avg;
    for (int d = 0; d < q.count; ++d) acc[grid.wrap(q.start + d)] += sq;
  }
  std::vector<cplx> out(n);
  for (int j = 0; j < n; ++j) out[j] = std::sqrt(acc[j]);
  return BoundaryFunction(grid, std::move(out));
}

KernelSmoothness kernel_smoothness_check(cplx zeta, cplx zeta_prime, cplx xi, double rho_r) {
  KernelSmoothness out;
  const double sep = std::abs(1.0 - zeta * std::conj(xi));
  const double close = std::abs(1.0 - zeta * std::conj(zeta_prime));
  out.precondition = sep >= kKernelK1 * close;
  auto kernel = [&](cplx z) { return 1.0 / ((1.0 - z * std::conj(xi)) * (1.0 - z * std::conj(xi))); };
  out.lhs = std::abs(kernel(rho_r * zeta) - kernel(rho_r * zeta_prime));
  out.rhs = kKernelK2 * std::sqrt(close / sep) / (sep * sep);
  return out;
}

}  // namespace diskop
