#include "diskop/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diskop/fft.hpp"

namespace diskop {

namespace {

double weight_at(const NormSpec& spec, int j) {
  return spec.weight ? spec.weight->sample(j) : 1.0;
}

}  // namespace

double lp_norm(const BoundaryFunction& psi, const NormSpec& spec) {
  if (spec.weight && spec.weight->size() != psi.size())
    throw std::invalid_argument("lp_norm: weight grid != psi grid");
  const int n = psi.size();
  double acc = 0.0;
  for (int j = 0; j < n; ++j)
    acc += std::pow(std::abs(psi.sample(j)), spec.p) * weight_at(spec, j);
  return std::pow(acc / n, 1.0 / spec.p);
}

double hp_norm_boundary(const BoundaryFunction& boundary, const NormSpec& spec) {
  return lp_norm(boundary, spec);
}

NormResult hp_norm(const HoloFunction& f, const NormSpec& spec) {
  const GridCircle grid = spec.weight           ? spec.weight->grid()
                          : spec.polar != nullptr ? spec.polar->angular
                                                  : GridCircle(4096);
  NormResult out;
  out.tail_mass = f.tail_mass_estimate();

  double abs_total = 0.0, abs_tail = 0.0;
  const int k = f.degree();
  for (int i = 0; i <= k; ++i) {
    const double a = std::abs(f.coefficient(i));
    abs_total += a;
    if (i > k - std::max(1, k / 8)) abs_tail += a;
  }
  double r = 1.0;
  if (k >= 8 && abs_tail > 1e-8 * abs_total) {
    out.abel_flag = true;
    r = 1.0 - (spec.polar ? spec.polar->eps_r : std::ldexp(1.0, -14));
  }
  BoundaryFunction boundary(grid, f.eval_radius(r, grid));
  out.value = lp_norm(boundary, spec);
  return out;
}

namespace {

// Weighted p-norm over angles of sqrt(inner), with a divergence detector:
// recompute with the last two radial levels dropped and flag when the value
// is truncation-sensitive.
NormResult mixed_from_inner(const std::vector<double>& inner,
                            const std::vector<double>& inner_dropped, int depth,
                            const NormSpec& spec, int n) {
  auto aggregate = [&](const std::vector<double>& in) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += std::pow(in[j], spec.p / 2.0) * weight_at(spec, j);
    return std::pow(acc / n, 1.0 / spec.p);
  };
  NormResult out;
  out.value = aggregate(inner);
  const double dropped = aggregate(inner_dropped);
  if (out.value > 0.0) {
    const double rel = std::abs(out.value - dropped) / out.value;
    out.divergence_flag = rel > 0.5 / depth;
  }
  return out;
}

}  // namespace

NormResult mixed_norm(const DiskFunction& phi, const NormSpec& spec) {
  const PolarGrid& g = phi.grid();
  const int n = g.angular.size();
  if (spec.weight && spec.weight->size() != n)
    throw std::invalid_argument("mixed_norm: weight grid != angular grid");
  // Radial nodes in the last two dyadic levels are excluded from the
  // truncation-sensitivity probe.
  const double r_cut = 1.0 - 4.0 * g.eps_r;
  std::vector<double> inner(n, 0.0), inner_drop(n, 0.0);
  for (int i = 0; i < g.radial_size(); ++i) {
    const double w = g.w_lp[i];
    const bool keep = g.radii[i] <= r_cut;
    for (int j = 0; j < n; ++j) {
      const double v = w * std::norm(phi.sample(i, j));
      inner[j] += v;
      if (keep) inner_drop[j] += v;
    }
  }
  return mixed_from_inner(inner, inner_drop, g.depth, spec, n);
}

DiskFunction q_profile(const HoloFunction& f, const PolarGrid& grid) {
  const int n = grid.angular.size();
  if (f.degree() >= n)
    throw std::invalid_argument("q_profile: degree >= angular grid size");
  std::vector<cplx> data(grid.radial_size() * n);
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<cplx> bins(n), row(n);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (int i = 0; i < grid.radial_size(); ++i) {
      const double r = grid.radii[i];
      const double factor = 1.0 - r * r;
      std::fill(bins.begin(), bins.end(), cplx(0.0));
      double rk = 1.0;
      for (int k = 0; k <= f.degree(); ++k) {
        bins[k] = (1.0 + k) * f.coefficient(k) * rk;
        rk *= r;
      }
      dft_inverse(std::span<const cplx>(bins), std::span<cplx>(row));
      for (int j = 0; j < n; ++j) data[i * n + j] = factor * row[j];
    }
  }
  return DiskFunction(grid, std::move(data));
}

NormResult triebel_norm(const HoloFunction& f, const NormSpec& spec) {
  if (!spec.polar) throw std::invalid_argument("triebel_norm: spec.polar required");
  NormResult out = mixed_norm(q_profile(f, *spec.polar), spec);
  out.tail_mass = f.tail_mass_estimate();
  return out;
}

cplx pairing_disk(const DiskFunction& phi, const DiskFunction& chi) {
  const PolarGrid& g = phi.grid();
  if (&chi.grid() != &g) throw std::invalid_argument("pairing_disk: grids differ");
  const int n = g.angular.size();
  cplx acc = 0.0;
  for (int i = 0; i < g.radial_size(); ++i) {
    cplx row = 0.0;
    for (int j = 0; j < n; ++j) row += phi.sample(i, j) * std::conj(chi.sample(i, j));
    acc += g.w_lp[i] * row;
  }
  return acc / static_cast<double>(n);
}

cplx pairing_circle(const BoundaryFunction& psi, const BoundaryFunction& chi) {
  if (psi.size() != chi.size()) throw std::invalid_argument("pairing_circle: grids differ");
  cplx acc = 0.0;
  for (int j = 0; j < psi.size(); ++j) acc += psi.sample(j) * std::conj(chi.sample(j));
  return acc / static_cast<double>(psi.size());
}

double lp_disk_norm(const DiskFunction& phi, double p) {
  const PolarGrid& g = phi.grid();
  const int n = g.angular.size();
  double acc = 0.0;
  for (int i = 0; i < g.radial_size(); ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::pow(std::abs(phi.sample(i, j)), p);
    acc += g.w_area[i] * row;
  }
  return std::pow(acc / n, 1.0 / p);
}

}  // namespace diskop
