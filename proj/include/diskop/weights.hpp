#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diskop/geometry.hpp"
#include "diskop/sweep.hpp"

namespace diskop {

/// Closed-form tag for omega(e^{i theta}) = |1 - e^{i theta}|^s.
struct PowerWeight {
  double exponent = 0.0;
};

/// Strictly positive samples on a GridCircle with cached prefix sums for
/// O(1) arc integrals. Power weights are sampled as exact per-cell averages
/// of the closed form, which keeps arc integrals of the singular factor
/// faithful at every delta (the node value at theta = 0 stays finite and
/// carries the full cell mass).
class Weight {
 public:
  Weight(GridCircle grid, std::vector<double> samples,
         std::optional<PowerWeight> tag = std::nullopt);

  /// Cell-averaged power weight |1 - e^{i theta}|^s.
  static Weight power(const GridCircle& grid, double exponent);
  static Weight constant(const GridCircle& grid, double value = 1.0);

  const GridCircle& grid() const { return grid_; }
  int size() const { return grid_.size(); }
  const std::vector<double>& samples() const { return samples_; }
  double sample(int j) const { return samples_[grid_.wrap(j)]; }
  const std::optional<PowerWeight>& tag() const { return tag_; }

  /// Integral of omega over the wrapped node range (node measure 1/N).
  double arc_integral(int start, int count) const;
  double total_mass() const;

 private:
  GridCircle grid_;
  std::vector<double> samples_;
  std::optional<PowerWeight> tag_;
  PrefixSums prefix_;
};

struct ApReport {
  double p = 0.0;
  double value = 0.0;
  Arc argmax{cplx(1.0, 0.0), 2.0};
  int grid_n = 0;
  int argmax_start = 0;
  int argmax_count = 0;
};

/// Discrete Muckenhoupt constant: supremum of
///   omega(B) * omega'(B)^{p-1} / |B|^p
/// over all arcs with both endpoints at grid nodes (O(N^2) via prefix sums).
ApReport ap_constant(const Weight& omega, double p);

/// [omega]_{A_1} = max_j M(omega)(zeta_j) / omega(zeta_j) with the
/// grid-endpoint-arc maximal function.
double a1_constant(const Weight& omega);

/// omega' = omega^{-p'/p}. Power tags propagate (s -> -s p'/p) and are
/// resampled from the closed form; untagged weights dualize pointwise.
Weight dual_weight(const Weight& omega, double p);

/// The power-weight family omega_delta = |1 - e^{i theta}|^{(p-1)(1-delta)}.
Weight omega_delta(double p, double delta, const GridCircle& grid);

/// Rubio de Francia majorant: truncated series
///   omega = sum_k M^k(phi) / (2B)^k,  B = operational bound on ||M||_{L^q'}.
/// Starts from B = 4q and doubles the constant until the a-posteriori check
/// [omega]_{A_1} <= 2B passes. Guarantees phi <= omega pointwise.
Weight rubio_majorant(const Weight& phi, double q, double tol);

/// The extrapolation constant K(w) as a function of the supplied monotone N.
double extrapolation_factor(double ap, double p, double p0, double m_norm_p,
                            double m_norm_dual,
                            const std::function<double(double)>& big_n);

/// CSV serialization: rows "theta,omega"; power weights as the single
/// header line "power s=<exponent>".
void save_weight_csv(const Weight& w, const std::string& path);
Weight load_weight_csv(const std::string& path, const GridCircle& grid);

/// Cell average of |1 - e^{i theta}|^s over [a, b] (helper shared with the
/// extremal module; exact to ~1e-12 for any s > -1).
double power_cell_average(double s, double a, double b);

}  // namespace diskop
