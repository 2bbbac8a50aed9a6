#pragma once

#include <span>
#include <vector>

#include "diskop/boundary.hpp"
#include "diskop/dyadic.hpp"
#include "diskop/geometry.hpp"
#include "diskop/weights.hpp"

namespace diskop {

/// Truncated Taylor coefficients a_k, 0 <= k <= K, of a holomorphic function.
class HoloFunction {
 public:
  HoloFunction() = default;
  explicit HoloFunction(std::vector<cplx> coeff) : coeff_(std::move(coeff)) {}

  int degree() const { return static_cast<int>(coeff_.size()) - 1; }
  const std::vector<cplx>& coefficients() const { return coeff_; }
  cplx coefficient(int k) const {
    return (k >= 0 && k < static_cast<int>(coeff_.size())) ? coeff_[k] : cplx(0.0);
  }

  /// Horner evaluation at a point of the closed disk.
  cplx eval(cplx z) const;
  /// Samples of f(r e^{i theta_j}) on a circle grid (single inverse DFT).
  std::vector<cplx> eval_radius(double r, const GridCircle& grid) const;
  /// Estimated relative tail mass sum_{k>K}|a_k|^2 by a geometric fit on the
  /// last coefficients; 0 when the tail is already negligible.
  double tail_mass_estimate() const;

 private:
  std::vector<cplx> coeff_;
};

/// Complex samples phi(r_i, theta_j) on a PolarGrid, row-major in the radial
/// index: sample(i, j) = data[i * N + j].
class DiskFunction {
 public:
  DiskFunction(const PolarGrid& grid, std::vector<cplx> data);
  static DiskFunction from_radial(const PolarGrid& grid,
                                  const std::vector<cplx>& radial_values);

  const PolarGrid& grid() const { return *grid_; }
  cplx sample(int i, int j) const { return data_[i * grid_->angular.size() + j]; }
  cplx& sample(int i, int j) { return data_[i * grid_->angular.size() + j]; }
  const std::vector<cplx>& data() const { return data_; }

 private:
  const PolarGrid* grid_;
  std::vector<cplx> data_;
};

/// Cauchy projection: a_k = psi_hat(k) for 0 <= k < N/2; the kernel
/// 1/(1 - z conj(zeta)) keeps exactly the analytic Fourier modes.
HoloFunction cauchy(const BoundaryFunction& psi);

/// (I + R) as the coefficient multiplier a_k -> (1+k) a_k.
HoloFunction deriv_compose(const HoloFunction& f);

/// Bergman operator via Fourier moments: a_k = (k+1) c_k with
/// c_k = integral phi(w) conj(w)^k dnu(w), one DFT per radial level and the
/// area-weighted radial sum. kmax < 0 means the cap N/2 - 1.
HoloFunction bergman(const DiskFunction& phi, int kmax = -1);

/// Q(phi)(z) = (1 - |z|^2) (I + R) B(phi)(z) sampled on phi's polar grid.
DiskFunction q_operator(const DiskFunction& phi, int kmax = -1);

/// Littlewood-Paley square function of (I+R)C(psi) along radii, with the
/// grid's plain-dr radial weights:
///   G(psi)(theta)^2 = integral |(I+R)C(psi)(r e^{i theta})|^2 (1-r^2) dr.
BoundaryFunction g_function(const BoundaryFunction& psi, const PolarGrid& grid);

/// Integral operator with the absolute Bergman kernel at one point:
/// |B|(phi)(z) = integral |phi(w)| / |1 - z conj(w)|^2 dnu(w).
double abs_bergman_lower(const DiskFunction& phi, cplx z);

/// Nonisotropic Hardy-Littlewood maximal function over grid-endpoint arcs.
BoundaryFunction hl_maximal(const BoundaryFunction& psi);

/// Weighted maximal function M_omega over the same arc family.
BoundaryFunction weighted_maximal(const BoundaryFunction& psi, const Weight& omega);

struct SparseOperatorInput {
  const SparseFamily* family = nullptr;
  int dilation_level = 0;  // l >= 0; arcs 2^l B(Q) clamp to the full circle
};

/// T_l^S(psi)(zeta) = ( sum_{Q in S, zeta in Q} (avg_{2^l B(Q)} |psi|)^2 )^{1/2}.
BoundaryFunction sparse_T(const BoundaryFunction& psi, const SparseOperatorInput& input);

/// Bergman-kernel smoothness data (exponent n+1 = 2): returns
///   lhs = |K(rho_r zeta, xi) - K(rho_r zeta', xi)|
///   rhs = K2 * (|1 - zeta conj(zeta')| / |1 - zeta conj(xi)|)^{1/2}
///                                        / |1 - zeta conj(xi)|^2
/// for assertion lhs <= rhs under |1 - zeta conj(xi)| >= K1 |1 - zeta conj(zeta')|.
struct KernelSmoothness {
  double lhs = 0.0;
  double rhs = 0.0;
  bool precondition = false;
};

inline constexpr double kKernelK1 = 8.0;
/// K2 measured on a 10^5-triple sample during development, then frozen.
inline constexpr double kKernelK2 = 1.5;

KernelSmoothness kernel_smoothness_check(cplx zeta, cplx zeta_prime, cplx xi, double rho_r);

}  // namespace diskop
