#pragma once

#include <optional>

#include "diskop/operators.hpp"
#include "diskop/weights.hpp"

namespace diskop {

struct NormSpec {
  double p = 2.0;
  const Weight* weight = nullptr;     // nullptr = unweighted
  const PolarGrid* polar = nullptr;   // needed for mixed norms / boundary eval
};

struct NormResult {
  double value = 0.0;
  bool divergence_flag = false;  // truncation-sensitive inner integral
  bool abel_flag = false;        // boundary restriction taken at r = 1 - eps_r
  double tail_mass = 0.0;        // estimated relative coefficient tail
};

/// (sum_j |psi_j|^p omega_j / N)^{1/p}.
double lp_norm(const BoundaryFunction& psi, const NormSpec& spec);

/// Hardy norm = lp_norm of the boundary restriction. Coefficient summation
/// at r = 1 when the coefficient tail is negligible, else Abel evaluation at
/// r = 1 - eps_r with the abel flag set.
NormResult hp_norm(const HoloFunction& f, const NormSpec& spec);

/// Hardy norm from explicitly supplied boundary values (closed forms).
double hp_norm_boundary(const BoundaryFunction& boundary, const NormSpec& spec);

/// Mixed norm: L^2 radially against 2r dr/(1-r^2), then weighted L^p over
/// angles. Divergent inner integrals are reported at the truncated value
/// with the divergence flag.
NormResult mixed_norm(const DiskFunction& phi, const NormSpec& spec);

/// ||(1-r^2)(I+R) f||_{L^{p,2}(omega)} on the given polar grid.
NormResult triebel_norm(const HoloFunction& f, const NormSpec& spec);

/// The disk samples of (1-r^2)(I+R)f (shared by triebel_norm and tests).
DiskFunction q_profile(const HoloFunction& f, const PolarGrid& grid);

/// <phi, chi>_B = integral phi conj(chi) dnu/(1-|z|^2).
cplx pairing_disk(const DiskFunction& phi, const DiskFunction& chi);

/// <psi, chi>_S = integral psi conj(chi) dsigma.
cplx pairing_circle(const BoundaryFunction& psi, const BoundaryFunction& chi);

/// L^p norm against the normalized area measure dnu.
double lp_disk_norm(const DiskFunction& phi, double p);

}  // namespace diskop
