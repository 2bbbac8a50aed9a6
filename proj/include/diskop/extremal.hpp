#pragma once

#include <utility>

#include "diskop/norms.hpp"
#include "diskop/operators.hpp"
#include "diskop/weights.hpp"

namespace diskop {

/// Taylor coefficients of f(z) = ((1+z)/(1-z))^{delta/p}, all positive.
/// Computed by the first-order recurrence from (1-z^2) f' = 2a f; the
/// two-binomial-series convolution is kept as a test oracle.
HoloFunction f_delta_p(double delta, double p, int K);

struct UVBoundary {
  BoundaryFunction u;
  BoundaryFunction v;
};

/// Closed-form boundary values of Re f and Im f:
/// f(e^{i theta}) = |cot(theta/2)|^a e^{+- i a pi/2}, a = delta/p.
/// The singular node theta = 0 is sampled at the half-cell offset.
UVBoundary u_v_boundary(double delta, double p, const GridCircle& grid);

/// The witness pair phi_delta = |1-e^{i theta}|^{delta-1}(1-r) on the square
/// S_{rho,1}, with its weight omega_delta. The angular power factor is
/// sampled as per-cell averages, like power weights.
std::pair<DiskFunction, Weight> phi_delta(double p, double delta, double rho,
                                          const PolarGrid& grid);

/// phi(w) = (log(2/(1-|w|^2)))^{-1}, radial.
DiskFunction log_spike(const PolarGrid& grid);

/// Exact closed norms of the extremal family, parameterized by tau = 1-delta
/// (log-safe down to tau ~ 1e-60, far below double resolution of delta):
///   ||f||_{H^p}   = sec(pi delta/2)^{1/p}
///   ||u||_{L^p}   = cos(a pi/2) ||f||_{H^p}
///   ||v||_{L^p}   = sin(a pi/2) ||f||_{H^p},   a = delta/p.
double hp_f_closed(double tau, double p);
double lp_u_closed(double tau, double p);
double lp_v_closed(double tau, double p);

/// ||f + shift||_{L^p(S)} for shift in {-1, 0, +1} by graded log-theta
/// quadrature with the analytic power tail (tau-parameterized; shift 0
/// reproduces hp_f_closed). This is the norm of 2 C(u) (shift +1) and of
/// 2 C(v) up to phase (shift -1).
double lp_f_shift_closed(double tau, double p, double shift);

/// Singularity-aware norms of phi_delta (graded angular quadrature of the
/// closed form; radial sums from the grid rule):
double phi_delta_mixed_norm(double p, double delta, double rho, const PolarGrid& grid);
double phi_delta_l1_norm(double delta, double rho, const PolarGrid& grid);

/// Which holomorphic function the deep Triebel-Lizorkin evaluator norms:
/// f itself, (f-1)/2 = i C(v), or (f+1)/2 = C(u).
enum class FShift { none, minus_one, plus_one };

/// ||(1-|z|^2)(I+R) F||_{L^{p,2}} for F in the family above, evaluated by
/// log-scaled quadrature in (log theta, (1-r)/theta) coordinates with the
/// analytic power-law tail below theta = e^{-400}. Valid for any tau > 0;
/// this is the only route once tau drops below the mass resolvable by grids.
double triebel_f_deep(double tau, double p, FShift shift);

}  // namespace diskop
