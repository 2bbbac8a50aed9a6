#pragma once

#include <span>
#include <vector>

#include "diskop/boundary.hpp"
#include "diskop/geometry.hpp"
#include "diskop/operators.hpp"
#include "diskop/weights.hpp"

namespace diskop::reference {

/// Serial brute-force implementations kept as oracles for the optimized
/// kernels. No prefix sums, no FFT, no OpenMP; meant for small grids.

/// O(N^3) maximal function: direct summation over every (node, arc) pair.
std::vector<double> hl_maximal_bruteforce(std::span<const double> values);

std::vector<double> weighted_maximal_bruteforce(std::span<const double> values,
                                                std::span<const double> weight);

/// A_p constant by direct summation over all arcs.
double ap_constant_bruteforce(const Weight& omega, double p);

/// A_1 constant from the brute-force maximal function.
double a1_constant_bruteforce(const Weight& omega);

/// Rearrangement via explicit level-set measures over a value scan.
double rearrangement_bruteforce(std::span<const double> values, int grid_n, double t);

/// Median by exhaustive verification of both defining inequalities.
double median_bruteforce(std::span<const double> values);

/// Local mean oscillation minimized over the finite candidate set of node
/// values and midpoints.
double local_osc_bruteforce(std::span<const double> values, double lambda);

/// Cauchy integral by direct kernel quadrature on the sample grid.
cplx cauchy_kernel_quadrature(const BoundaryFunction& psi, cplx z);

/// Bergman integral by direct two-dimensional kernel quadrature.
cplx bergman_kernel_quadrature(const DiskFunction& phi, cplx z);

/// G-function by direct per-angle radial summation (no FFT), serial.
std::vector<double> g_function_serial(const BoundaryFunction& psi, const PolarGrid& grid);

/// Taylor coefficients of ((1+z)/(1-z))^a by convolving the two binomial
/// series (1+z)^a and (1-z)^{-a}, each from its own two-term recurrence.
std::vector<double> f_delta_p_convolution(double a, int K);

}  // namespace diskop::reference
