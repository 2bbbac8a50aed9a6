#pragma once

#include <complex>
#include <span>
#include <vector>

namespace diskop {

using cplx = std::complex<double>;

/// Analysis transform: out[k] = (1/N) sum_j in[j] e^{-2*pi*i*j*k/N}.
/// Bin k holds the coefficient of frequency k for k < N/2 and of k - N above.
void dft_forward(std::span<const cplx> in, std::span<cplx> out);

/// Synthesis transform: out[j] = sum_k in[k] e^{+2*pi*i*j*k/N}.
void dft_inverse(std::span<const cplx> in, std::span<cplx> out);

std::vector<cplx> dft_forward(const std::vector<cplx>& in);
std::vector<cplx> dft_inverse(const std::vector<cplx>& in);

}  // namespace diskop
