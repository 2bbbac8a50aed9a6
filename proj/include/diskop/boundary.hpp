#pragma once

#include <complex>
#include <vector>

#include "diskop/geometry.hpp"

namespace diskop {

/// Complex samples on a GridCircle with lazily cached Fourier coefficients.
/// Coefficient bin k holds psi_hat(k) for 0 <= k < N/2 and psi_hat(k - N)
/// for N/2 <= k < N. The samples -> coefficients -> samples round trip is
/// identity to 1e-10.
class BoundaryFunction {
 public:
  BoundaryFunction(GridCircle grid, std::vector<cplx> samples);
  static BoundaryFunction from_real(const GridCircle& grid, const std::vector<double>& values);

  const GridCircle& grid() const { return grid_; }
  int size() const { return grid_.size(); }
  const std::vector<cplx>& samples() const { return samples_; }
  cplx sample(int j) const { return samples_[grid_.wrap(j)]; }

  /// All N coefficient bins (computed on first use; write-once cache,
  /// not synchronized — share across threads only after first access).
  const std::vector<cplx>& coefficients() const;
  /// psi_hat(k) for |k| <= N/2.
  cplx coefficient(int k) const;

  std::vector<double> abs_samples() const;
  std::vector<double> real_samples() const;

 private:
  GridCircle grid_;
  std::vector<cplx> samples_;
  mutable std::vector<cplx> coeff_;
};

}  // namespace diskop
