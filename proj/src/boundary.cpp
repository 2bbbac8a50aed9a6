#include "diskop/boundary.hpp"

#include <stdexcept>

#include "diskop/fft.hpp"

namespace diskop {

BoundaryFunction::BoundaryFunction(GridCircle grid, std::vector<cplx> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (static_cast<int>(samples_.size()) != grid_.size())
    throw std::invalid_argument("BoundaryFunction: sample count != grid size");
}

BoundaryFunction BoundaryFunction::from_real(const GridCircle& grid,
                                             const std::vector<double>& values) {
  std::vector<cplx> s(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) s[j] = values[j];
  return BoundaryFunction(grid, std::move(s));
}

const std::vector<cplx>& BoundaryFunction::coefficients() const {
  if (coeff_.empty()) coeff_ = dft_forward(samples_);
  return coeff_;
}

cplx BoundaryFunction::coefficient(int k) const {
  const auto& c = coefficients();
  return c[grid_.wrap(k)];
}

std::vector<double> BoundaryFunction::abs_samples() const {
  std::vector<double> v(samples_.size());
  for (std::size_t j = 0; j < samples_.size(); ++j) v[j] = std::abs(samples_[j]);
  return v;
}

std::vector<double> BoundaryFunction::real_samples() const {
  std::vector<double> v(samples_.size());
  for (std::size_t j = 0; j < samples_.size(); ++j) v[j] = samples_[j].real();
  return v;
}

}  // namespace diskop
