#include "diskop/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace diskop {

namespace {

// FFTW planning is not thread-safe; executing an existing plan on fresh
// arrays is. Plans are created with FFTW_UNALIGNED so they apply to any
// buffer of the right size.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan plan_for(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> scratch_in(n), scratch_out(n);
  fftw_plan p = fftw_plan_dft_1d(
      static_cast<int>(n), reinterpret_cast<fftw_complex*>(scratch_in.data()),
      reinterpret_cast<fftw_complex*>(scratch_out.data()), sign,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

void execute(std::span<const cplx> in, std::span<cplx> out, int sign) {
  if (in.size() != out.size()) throw std::invalid_argument("dft: size mismatch");
  const std::size_t n = in.size();
  if (n == 0) return;
  fftw_plan p = plan_for(n, sign);
  // fftw_execute_dft does not modify the input array for out-of-place plans.
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void dft_forward(std::span<const cplx> in, std::span<cplx> out) {
  execute(in, out, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(in.size());
  for (auto& v : out) v *= scale;
}

void dft_inverse(std::span<const cplx> in, std::span<cplx> out) {
  execute(in, out, FFTW_BACKWARD);
}

std::vector<cplx> dft_forward(const std::vector<cplx>& in) {
  std::vector<cplx> out(in.size());
  dft_forward(std::span<const cplx>(in), std::span<cplx>(out));
  return out;
}

std::vector<cplx> dft_inverse(const std::vector<cplx>& in) {
  std::vector<cplx> out(in.size());
  dft_inverse(std::span<const cplx>(in), std::span<cplx>(out));
  return out;
}

}  // namespace diskop
