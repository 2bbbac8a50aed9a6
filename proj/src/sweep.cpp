#include "diskop/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diskop {

PrefixSums::PrefixSums(std::span<const double> values)
    : n_(static_cast<int>(values.size())), sums_(values.size() + 1, 0.0) {
  for (int j = 0; j < n_; ++j) sums_[j + 1] = sums_[j] + values[j];
}

double PrefixSums::arc_sum(int start, int count) const {
  if (count >= n_) return total();
  int s = start % n_;
  if (s < 0) s += n_;
  int e = s + count;
  if (e <= n_) return sums_[e] - sums_[s];
  return total() - sums_[s] + sums_[e - n_];
}

namespace {

// For window values W[s], s = 0..N-1 (circular), fills best[j] with
// max over s in [j-m+1, j] (mod N) of W[s]. Monotone deque over unwrapped
// indices; negative t primes the deque before j = 0 arrives.
void sliding_window_max(const std::vector<double>& w, int m, std::vector<double>& best) {
  const int n = static_cast<int>(w.size());
  auto val = [&](int t) { return w[t < 0 ? t + n : t]; };
  std::deque<int> dq;
  for (int t = -(m - 1); t < n; ++t) {
    while (!dq.empty() && val(dq.back()) <= val(t)) dq.pop_back();
    dq.push_back(t);
    if (dq.front() <= t - m) dq.pop_front();
    if (t >= 0) best[t] = std::max(best[t], val(dq.front()));
  }
}

std::vector<double> sweep_max(const std::vector<double>& num, const double* den) {
  const int n = static_cast<int>(num.size());
  PrefixSums pn(num);
  PrefixSums pd(den ? std::span<const double>(den, n) : std::span<const double>());
  std::vector<double> result(n, -std::numeric_limits<double>::infinity());

#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<double> local(n, -std::numeric_limits<double>::infinity());
    std::vector<double> w(n);
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16) nowait
#endif
    for (int m = 1; m <= n; ++m) {
      for (int s = 0; s < n; ++s) {
        double a = pn.arc_sum(s, m);
        w[s] = den ? a / pd.arc_sum(s, m) : a / m;
      }
      sliding_window_max(w, m, local);
    }
#ifdef _OPENMP
#pragma omp critical
#endif
    for (int j = 0; j < n; ++j) result[j] = std::max(result[j], local[j]);
  }
  return result;
}

}  // namespace

std::vector<double> max_arc_average(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  return sweep_max(v, nullptr);
}

std::vector<double> max_arc_average_weighted(std::span<const double> vw,
                                             std::span<const double> w) {
  if (vw.size() != w.size()) throw std::invalid_argument("weighted sweep: size mismatch");
  std::vector<double> num(vw.begin(), vw.end());
  return sweep_max(num, w.data());
}

}  // namespace diskop
