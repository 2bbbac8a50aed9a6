#pragma once

#include <span>
#include <vector>

#include "diskop/geometry.hpp"

namespace diskop {

/// Prefix sums P[0..N] with P[j] = sum_{i<j} v[i]; wrapped arc sums in O(1).
class PrefixSums {
 public:
  explicit PrefixSums(std::span<const double> values);

  /// Sum over the wrapped node range [start, start+count).
  double arc_sum(int start, int count) const;
  int size() const { return n_; }
  double total() const { return sums_[n_]; }

 private:
  int n_;
  std::vector<double> sums_;
};

/// M(v)(j) = max over grid-endpoint arcs containing node j of the arc average
/// of v. Exact O(N^2) sweep: for every window length a sliding-window maximum
/// of the window averages. OpenMP-parallel over window lengths.
std::vector<double> max_arc_average(std::span<const double> values);

/// Weighted variant: arc average of v against weight w, i.e.
/// (sum v*w over arc)/(sum w over arc), maximized over arcs containing j.
/// Pass the products v*w as `vw`.
std::vector<double> max_arc_average_weighted(std::span<const double> vw,
                                             std::span<const double> w);

}  // namespace diskop
