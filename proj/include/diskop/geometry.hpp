#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace diskop {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform grid on the unit circle with N = 2^m nodes theta_j = 2*pi*j/N.
/// Each node carries measure 1/N (normalized arc length).
class GridCircle {
 public:
  explicit GridCircle(int n);

  int size() const { return n_; }
  double step() const { return 2.0 * kPi / n_; }
  double theta(int j) const { return step() * wrap(j); }
  cplx node(int j) const { return std::polar(1.0, theta(j)); }
  double node_measure() const { return 1.0 / n_; }

  /// Index reduced to [0, N).
  int wrap(int j) const {
    int r = j % n_;
    return r < 0 ? r + n_ : r;
  }

 private:
  int n_;
};

/// Nonisotropic quasi-metric rho(zeta, eta) = |1 - zeta * conj(eta)| between
/// unit-modulus points. Equals 2|sin((theta_zeta - theta_eta)/2)|.
double rho(cplx zeta, cplx eta);

/// Nonisotropic ball B(zeta, r) = {eta : |1 - zeta*conj(eta)| < r}, an arc.
/// For r >= 2 the arc is the full circle.
struct Arc {
  cplx center;
  double radius;

  /// Angular half-width 2*arcsin(min(r,2)/2).
  double half_width() const;
  /// Normalized continuum measure, min(half_width/pi, 1).
  double measure() const;
  bool full_circle() const { return radius >= 2.0; }
  /// Strict membership |1 - center*conj(eta)| < radius.
  bool contains(cplx eta) const;

  /// Grid nodes inside the arc as a contiguous wrapped range [first, first+count).
  struct NodeRange {
    int first = 0;
    int count = 0;
  };
  NodeRange node_range(const GridCircle& grid) const;
};

Arc arc_ball(cplx zeta, double r);

/// Polar quadrature grid on the disk. Radial panels are the dyadic levels
/// 1 - r in [2^-(k+1), 2^-k], k = 0..depth-1, each carrying a fixed-order
/// Gauss-Lobatto rule, so the largest node is exactly 1 - 2^-depth.
///
/// Three weight sets share the nodes:
///   w_dr   ~ integral dr                  (plain radial rule)
///   w_area ~ integral 2 r dr              (normalized area measure)
///   w_lp   ~ integral 2 r dr / (1 - r^2)  (Littlewood-Paley measure)
struct PolarGrid {
  GridCircle angular;
  int depth = 0;
  double eps_r = 0.0;  // 1 - max r_i = 2^-depth
  std::vector<double> radii;
  std::vector<double> w_dr;
  std::vector<double> w_area;
  std::vector<double> w_lp;

  int radial_size() const { return static_cast<int>(radii.size()); }
};

/// depth >= 4, N a power of two.
PolarGrid polar_grid(int depth, int n);

/// Nonisotropic Carleson square with apex a in the punctured disk:
/// S_a = { s*eta : 1-s <= 1-|a|, |1 - eta*conj(a/|a|)| <= 1-|a| }.
struct CarlesonSquare {
  cplx apex;

  double height() const { return 1.0 - std::abs(apex); }
  cplx direction() const { return apex / std::abs(apex); }
  bool contains(cplx z) const;
};

/// Quasi-metric on B' = closed disk minus origin:
/// d(z,w) = max{ ||z|-|w||, |1 - (z/|z|) conj(w/|w|)| }.
double bprime_metric(cplx z, cplx w);

/// Gauss-Legendre nodes/weights on [-1, 1] (used by quadrature helpers).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gauss-Lobatto nodes/weights on [-1, 1]; endpoints included.
void gauss_lobatto(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace diskop
