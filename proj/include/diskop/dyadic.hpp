#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diskop/boundary.hpp"
#include "diskop/geometry.hpp"

#include <json.hpp>

namespace diskop {

/// One dyadic arc: a contiguous wrapped run of grid nodes. The center node
/// is the geometric midpoint (ball sandwich holds with c1 = 1, C1 = pi);
/// the start node is the construction anchor (node 0 anchors system 1 at
/// every generation).
struct DyadicCube {
  GridCircle grid{2};
  int system = 0;
  int generation = 0;
  int index = 0;
  int start = 0;
  int count = 0;

  int center_node() const { return grid.wrap(start + count / 2); }
  double radius() const { return std::ldexp(1.0, -generation); }  // l(Q) = 2^-k
  double measure() const { return static_cast<double>(count) / grid.size(); }
  bool contains_node(int node) const;
  /// B(Q) = B(center, C1 * 2^-k) scaled by `factor` (clamps to full circle).
  Arc containment_ball(double factor = 1.0) const;
  /// Node-set diameter: max rho between member nodes.
  double diameter() const;
  bool operator==(const DyadicCube& o) const {
    return system == o.system && generation == o.generation && index == o.index;
  }
};

inline constexpr double kCubeBallC1 = kPi;  // Q subset B(center, C1 * 2^-k)
inline constexpr double kCubeBallc1 = 1.0;  // B(center, c1 * 2^-k) subset Q

/// Binary arc hierarchy with a fixed node shift. Generation k partitions the
/// grid into 2^k arcs of N/2^k nodes starting at the shift.
class DyadicSystem {
 public:
  DyadicSystem(GridCircle grid, int id, int shift, int k_max);

  const GridCircle& grid() const { return grid_; }
  int id() const { return id_; }
  int shift() const { return shift_; }
  int k_max() const { return k_max_; }
  double delta_base() const { return 0.5; }

  int cubes_at(int gen) const { return 1 << gen; }
  int cube_size(int gen) const { return grid_.size() >> gen; }
  DyadicCube cube(int gen, int index) const;
  DyadicCube cube_containing(int gen, int node) const;

 private:
  GridCircle grid_;
  int id_, shift_, k_max_;
};

/// Node-set containment of wrapped ranges.
bool cube_contains(const DyadicCube& outer, const DyadicCube& inner);
bool range_inside(const GridCircle& grid, int outer_start, int outer_count, int inner_start,
                  int inner_count);

/// Three adjacent systems (shifts 0, N/3, 2N/3). Requires N >= 2^{k_max+2}.
std::vector<DyadicSystem> build_adjacent_systems(const GridCircle& grid, int k_max);

/// Adjacency certificate: a generation-k cube of one of the systems
/// containing every grid node of the ball, or nullopt.
std::optional<DyadicCube> covering_cube(const std::vector<DyadicSystem>& systems,
                                        const Arc& ball, int gen);

struct WhitneyCover {
  std::vector<DyadicCube> cubes;
  double R = 0.0;
  int K = 0;            // smallest f with f*R*B(Q) meeting the complement, maximized
  int max_overlap = 0;  // max_j sum_Q 1_{R B(Q)}(j)
  int fringe = 0;       // finest-generation cubes taken by containment only
};

/// Maximal dyadic cubes of one system with R*B(Q) inside Omega; cubes at the
/// finest generation that hug the boundary (where the dilated-ball condition
/// is unattainable at fixed resolution) fall back to plain containment and
/// are counted in `fringe`. Throws if a node of Omega stays uncovered, which
/// happens exactly when Omega is not a union of finest-generation arcs.
WhitneyCover whitney_cover(const std::vector<std::uint8_t>& omega, const DyadicSystem& sys,
                           double R);

/// Non-increasing rearrangement psi*(t) on the normalized circle: values are
/// the function on its node set (zero elsewhere), grid_n the grid size.
double rearrangement(std::span<const double> values, int grid_n, double t);

/// Median with ties broken at the lower middle order statistic.
double median(std::span<const double> values);

/// Local mean oscillation omega_lambda(psi; Q) = inf_c ((psi-c)X_Q)*(lambda|Q|),
/// realized exactly by the smallest half-width window covering all but
/// floor(lambda*|Q|*N) values.
double local_osc(std::span<const double> values, double lambda);
/// Same, also reporting the optimal center.
std::pair<double, double> local_osc_center(std::span<const double> values, double lambda);

/// Dyadic local sharp maximal function: sup of local_osc over cubes of the
/// chain node -> q0. psi lives on the full grid.
double sharp_maximal(std::span<const double> psi, const DyadicSystem& sys,
                     const DyadicCube& q0, double lambda, int node);

struct SparseFamily {
  DyadicCube root;
  std::vector<std::vector<DyadicCube>> layers;  // layers[0] = {root}
  bool depth_exhausted = false;

  std::vector<DyadicCube> all() const;
  /// E_Q = Q minus next-layer cubes inside Q, as a node mask on the grid.
  std::vector<std::uint8_t> exceptional_set(std::size_t layer, std::size_t pos) const;
};

/// Lerner-style sparse selection inside q0 for the oscillation parameter
/// eps/4: children of P are the maximal subcubes on which the bad set
/// {|psi - c_P| > omega_{eps/4}(psi;P)} has strict majority. Sparsity
/// (layer unions at most half the parent) is asserted after construction.
/// If the recursion hits the finest generation with bad nodes left, the
/// pointwise bound is verified and an error names the worst node when the
/// satisfied fraction falls below ae_fraction.
SparseFamily build_sparse_family(std::span<const double> psi, const DyadicSystem& sys,
                                 const DyadicCube& q0, double eps, double ae_fraction = 0.99);

struct LernerCheck {
  double fraction_ok = 0.0;
  double max_excess = 0.0;  // max over nodes of LHS - RHS
  int worst_node = -1;
};

/// Pointwise check of |psi - m_{Q0}(psi)| <= m#_{eps/4}(psi) + sum osc*1_Q
/// over the family, with `slack` absolute tolerance per node.
LernerCheck lerner_bound_check(std::span<const double> psi, const DyadicSystem& sys,
                               const SparseFamily& family, double eps, double slack = 1e-9);

struct CzPart {
  DyadicCube cube;
  std::vector<cplx> values;  // b_k on the cube's nodes, in wrapped order from start
};

struct CzSplit {
  std::vector<cplx> good;
  std::vector<CzPart> parts;
  WhitneyCover cover;
};

/// Calderon-Zygmund splitting at level lambda: Omega = {M(psi) > lambda},
/// Whitney cubes of Omega, good part = psi off Omega and cube averages on
/// it, bad parts mean-zero on their cubes. psi = good + sum parts exactly.
CzSplit cz_split(const BoundaryFunction& psi, double lambda, const DyadicSystem& sys, double R);

nlohmann::json to_json_tree(const DyadicSystem& sys);
nlohmann::json to_json_tree(const SparseFamily& fam);

}  // namespace diskop
