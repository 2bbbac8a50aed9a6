#include "diskop/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>

#include "diskop/sweep.hpp"

namespace diskop {

namespace {

// Does the wrapped range [f, f+c) lie inside [cs, cs+cc)?
bool range_contains(int cs, int cc, int f, int c, int n) {
  if (cc >= n) return true;
  if (c > cc) return false;
  for (int k : {-n, 0, n}) {
    int b = f + k;
    if (cs <= b && b + c <= cs + cc) return true;
  }
  return false;
}

}  // namespace

bool range_inside(const GridCircle& grid, int outer_start, int outer_count, int inner_start,
                  int inner_count) {
  return range_contains(outer_start, outer_count, inner_start, inner_count, grid.size());
}

bool cube_contains(const DyadicCube& outer, const DyadicCube& inner) {
  return range_contains(outer.start, outer.count, inner.start, inner.count, outer.grid.size());
}

bool DyadicCube::contains_node(int node) const {
  int d = grid.wrap(node - start);
  return d < count;
}

Arc DyadicCube::containment_ball(double factor) const {
  double r = factor * kCubeBallC1 * radius();
  return Arc{grid.node(center_node()), std::min(r, 2.0)};
}

double DyadicCube::diameter() const {
  if (count >= grid.size()) return 2.0;
  double span = grid.step() * (count - 1);
  if (span >= kPi) return 2.0;
  return 2.0 * std::sin(0.5 * span);
}

DyadicSystem::DyadicSystem(GridCircle grid, int id, int shift, int k_max)
    : grid_(grid), id_(id), shift_(grid.wrap(shift)), k_max_(k_max) {
  if (k_max < 0) throw std::invalid_argument("DyadicSystem: k_max must be >= 0");
  if (grid_.size() < (1 << (k_max + 2))) {
    throw std::runtime_error("DyadicSystem: grid too coarse for generation " +
                             std::to_string(k_max) + " (need N >= 2^{k_max+2})");
  }
}

DyadicCube DyadicSystem::cube(int gen, int index) const {
  if (gen < 0 || gen > k_max_) throw std::out_of_range("DyadicSystem::cube: bad generation");
  const int size = cube_size(gen);
  DyadicCube q;
  q.grid = grid_;
  q.system = id_;
  q.generation = gen;
  q.index = index & ((1 << gen) - 1);
  q.start = grid_.wrap(shift_ + q.index * size);
  q.count = size;
  return q;
}

DyadicCube DyadicSystem::cube_containing(int gen, int node) const {
  const int size = cube_size(gen);
  int offset = grid_.wrap(node - shift_);
  return cube(gen, offset / size);
}

std::vector<DyadicSystem> build_adjacent_systems(const GridCircle& grid, int k_max) {
  const int n = grid.size();
  std::vector<DyadicSystem> out;
  out.emplace_back(grid, 1, 0, k_max);
  out.emplace_back(grid, 2, n / 3, k_max);
  out.emplace_back(grid, 3, (2 * n) / 3, k_max);
  return out;
}

std::optional<DyadicCube> covering_cube(const std::vector<DyadicSystem>& systems,
                                        const Arc& ball, int gen) {
  if (systems.empty()) return std::nullopt;
  const GridCircle& grid = systems.front().grid();
  auto range = ball.node_range(grid);
  if (range.count == 0) {
    // No grid node inside the ball; any cube of the generation contains it.
    return systems.front().cube(gen, 0);
  }
  for (const auto& sys : systems) {
    // Candidate: the cube containing the ball's first node.
    DyadicCube q = sys.cube_containing(gen, range.first);
    if (range_contains(q.start, q.count, range.first, range.count, grid.size())) return q;
  }
  return std::nullopt;
}

WhitneyCover whitney_cover(const std::vector<std::uint8_t>& omega, const DyadicSystem& sys,
                           double R) {
  const GridCircle& grid = sys.grid();
  const int n = grid.size();
  if (static_cast<int>(omega.size()) != n)
    throw std::invalid_argument("whitney_cover: mask size != grid size");
  int active = 0;
  for (auto v : omega) active += (v != 0);
  WhitneyCover cover;
  cover.R = R;
  if (active == 0) return cover;
  if (active == n) throw std::invalid_argument("whitney_cover: Omega is the full circle");

  auto ball_inside = [&](const DyadicCube& q, double factor) {
    auto r = q.containment_ball(factor).node_range(grid);
    if (r.count >= n) return false;
    for (int d = 0; d < r.count; ++d)
      if (!omega[grid.wrap(r.first + d)]) return false;
    return true;
  };
  auto cube_inside = [&](const DyadicCube& q) {
    for (int d = 0; d < q.count; ++d)
      if (!omega[grid.wrap(q.start + d)]) return false;
    return true;
  };
  auto meets_omega = [&](const DyadicCube& q) {
    for (int d = 0; d < q.count; ++d)
      if (omega[grid.wrap(q.start + d)]) return true;
    return false;
  };

  // Maximal cubes with R B(Q) inside Omega. At a fixed finest generation the
  // R-condition can never hold for cubes hugging the boundary (the dilated
  // ball always overshoots by a few nodes), so boundary cubes fall back to
  // plain containment; they are counted in `fringe`.
  std::vector<DyadicCube> stack{sys.cube(0, 0)};
  while (!stack.empty()) {
    DyadicCube q = stack.back();
    stack.pop_back();
    if (!meets_omega(q)) continue;
    if (ball_inside(q, R)) {
      cover.cubes.push_back(q);
      continue;
    }
    if (q.generation == sys.k_max()) {
      if (cube_inside(q)) {
        cover.cubes.push_back(q);
        ++cover.fringe;
        continue;
      }
      for (int d = 0; d < q.count; ++d) {
        int node = grid.wrap(q.start + d);
        if (omega[node])
          throw std::runtime_error("whitney_cover: node " + std::to_string(node) +
                                   " uncovered at the finest generation (Omega is not a union "
                                   "of finest-generation arcs)");
      }
      continue;
    }
    stack.push_back(sys.cube(q.generation + 1, 2 * q.index));
    stack.push_back(sys.cube(q.generation + 1, 2 * q.index + 1));
  }

  // (ii): smallest dilation meeting the complement, maximized over cubes.
  for (const auto& q : cover.cubes) {
    int f = 1;
    while (ball_inside(q, f * R)) ++f;
    cover.K = std::max(cover.K, f);
  }
  // (iii): bounded overlap of the dilated balls.
  std::vector<int> hits(n, 0);
  for (const auto& q : cover.cubes) {
    auto r = q.containment_ball(R).node_range(grid);
    for (int d = 0; d < r.count; ++d) ++hits[grid.wrap(r.first + d)];
  }
  cover.max_overlap = *std::max_element(hits.begin(), hits.end());
  return cover;
}

double rearrangement(std::span<const double> values, int grid_n, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("rearrangement: t must be positive");
  const int m = static_cast<int>(std::floor(t * grid_n + 1e-9));
  if (m >= static_cast<int>(values.size())) return 0.0;
  std::vector<double> v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = std::abs(values[i]);
  std::nth_element(v.begin(), v.begin() + m, v.end(), std::greater<double>());
  return v[m];
}

double median(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty set");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t pos = (v.size() - 1) / 2;  // lower middle
  std::nth_element(v.begin(), v.begin() + pos, v.end());
  return v[pos];
}

std::pair<double, double> local_osc_center(std::span<const double> values, double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0))
    throw std::invalid_argument("local_osc: need 0 < lambda < 1");
  const int mcount = static_cast<int>(values.size());
  const int m = static_cast<int>(std::floor(lambda * mcount + 1e-9));
  const int window = mcount - m;
  if (window <= 0) return {0.0, values.empty() ? 0.0 : values[0]};
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  double best = std::numeric_limits<double>::infinity();
  double center = v[0];
  for (int i = 0; i + window <= mcount; ++i) {
    double width = v[i + window - 1] - v[i];
    if (width < best) {
      best = width;
      center = 0.5 * (v[i + window - 1] + v[i]);
    }
  }
  return {0.5 * best, center};
}

double local_osc(std::span<const double> values, double lambda) {
  return local_osc_center(values, lambda).first;
}

namespace {

std::vector<double> cube_values(std::span<const double> psi, const DyadicCube& q) {
  std::vector<double> v(q.count);
  for (int d = 0; d < q.count; ++d) v[d] = psi[q.grid.wrap(q.start + d)];
  return v;
}

}  // namespace

double sharp_maximal(std::span<const double> psi, const DyadicSystem& sys,
                     const DyadicCube& q0, double lambda, int node) {
  if (!q0.contains_node(node)) throw std::domain_error("sharp_maximal: node outside Q0");
  double best = 0.0;
  for (int gen = q0.generation; gen <= sys.k_max(); ++gen) {
    DyadicCube q = sys.cube_containing(gen, node);
    best = std::max(best, local_osc(cube_values(psi, q), lambda));
  }
  return best;
}

SparseFamily build_sparse_family(std::span<const double> psi, const DyadicSystem& sys,
                                 const DyadicCube& q0, double eps, double ae_fraction) {
  const GridCircle& grid = sys.grid();
  const int n = grid.size();
  if (static_cast<int>(psi.size()) != n)
    throw std::invalid_argument("build_sparse_family: psi size != grid size");
  const double lambda = eps / 4.0;

  SparseFamily fam;
  fam.root = q0;
  fam.layers.push_back({q0});

  std::vector<std::uint8_t> bad(n, 0);
  while (true) {
    const auto& frontier = fam.layers.back();
    std::vector<DyadicCube> next;
    for (const auto& p : frontier) {
      auto [osc, c] = local_osc_center(cube_values(psi, p), lambda);
      const double tol = 1e-12 * (1.0 + std::abs(osc) + std::abs(c));
      std::fill(bad.begin(), bad.end(), 0);
      int nbad = 0;
      for (int d = 0; d < p.count; ++d) {
        int node = grid.wrap(p.start + d);
        if (std::abs(psi[node] - c) > osc + tol) {
          bad[node] = 1;
          ++nbad;
        }
      }
      if (nbad == 0) continue;
      if (p.generation == sys.k_max()) {
        fam.depth_exhausted = true;
        continue;
      }
      auto bad_count = [&](const DyadicCube& q) {
        int cnt = 0;
        for (int d = 0; d < q.count; ++d) cnt += bad[grid.wrap(q.start + d)];
        return cnt;
      };
      // Maximal subcubes where the bad set exceeds a quarter of the cube;
      // |Omega_P| <= eps |P|/4 caps the selected layer at |P|/2.
      std::vector<DyadicCube> stack{sys.cube(p.generation + 1, 2 * p.index),
                                    sys.cube(p.generation + 1, 2 * p.index + 1)};
      while (!stack.empty()) {
        DyadicCube q = stack.back();
        stack.pop_back();
        int bc = bad_count(q);
        if (bc == 0) continue;
        if (4 * bc > q.count) {
          next.push_back(q);
        } else if (q.generation < sys.k_max()) {
          stack.push_back(sys.cube(q.generation + 1, 2 * q.index));
          stack.push_back(sys.cube(q.generation + 1, 2 * q.index + 1));
        } else {
          fam.depth_exhausted = true;
        }
      }
    }
    if (next.empty()) break;
    fam.layers.push_back(std::move(next));
  }

  // Layer sparsity and exceptional-set majority as exact set arithmetic.
  for (std::size_t li = 0; li + 1 < fam.layers.size(); ++li) {
    for (const auto& p : fam.layers[li]) {
      int covered = 0;
      for (const auto& q : fam.layers[li + 1])
        if (range_contains(p.start, p.count, q.start, q.count, n)) covered += q.count;
      if (2 * covered > p.count)
        throw std::logic_error("build_sparse_family: layer sparsity violated");
    }
  }

  if (fam.depth_exhausted) {
    auto check = lerner_bound_check(psi, sys, fam, eps);
    if (check.fraction_ok < ae_fraction)
      throw std::runtime_error("build_sparse_family: pointwise bound fails at node " +
                               std::to_string(check.worst_node) + " (fraction " +
                               std::to_string(check.fraction_ok) + ")");
  }
  return fam;
}

std::vector<DyadicCube> SparseFamily::all() const {
  std::vector<DyadicCube> out;
  for (const auto& layer : layers) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

std::vector<std::uint8_t> SparseFamily::exceptional_set(std::size_t layer,
                                                        std::size_t pos) const {
  const DyadicCube& q = layers[layer][pos];
  const int n = q.grid.size();
  std::vector<std::uint8_t> mask(n, 0);
  for (int d = 0; d < q.count; ++d) mask[q.grid.wrap(q.start + d)] = 1;
  if (layer + 1 < layers.size()) {
    for (const auto& child : layers[layer + 1]) {
      if (!range_contains(q.start, q.count, child.start, child.count, n)) continue;
      for (int d = 0; d < child.count; ++d) mask[q.grid.wrap(child.start + d)] = 0;
    }
  }
  return mask;
}

LernerCheck lerner_bound_check(std::span<const double> psi, const DyadicSystem& sys,
                               const SparseFamily& family, double eps, double slack) {
  const GridCircle& grid = sys.grid();
  const int n = grid.size();
  const double lambda = eps / 4.0;
  const DyadicCube& q0 = family.root;
  const double med0 = median(cube_values(psi, q0));

  // Oscillations of every dyadic cube inside q0, once per cube.
  std::vector<std::vector<double>> osc(sys.k_max() + 1);
  for (int gen = q0.generation; gen <= sys.k_max(); ++gen) {
    osc[gen].assign(sys.cubes_at(gen), 0.0);
    for (int idx = 0; idx < sys.cubes_at(gen); ++idx) {
      DyadicCube q = sys.cube(gen, idx);
      if (!range_contains(q0.start, q0.count, q.start, q.count, n)) continue;
      osc[gen][idx] = local_osc(cube_values(psi, q), lambda);
    }
  }

  std::vector<double> family_sum(n, 0.0);
  for (const auto& q : family.all()) {
    const double o = local_osc(cube_values(psi, q), lambda);
    for (int d = 0; d < q.count; ++d) family_sum[grid.wrap(q.start + d)] += o;
  }

  LernerCheck out;
  int ok = 0;
  out.max_excess = -std::numeric_limits<double>::infinity();
  for (int d = 0; d < q0.count; ++d) {
    const int node = grid.wrap(q0.start + d);
    double sharp = 0.0;
    for (int gen = q0.generation; gen <= sys.k_max(); ++gen) {
      DyadicCube q = sys.cube_containing(gen, node);
      sharp = std::max(sharp, osc[gen][q.index]);
    }
    const double lhs = std::abs(psi[node] - med0);
    const double rhs = sharp + family_sum[node] + slack;
    if (lhs <= rhs) ++ok;
    const double excess = lhs - rhs;
    if (excess > out.max_excess) {
      out.max_excess = excess;
      out.worst_node = node;
    }
  }
  out.fraction_ok = static_cast<double>(ok) / q0.count;
  return out;
}

CzSplit cz_split(const BoundaryFunction& psi, double lambda, const DyadicSystem& sys,
                 double R) {
  const GridCircle& grid = psi.grid();
  const int n = grid.size();
  const auto maximal = max_arc_average(psi.abs_samples());

  // The level set rounded up to finest-generation arcs; the cover needs
  // Omega to be a union of such arcs, and enlarging it keeps the good part
  // bounded by a multiple of lambda.
  std::vector<std::uint8_t> omega(n, 0);
  const int fine = sys.k_max();
  for (int j = 0; j < n; ++j) {
    if (maximal[j] <= lambda) continue;
    DyadicCube q = sys.cube_containing(fine, j);
    for (int d = 0; d < q.count; ++d) omega[grid.wrap(q.start + d)] = 1;
  }
  int active = 0;
  for (int j = 0; j < n; ++j) active += omega[j];
  CzSplit split;
  split.good = psi.samples();
  if (active == 0) return split;
  if (active == n)
    throw std::runtime_error("cz_split: level set is the full circle; increase lambda");

  split.cover = whitney_cover(omega, sys, R);
  for (const auto& q : split.cover.cubes) {
    cplx sum = 0.0;
    for (int d = 0; d < q.count; ++d) sum += psi.sample(q.start + d);
    const cplx avg = sum / static_cast<double>(q.count);
    CzPart part;
    part.cube = q;
    part.values.resize(q.count);
    for (int d = 0; d < q.count; ++d) {
      const int node = grid.wrap(q.start + d);
      part.values[d] = psi.sample(node) - avg;
      split.good[node] = avg;
    }
    split.parts.push_back(std::move(part));
  }
  return split;
}

namespace {

nlohmann::json cube_json(const DyadicCube& q) {
  return nlohmann::json{{"system", q.system},   {"generation", q.generation},
                        {"index", q.index},     {"start", q.start},
                        {"count", q.count},     {"center", q.center_node()}};
}

}  // namespace

nlohmann::json to_json_tree(const DyadicSystem& sys) {
  nlohmann::json gens = nlohmann::json::array();
  for (int gen = 0; gen <= sys.k_max(); ++gen) {
    nlohmann::json level = nlohmann::json::array();
    for (int idx = 0; idx < sys.cubes_at(gen); ++idx) level.push_back(cube_json(sys.cube(gen, idx)));
    gens.push_back(level);
  }
  return nlohmann::json{{"system", sys.id()},
                        {"shift", sys.shift()},
                        {"delta_base", sys.delta_base()},
                        {"k_max", sys.k_max()},
                        {"grid_n", sys.grid().size()},
                        {"generations", gens}};
}

nlohmann::json to_json_tree(const SparseFamily& fam) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : fam.layers) {
    nlohmann::json l = nlohmann::json::array();
    for (const auto& q : layer) l.push_back(cube_json(q));
    layers.push_back(l);
  }
  return nlohmann::json{{"root", cube_json(fam.root)},
                        {"depth_exhausted", fam.depth_exhausted},
                        {"layers", layers}};
}

}  // namespace diskop
