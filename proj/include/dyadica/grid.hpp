#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dyadica/space.hpp"

namespace dyadica {

struct Cube {
  int id = -1;
  int level = 0;    // sidelength = delta^level
  int center = -1;  // point id; always a member
  int parent = -1;  // cube id; -1 for the root
  std::vector<int> children;
  PointSet members;
  double sidelength = 1.0;
};

/// theoretical: 96*kappa^2*delta <= 1, so the two-sided ball sandwich with
/// c1 = (12 kappa^4)^-1 and C1 = 4 kappa^2 is asserted. relaxed: any delta in
/// (0,1); structural properties still certified, sandwich only reported.
enum class GridMode { theoretical, relaxed };

struct AdjacentSystem;

/// A forest of nested cubes over a certified space: one partition of the
/// point set per level, refining from a single root down to singletons.
///
/// Construction: the level-(k+1) cubes inside a level-k cube are the Voronoi
/// cells of a maximal delta^(k+1)-separated net of its members. The parent
/// center is always kept as a net point, net candidates are scanned in point
/// order rotated by the seed, and assignment ties go to the smallest net
/// point id, so the construction is deterministic given the seed.
class DyadicGrid {
 public:
  const QuasiMetricSpace& space() const { return *space_; }
  const std::shared_ptr<const QuasiMetricSpace>& space_ptr() const { return space_; }
  double delta() const { return delta_; }
  int k_min() const { return k_min_; }
  int k_max() const { return k_max_; }
  GridMode mode() const { return mode_; }
  int tag() const { return tag_; }
  std::uint64_t seed() const { return seed_; }

  int cube_count() const { return static_cast<int>(cubes_.size()); }
  const Cube& cube(int id) const { return cubes_[static_cast<std::size_t>(id)]; }
  const std::vector<Cube>& cubes() const { return cubes_; }
  /// Ids of the cubes at level k (k_min <= k <= k_max).
  const std::vector<int>& level_cubes(int k) const {
    return levels_[static_cast<std::size_t>(k - k_min_)];
  }
  int root() const { return 0; }
  /// The singleton cube {point} at the deepest level.
  int leaf_of(int point) const { return leaf_[static_cast<std::size_t>(point)]; }
  /// The level-k cube containing `point`.
  int cube_of(int point, int k) const;

  double cube_measure(int id) const { return measures_[static_cast<std::size_t>(id)]; }
  /// Integral of f over the cube.
  double cube_sum(int id, const Values& f) const;

 private:
  friend DyadicGrid build_grid(std::shared_ptr<const QuasiMetricSpace>, double,
                               std::uint64_t);
  friend DyadicGrid manual_grid(std::shared_ptr<const QuasiMetricSpace>, double, int,
                                const std::vector<std::vector<PointSet>>&);
  friend struct AdjacentSystem;
  friend AdjacentSystem build_adjacent_system(std::shared_ptr<const QuasiMetricSpace>,
                                              double, int,
                                              const std::vector<std::uint64_t>&);
  DyadicGrid() = default;
  void finalize();

  std::shared_ptr<const QuasiMetricSpace> space_;
  double delta_ = 0.5;
  int k_min_ = 0;
  int k_max_ = 0;
  int tag_ = 1;
  std::uint64_t seed_ = 0;
  GridMode mode_ = GridMode::relaxed;
  std::vector<Cube> cubes_;
  std::vector<std::vector<int>> levels_;
  std::vector<int> leaf_;
  std::vector<double> measures_;
};

/// Grids keep the space alive through a shared handle; the reference
/// overloads copy the space once.
DyadicGrid build_grid(std::shared_ptr<const QuasiMetricSpace> space, double delta,
                      std::uint64_t seed);
DyadicGrid build_grid(const QuasiMetricSpace& space, double delta, std::uint64_t seed);

/// Builds a grid from explicit per-level partitions (level k_min first, each
/// refining the previous). Centers are the smallest member of each cube.
/// Used for hand-made fixtures and negative controls.
DyadicGrid manual_grid(std::shared_ptr<const QuasiMetricSpace> space, double delta,
                       int k_min, const std::vector<std::vector<PointSet>>& level_partitions);
DyadicGrid manual_grid(const QuasiMetricSpace& space, double delta, int k_min,
                       const std::vector<std::vector<PointSet>>& level_partitions);

struct GridCheck {
  bool partition = false;
  bool nesting = false;
  bool parent_child = false;
  /// Largest c with B(z, c*delta^k) inside every cube (inf over cubes;
  /// +infinity when no cube has an exterior point).
  double inner_c = 0.0;
  /// Smallest C with every cube inside B(z, C*delta^k) (sup over cubes).
  double outer_c = 0.0;
  bool sandwich_ok = true;  // only checked in theoretical mode
  std::string witness;      // first failure, empty when all pass
  bool structure_ok() const { return partition && nesting && parent_child; }
  bool all_ok() const { return structure_ok() && sandwich_ok; }
};

GridCheck verify_grid(const DyadicGrid& grid);

struct Gdp {
  int cube_id = -1;
  bool clamped = false;  // level k-2 missing, clamped to the root
};

/// The level-(k-2) ancestor of a cube, clamped to the root when the grid has
/// no such level. Under nesting this is the unique cube of sidelength
/// delta^(k-2) containing every same-sidelength cube that meets Q (namely Q
/// itself).
Gdp gdp(const DyadicGrid& grid, int cube_id);

/// max over cubes Q of mu(gdp(Q)) / mu(Q'), over same-sidelength cubes Q'
/// meeting Q; nesting collapses Q' to Q itself. Always >= 1.
double constant_cd(const DyadicGrid& grid);

/// Fraction of cubes whose gdp also contains all same-level cubes within
/// distance 4*kappa^2*delta^k of the cube (diagnostic for the stricter
/// metric-neighbor reading of the gdp definition).
double gdp_neighbor_closure(const DyadicGrid& grid);

struct ChildParentEpsilon {
  double empirical = 1.0;    // min mu(child)/mu(parent)
  double theoretical = 1.0;  // c_mu^(-s)
  int s = 0;                 // smallest natural >= log2(12 kappa^6 (4 kappa + 2) / delta)
};

ChildParentEpsilon child_parent_epsilon(const DyadicGrid& grid);

/// The unique k with delta^(k+1) < r <= delta^k.
int radius_class(double r, double delta);

struct BallCoverEntry {
  int center = 0;
  double radius = 0.0;  // representative radius for this class
  int k = 0;            // radius class
  int level = 0;        // level of the covering cube that was searched (k-1, clamped)
  bool level_clamped = false;
  bool covered = false;
  int grid_tag = 0;  // tag of the covering grid, 0 if uncovered
};

struct AdjacentSystem {
  std::vector<DyadicGrid> grids;
  std::vector<BallCoverEntry> cover_report;
  double coverage = 1.0;  // covered fraction of cover_report
};

/// Builds k_target grids with distinct seeds and checks, for every distinct
/// ball and every radius class it realizes, whether some grid has a
/// one-level-coarser cube containing it. Failures are reported, never hidden.
AdjacentSystem build_adjacent_system(std::shared_ptr<const QuasiMetricSpace> space,
                                     double delta, int k_target,
                                     const std::vector<std::uint64_t>& seeds);
AdjacentSystem build_adjacent_system(const QuasiMetricSpace& space, double delta,
                                     int k_target, const std::vector<std::uint64_t>& seeds);

}  // namespace dyadica
