#include "dyadica/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dyadica {

namespace {

bool all_singletons(const std::vector<int>& level, const std::vector<Cube>& cubes) {
  for (int id : level) {
    if (cubes[static_cast<std::size_t>(id)].members.size() > 1) return false;
  }
  return true;
}

// Largest k with delta^k >= diam, i.e. the finest sidelength still covering
// the whole space.
int root_level(double diam, double delta) {
  if (diam <= 0.0) return 0;
  int k = static_cast<int>(std::floor(std::log(diam) / std::log(delta)));
  while (std::pow(delta, k) < diam) --k;
  while (std::pow(delta, k + 1) >= diam) ++k;
  return k;
}

}  // namespace

int DyadicGrid::cube_of(int point, int k) const {
  int id = leaf_of(point);
  while (cube(id).level > k) id = cube(id).parent;
  return id;
}

double DyadicGrid::cube_sum(int id, const Values& f) const {
  double total = 0.0;
  for (int p : cube(id).members) {
    total += f[static_cast<std::size_t>(p)] * space_->mass(p);
  }
  return total;
}

void DyadicGrid::finalize() {
  const int n = space_->size();
  leaf_.assign(static_cast<std::size_t>(n), -1);
  for (int id : levels_.back()) {
    const Cube& c = cubes_[static_cast<std::size_t>(id)];
    for (int p : c.members) leaf_[static_cast<std::size_t>(p)] = id;
  }
  measures_.resize(cubes_.size());
  for (const Cube& c : cubes_) {
    measures_[static_cast<std::size_t>(c.id)] = space_->measure(c.members);
  }
  mode_ = (96.0 * space_->kappa() * space_->kappa() * delta_ <= 1.0)
              ? GridMode::theoretical
              : GridMode::relaxed;
}

DyadicGrid build_grid(std::shared_ptr<const QuasiMetricSpace> space_ptr, double delta,
                      std::uint64_t seed) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw DegenerateDelta("delta must lie in (0,1), got " + std::to_string(delta));
  }
  const QuasiMetricSpace& space = *space_ptr;
  const int n = space.size();

  DyadicGrid g;
  g.space_ = std::move(space_ptr);
  g.delta_ = delta;
  g.seed_ = seed;
  g.k_min_ = root_level(space.diameter(), delta);

  // Net candidates are scanned in point order rotated by the seed.
  std::vector<int> order(static_cast<std::size_t>(n));
  int start = static_cast<int>(seed % static_cast<std::uint64_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = (start + i) % n;

  Cube root;
  root.id = 0;
  root.level = g.k_min_;
  root.center = order[0];
  root.sidelength = std::pow(delta, g.k_min_);
  root.members.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) root.members[static_cast<std::size_t>(i)] = i;
  g.cubes_.push_back(std::move(root));
  g.levels_.push_back({0});

  int k = g.k_min_;
  while (!all_singletons(g.levels_.back(), g.cubes_)) {
    ++k;
    const double sep = std::pow(delta, k);
    std::vector<int> next_level;
    for (int parent_id : g.levels_.back()) {
      // Snapshot: push_back below may reallocate cubes_.
      const PointSet members = g.cubes_[static_cast<std::size_t>(parent_id)].members;
      const int parent_center = g.cubes_[static_cast<std::size_t>(parent_id)].center;

      std::vector<char> in_cube(static_cast<std::size_t>(n), 0);
      for (int p : members) in_cube[static_cast<std::size_t>(p)] = 1;

      std::vector<int> net = {parent_center};
      for (int cand : order) {
        if (!in_cube[static_cast<std::size_t>(cand)] || cand == parent_center) continue;
        bool separated = true;
        for (int z : net) {
          if (space.dist(cand, z) < sep) {
            separated = false;
            break;
          }
        }
        if (separated) net.push_back(cand);
      }

      std::vector<PointSet> groups(net.size());
      for (int p : members) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        int best_id = -1;
        for (std::size_t zi = 0; zi < net.size(); ++zi) {
          double d = space.dist(p, net[zi]);
          if (d < best_d || (d == best_d && net[zi] < best_id)) {
            best_d = d;
            best = zi;
            best_id = net[zi];
          }
        }
        groups[best].push_back(p);
      }

      for (std::size_t zi = 0; zi < net.size(); ++zi) {
        Cube child;
        child.id = static_cast<int>(g.cubes_.size());
        child.level = k;
        child.center = net[zi];
        child.parent = parent_id;
        child.sidelength = sep;
        std::sort(groups[zi].begin(), groups[zi].end());
        child.members = std::move(groups[zi]);
        g.cubes_[static_cast<std::size_t>(parent_id)].children.push_back(child.id);
        next_level.push_back(child.id);
        g.cubes_.push_back(std::move(child));
      }
    }
    g.levels_.push_back(std::move(next_level));
  }
  g.k_max_ = k;
  g.finalize();
  return g;
}

DyadicGrid build_grid(const QuasiMetricSpace& space, double delta, std::uint64_t seed) {
  return build_grid(std::make_shared<const QuasiMetricSpace>(space), delta, seed);
}

DyadicGrid manual_grid(std::shared_ptr<const QuasiMetricSpace> space_ptr, double delta,
                       int k_min, const std::vector<std::vector<PointSet>>& level_partitions) {
  const QuasiMetricSpace& space = *space_ptr;
  DyadicGrid g;
  g.space_ = std::move(space_ptr);
  g.delta_ = delta;
  g.k_min_ = k_min;
  g.k_max_ = k_min + static_cast<int>(level_partitions.size()) - 1;
  const int n = space.size();
  std::vector<int> prev_cube_of(static_cast<std::size_t>(n), -1);
  for (std::size_t li = 0; li < level_partitions.size(); ++li) {
    std::vector<int> ids;
    for (const PointSet& raw_members : level_partitions[li]) {
      Cube c;
      c.id = static_cast<int>(g.cubes_.size());
      c.level = k_min + static_cast<int>(li);
      c.members = raw_members;
      std::sort(c.members.begin(), c.members.end());
      c.center = c.members.empty() ? -1 : c.members.front();
      c.sidelength = std::pow(delta, c.level);
      if (li > 0 && !c.members.empty()) {
        c.parent = prev_cube_of[static_cast<std::size_t>(c.members.front())];
        if (c.parent >= 0) {
          g.cubes_[static_cast<std::size_t>(c.parent)].children.push_back(c.id);
        }
      }
      ids.push_back(c.id);
      g.cubes_.push_back(std::move(c));
    }
    for (int id : ids) {
      for (int p : g.cubes_[static_cast<std::size_t>(id)].members) {
        prev_cube_of[static_cast<std::size_t>(p)] = id;
      }
    }
    g.levels_.push_back(std::move(ids));
  }
  g.finalize();
  return g;
}

DyadicGrid manual_grid(const QuasiMetricSpace& space, double delta, int k_min,
                       const std::vector<std::vector<PointSet>>& level_partitions) {
  return manual_grid(std::make_shared<const QuasiMetricSpace>(space), delta, k_min,
                     level_partitions);
}

GridCheck verify_grid(const DyadicGrid& grid) {
  const QuasiMetricSpace& space = grid.space();
  const int n = space.size();
  GridCheck check;
  check.partition = true;
  check.nesting = true;
  check.parent_child = true;

  // Partition per level, and a point -> cube map reused by the nesting check.
  std::vector<std::vector<int>> owner(
      static_cast<std::size_t>(grid.k_max() - grid.k_min() + 1),
      std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int k = grid.k_min(); k <= grid.k_max(); ++k) {
    auto& level_owner = owner[static_cast<std::size_t>(k - grid.k_min())];
    int covered = 0;
    for (int id : grid.level_cubes(k)) {
      const Cube& c = grid.cube(id);
      if (c.members.empty() && check.witness.empty()) {
        check.partition = false;
        check.witness = "empty cube " + std::to_string(id);
      }
      for (int p : c.members) {
        if (level_owner[static_cast<std::size_t>(p)] != -1) {
          check.partition = false;
          if (check.witness.empty()) {
            check.witness = "level " + std::to_string(k) + ": point " +
                            std::to_string(p) + " in two cubes";
          }
        }
        level_owner[static_cast<std::size_t>(p)] = id;
        ++covered;
      }
    }
    if (covered != n) {
      check.partition = false;
      if (check.witness.empty()) {
        check.witness = "level " + std::to_string(k) + " covers " +
                        std::to_string(covered) + " of " + std::to_string(n) + " points";
      }
    }
    for (int p = 0; p < n; ++p) {
      if (level_owner[static_cast<std::size_t>(p)] == -1) {
        check.partition = false;
        if (check.witness.empty()) {
          check.witness = "level " + std::to_string(k) + " misses point " + std::to_string(p);
        }
      }
    }
  }

  // Nesting: a cube's members must sit inside a single cube of every
  // coarser level; with per-level partitions this is equivalent to
  // pairwise intersections being empty or one of the two cubes.
  for (const Cube& c : grid.cubes()) {
    for (int k = grid.k_min(); k < c.level; ++k) {
      const auto& level_owner = owner[static_cast<std::size_t>(k - grid.k_min())];
      int host = -1;
      for (int p : c.members) {
        int o = level_owner[static_cast<std::size_t>(p)];
        if (host == -1) host = o;
        if (o != host) {
          check.nesting = false;
          if (check.witness.empty()) {
            check.witness = "cube " + std::to_string(c.id) + " straddles level " + std::to_string(k);
          }
        }
      }
    }
  }

  for (const Cube& c : grid.cubes()) {
    bool is_root_level = (c.level == grid.k_min());
    if (is_root_level != (c.parent == -1)) check.parent_child = false;
    if (c.center < 0 ||
        !std::binary_search(c.members.begin(), c.members.end(), c.center)) {
      check.parent_child = false;
      if (check.witness.empty()) {
        check.witness = "cube " + std::to_string(c.id) + " center not a member";
      }
      continue;
    }
    if (c.parent != -1) {
      const Cube& par = grid.cube(c.parent);
      if (par.level != c.level - 1) check.parent_child = false;
      if (!std::includes(par.members.begin(), par.members.end(),
                         c.members.begin(), c.members.end())) {
        check.parent_child = false;
        if (check.witness.empty()) {
          check.witness = "cube " + std::to_string(c.id) + " not inside its parent";
        }
      }
    }
    if (c.level < grid.k_max()) {
      std::size_t child_total = 0;
      for (int ch : c.children) {
        if (grid.cube(ch).parent != c.id) check.parent_child = false;
        child_total += grid.cube(ch).members.size();
      }
      if (c.children.empty() || child_total != c.members.size()) {
        check.parent_child = false;
        if (check.witness.empty()) {
          check.witness = "children of cube " + std::to_string(c.id) +
                          " do not partition it";
        }
      }
    }
  }

  // Empirical sandwich constants.
  check.inner_c = std::numeric_limits<double>::infinity();
  check.outer_c = 0.0;
  for (const Cube& c : grid.cubes()) {
    if (c.center < 0) continue;
    double max_in = 0.0;
    for (int p : c.members) max_in = std::max(max_in, space.dist(c.center, p));
    check.outer_c = std::max(check.outer_c, max_in / c.sidelength);
    if (c.members.size() < static_cast<std::size_t>(n)) {
      double min_out = std::numeric_limits<double>::infinity();
      std::size_t mi = 0;
      for (int p = 0; p < n; ++p) {
        if (mi < c.members.size() && c.members[mi] == p) {
          ++mi;
          continue;
        }
        min_out = std::min(min_out, space.dist(c.center, p));
      }
      check.inner_c = std::min(check.inner_c, min_out / c.sidelength);
    }
  }
  if (grid.mode() == GridMode::theoretical) {
    double kappa = space.kappa();
    double c1 = 1.0 / (12.0 * std::pow(kappa, 4.0));
    double big_c1 = 4.0 * kappa * kappa;
    check.sandwich_ok = (check.inner_c >= c1) && (check.outer_c < big_c1);
    if (!check.sandwich_ok && check.witness.empty()) {
      check.witness = "sandwich constants outside the theoretical range";
    }
  }
  return check;
}

Gdp gdp(const DyadicGrid& grid, int cube_id) {
  Gdp out;
  out.cube_id = cube_id;
  for (int step = 0; step < 2; ++step) {
    const Cube& c = grid.cube(out.cube_id);
    if (c.parent == -1) {
      out.clamped = true;
      return out;
    }
    out.cube_id = c.parent;
  }
  return out;
}

double constant_cd(const DyadicGrid& grid) {
  double worst = 1.0;
  for (const Cube& c : grid.cubes()) {
    int star = gdp(grid, c.id).cube_id;
    worst = std::max(worst, grid.cube_measure(star) / grid.cube_measure(c.id));
  }
  return worst;
}

double gdp_neighbor_closure(const DyadicGrid& grid) {
  const QuasiMetricSpace& space = grid.space();
  double big_c1 = 4.0 * space.kappa() * space.kappa();
  int closed = 0;
  for (const Cube& c : grid.cubes()) {
    const Cube& star = grid.cube(gdp(grid, c.id).cube_id);
    bool ok = true;
    for (int other_id : grid.level_cubes(c.level)) {
      const Cube& other = grid.cube(other_id);
      double d = space.dist(c.center, other.center);
      if (d > big_c1 * c.sidelength) continue;
      if (!std::includes(star.members.begin(), star.members.end(),
                         other.members.begin(), other.members.end())) {
        ok = false;
        break;
      }
    }
    if (ok) ++closed;
  }
  return grid.cube_count() == 0 ? 1.0 : static_cast<double>(closed) / grid.cube_count();
}

ChildParentEpsilon child_parent_epsilon(const DyadicGrid& grid) {
  ChildParentEpsilon out;
  double kappa = grid.space().kappa();
  double arg = 12.0 * std::pow(kappa, 6.0) * (4.0 * kappa + 2.0) / grid.delta();
  int s = static_cast<int>(std::ceil(std::log2(arg)));
  if (s < 0) s = 0;
  out.s = s;
  out.theoretical = std::pow(grid.space().doubling(), -static_cast<double>(s));
  out.empirical = 1.0;
  for (const Cube& c : grid.cubes()) {
    if (c.parent == -1) continue;
    out.empirical = std::min(
        out.empirical, grid.cube_measure(c.id) / grid.cube_measure(c.parent));
  }
  return out;
}

int radius_class(double r, double delta) {
  int k = static_cast<int>(std::floor(std::log(r) / std::log(delta)));
  while (std::pow(delta, k) < r) --k;
  while (std::pow(delta, k + 1) >= r) ++k;
  return k;
}

AdjacentSystem build_adjacent_system(std::shared_ptr<const QuasiMetricSpace> space_ptr,
                                     double delta, int k_target,
                                     const std::vector<std::uint64_t>& seeds) {
  if (k_target < 1) throw PreconditionError("k_target must be >= 1");
  const QuasiMetricSpace& space = *space_ptr;
  AdjacentSystem sys;
  for (int t = 0; t < k_target; ++t) {
    std::uint64_t seed =
        t < static_cast<int>(seeds.size()) ? seeds[static_cast<std::size_t>(t)]
                                           : static_cast<std::uint64_t>(t);
    DyadicGrid g = build_grid(space_ptr, delta, seed);
    g.tag_ = t + 1;
    sys.grids.push_back(std::move(g));
  }

  const int k_lo = sys.grids.front().k_min();
  int k_hi = sys.grids.front().k_max();
  for (const DyadicGrid& g : sys.grids) k_hi = std::max(k_hi, g.k_max());
  int covered_count = 0;
  for (const auto& piece : space.ball_pieces()) {
    double hi = std::isinf(piece.hi) ? std::max(piece.lo * 2.0, space.diameter() * 2.0)
                                     : piece.hi;
    if (hi <= 0.0) continue;
    // Radius classes realized by some r in (lo, hi].
    int k_from = radius_class(hi, delta);
    int k_to = piece.lo > 0.0 ? radius_class(piece.lo, delta) + 1 : k_hi + 1;
    for (int k = k_from; k <= std::min(k_to, k_hi + 1); ++k) {
      if (std::pow(delta, k + 1) >= hi || std::pow(delta, k) <= piece.lo) continue;
      BallCoverEntry entry;
      entry.center = piece.center;
      entry.radius = std::min(hi, std::pow(delta, k));
      entry.k = k;
      entry.level = std::clamp(k - 1, k_lo, k_hi);
      entry.level_clamped = (entry.level != k - 1);
      for (std::size_t t = 0; t < sys.grids.size(); ++t) {
        const DyadicGrid& g = sys.grids[t];
        int host = g.cube_of(piece.center, entry.level);
        const PointSet& host_members = g.cube(host).members;
        if (std::includes(host_members.begin(), host_members.end(),
                          piece.members.begin(), piece.members.end())) {
          entry.covered = true;
          entry.grid_tag = static_cast<int>(t) + 1;
          break;
        }
      }
      if (entry.covered) ++covered_count;
      sys.cover_report.push_back(entry);
    }
  }
  sys.coverage = sys.cover_report.empty()
                     ? 1.0
                     : static_cast<double>(covered_count) / sys.cover_report.size();
  return sys;
}

AdjacentSystem build_adjacent_system(const QuasiMetricSpace& space, double delta,
                                     int k_target, const std::vector<std::uint64_t>& seeds) {
  return build_adjacent_system(std::make_shared<const QuasiMetricSpace>(space), delta,
                               k_target, seeds);
}

}  // namespace dyadica
