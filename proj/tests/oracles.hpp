#pragma once

// Brute-force reference implementations used only by the tests. They must
// stay independent of the library code paths they cross-check: everything
// here enumerates directly from the definitions.

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "dyadica/grid.hpp"
#include "dyadica/space.hpp"

namespace oracles {

using dyadica::DyadicGrid;
using dyadica::PointSet;
using dyadica::QuasiMetricSpace;
using dyadica::Values;

// Every candidate radius that can change any ball: all pairwise distances,
// their halves and doubles, each nudged both ways.
inline std::vector<double> candidate_radii(const QuasiMetricSpace& space) {
  std::set<double> radii;
  for (int i = 0; i < space.size(); ++i) {
    for (int j = 0; j < space.size(); ++j) {
      double d = space.dist(i, j);
      if (d <= 0.0) continue;
      for (double r : {d / 2.0, d, 2.0 * d}) {
        radii.insert(r);
        radii.insert(std::nextafter(r, 0.0));
        radii.insert(std::nextafter(r, 1e300));
      }
    }
  }
  radii.insert(1.0);  // covers one-point spaces
  return {radii.begin(), radii.end()};
}

inline PointSet ball_by_scan(const QuasiMetricSpace& space, int center, double r) {
  PointSet out;
  for (int j = 0; j < space.size(); ++j) {
    if (space.dist(center, j) < r) out.push_back(j);
  }
  return out;
}

inline std::set<PointSet> distinct_balls_by_scan(const QuasiMetricSpace& space) {
  std::set<PointSet> balls;
  for (int c = 0; c < space.size(); ++c) {
    for (double r : candidate_radii(space)) {
      balls.insert(ball_by_scan(space, c, r));
    }
  }
  balls.erase(PointSet{});
  return balls;
}

// Hardy-Littlewood maximal function straight from the definition: every
// (center, radius) pair independently.
inline Values hl_maximal_by_scan(const QuasiMetricSpace& space, const Values& f) {
  Values out(static_cast<std::size_t>(space.size()), 0.0);
  for (int c = 0; c < space.size(); ++c) {
    for (double r : candidate_radii(space)) {
      PointSet ball = ball_by_scan(space, c, r);
      if (ball.empty()) continue;
      double num = 0.0;
      double den = 0.0;
      for (int p : ball) {
        num += std::abs(f[static_cast<std::size_t>(p)]) * space.mass(p);
        den += space.mass(p);
      }
      double avg = num / den;
      for (int p : ball) {
        out[static_cast<std::size_t>(p)] = std::max(out[static_cast<std::size_t>(p)], avg);
      }
    }
  }
  return out;
}

inline double cube_average(const DyadicGrid& grid, int id, const Values& f) {
  double num = 0.0;
  for (int p : grid.cube(id).members) {
    num += std::abs(f[static_cast<std::size_t>(p)]) * grid.space().mass(p);
  }
  return num / grid.cube_measure(id);
}

// Dyadic maximal function by scanning every cube independently.
inline Values dyadic_maximal_by_scan(const DyadicGrid& grid, const Values& f) {
  Values out(static_cast<std::size_t>(grid.space().size()), 0.0);
  for (const dyadica::Cube& c : grid.cubes()) {
    double avg = cube_average(grid, c.id, f);
    for (int p : c.members) {
      out[static_cast<std::size_t>(p)] = std::max(out[static_cast<std::size_t>(p)], avg);
    }
  }
  return out;
}

// Inclusion-maximal cubes with average above lambda, found by pairwise
// subset tests rather than tree pruning.
inline std::vector<int> maximal_cubes_by_scan(const DyadicGrid& grid, const Values& f,
                                              double lambda) {
  std::vector<int> above;
  for (const dyadica::Cube& c : grid.cubes()) {
    if (cube_average(grid, c.id, f) > lambda) above.push_back(c.id);
  }
  std::vector<int> out;
  for (int q : above) {
    bool maximal = true;
    for (int other : above) {
      if (other == q) continue;
      const auto& mq = grid.cube(q).members;
      const auto& mo = grid.cube(other).members;
      if (mo.size() > mq.size() &&
          std::includes(mo.begin(), mo.end(), mq.begin(), mq.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracles
