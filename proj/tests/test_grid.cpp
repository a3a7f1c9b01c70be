#include <doctest.h>

#include <cmath>
#include <set>

#include "dyadica/fixtures.hpp"
#include "dyadica/grid.hpp"
#include "oracles.hpp"

using namespace dyadica;

namespace {

std::set<PointSet> level_sets(const DyadicGrid& g, int k) {
  std::set<PointSet> out;
  for (int id : g.level_cubes(k)) out.insert(g.cube(id).members);
  return out;
}

}  // namespace

TEST_CASE("build_grid rejects degenerate delta") {
  QuasiMetricSpace path4 = path_space(4);
  CHECK_THROWS_AS(build_grid(path4, 0.0, 0), DegenerateDelta);
  CHECK_THROWS_AS(build_grid(path4, 1.0, 0), DegenerateDelta);
  CHECK_THROWS_AS(build_grid(path4, -0.5, 0), DegenerateDelta);
}

TEST_CASE("one-point grid is a single root cube") {
  QuasiMetricSpace one = single_point_space();
  DyadicGrid g = build_grid(one, 0.5, 3);
  CHECK(g.cube_count() == 1);
  CHECK(g.cube(g.root()).members == PointSet{0});
  CHECK(verify_grid(g).all_ok());
}

TEST_CASE("DY4: the seed-0 halving grid on the 4-point path") {
  QuasiMetricSpace path4 = path_space(4);
  DyadicGrid dy4 = build_grid(path4, 0.5, 0);

  CHECK(dy4.k_min() == -2);
  CHECK(dy4.k_max() == 0);
  CHECK(dy4.level_cubes(-2).size() == 1);
  CHECK(dy4.level_cubes(-1).size() == 2);
  CHECK(dy4.level_cubes(0).size() == 4);

  CHECK(level_sets(dy4, -2) == std::set<PointSet>{{0, 1, 2, 3}});
  CHECK(level_sets(dy4, -1) == std::set<PointSet>{{0, 1}, {2, 3}});
  CHECK(level_sets(dy4, 0) == std::set<PointSet>{{0}, {1}, {2}, {3}});

  GridCheck check = verify_grid(dy4);
  CHECK(check.partition);
  CHECK(check.nesting);
  CHECK(check.parent_child);
  CHECK(dy4.mode() == GridMode::relaxed);  // 96 * 0.5 > 1
}

TEST_CASE("build_grid structural laws on random point clouds") {
  QuasiMetricSpace space = rand2d_space(64, 7);
  for (double delta : {0.5, 0.25}) {
    for (std::uint64_t seed : {0u, 7u, 13u}) {
      DyadicGrid g = build_grid(space, delta, seed);
      GridCheck check = verify_grid(g);
      CHECK(check.partition);
      CHECK(check.nesting);
      CHECK(check.parent_child);
      // Ancestor chains shrink until singletons.
      for (int p = 0; p < space.size(); ++p) {
        int id = g.leaf_of(p);
        CHECK(g.cube(id).members.size() == 1);
        while (g.cube(id).parent != -1) {
          CHECK(g.cube(id).members.size() <=
                g.cube(g.cube(id).parent).members.size());
          id = g.cube(id).parent;
        }
        CHECK(id == g.root());
      }
    }
  }
}

TEST_CASE("verify_grid flags a corrupted member set") {
  QuasiMetricSpace path4 = path_space(4);
  DyadicGrid bad = manual_grid(path4, 0.5, -2,
                               {{{0, 1, 2, 3}},
                                {{0, 1}, {2, 3}},
                                {{0}, {1}, {2}, {2}}});  // point 3 lost, 2 doubled
  GridCheck check = verify_grid(bad);
  CHECK_FALSE(check.partition);
  CHECK(check.witness.find("level 0") != std::string::npos);
}

TEST_CASE("gdp walks two levels and clamps at the root") {
  QuasiMetricSpace path4 = path_space(4);
  DyadicGrid dy4 = build_grid(path4, 0.5, 0);

  int leaf0 = dy4.leaf_of(0);
  Gdp g0 = gdp(dy4, leaf0);
  CHECK(g0.cube_id == dy4.root());
  CHECK_FALSE(g0.clamped);

  int pair01 = dy4.cube_of(0, -1);
  Gdp g1 = gdp(dy4, pair01);
  CHECK(g1.cube_id == dy4.root());
  CHECK(g1.clamped);

  Gdp g2 = gdp(dy4, dy4.root());
  CHECK(g2.cube_id == dy4.root());
  CHECK(g2.clamped);

  CHECK(gdp_neighbor_closure(dy4) <= 1.0);
}

TEST_CASE("constant_cd fixtures") {
  QuasiMetricSpace path4 = path_space(4);
  CHECK(constant_cd(build_grid(path4, 0.5, 0)) == 4.0);
  CHECK(constant_cd(build_grid(single_point_space(), 0.5, 0)) == 1.0);

  QuasiMetricSpace path8 = path_space(8);
  CHECK(constant_cd(binary_grid(path8)) == 4.0);
}

TEST_CASE("child/parent mass ratio, empirical and theoretical") {
  QuasiMetricSpace path4 = path_space(4);
  DyadicGrid dy4 = build_grid(path4, 0.5, 0);
  ChildParentEpsilon eps = child_parent_epsilon(dy4);
  CHECK(eps.empirical == 0.5);
  // kappa = 1, delta = 1/2: 12 * 6 * 2 = 144, s = 8, c_mu = 3.
  CHECK(eps.s == 8);
  CHECK(eps.theoretical == doctest::Approx(std::pow(3.0, -8.0)));
  CHECK(eps.empirical >= eps.theoretical);

  CHECK(child_parent_epsilon(build_grid(single_point_space(), 0.5, 0)).empirical == 1.0);
}

TEST_CASE("gdp supersets and sidelength law") {
  QuasiMetricSpace space = rand2d_space(32, 4);
  DyadicGrid g = build_grid(space, 0.25, 2);
  for (const Cube& c : g.cubes()) {
    Gdp parent2 = gdp(g, c.id);
    const Cube& star = g.cube(parent2.cube_id);
    CHECK(std::includes(star.members.begin(), star.members.end(),
                        c.members.begin(), c.members.end()));
    if (!parent2.clamped) {
      CHECK(star.sidelength ==
            doctest::Approx(c.sidelength / (g.delta() * g.delta())));
    }
  }
}

TEST_CASE("radius classes split the positive axis") {
  for (double delta : {0.5, 0.25}) {
    for (double r : {0.01, 0.3, 0.5, 1.0, 2.0, 3.7, 64.0}) {
      int k = radius_class(r, delta);
      CHECK(std::pow(delta, k + 1) < r);
      CHECK(r <= std::pow(delta, k));
    }
  }
}

TEST_CASE("adjacent system coverage report") {
  AdjacentSystem one = build_adjacent_system(single_point_space(), 0.5, 2, {0, 1});
  CHECK(one.coverage == 1.0);

  QuasiMetricSpace path4 = path_space(4);
  AdjacentSystem sys = build_adjacent_system(path4, 0.5, 3, {0, 1, 2});
  CHECK(sys.grids.size() == 3);
  CHECK(sys.grids[0].tag() == 1);
  CHECK(sys.grids[2].tag() == 3);
  CHECK(sys.coverage >= 0.0);
  CHECK(sys.coverage <= 1.0);
  // Every uncovered ball is recorded, never silently dropped.
  int covered = 0;
  for (const BallCoverEntry& e : sys.cover_report) covered += e.covered ? 1 : 0;
  CHECK(covered == doctest::Approx(sys.coverage * sys.cover_report.size()));

  AdjacentSystem rnd = build_adjacent_system(rand2d_space(64, 7), 0.25, 5, {0, 1, 2, 3, 4});
  CHECK(rnd.coverage > 0.0);
}

TEST_CASE("binary grid fixture passes verification") {
  QuasiMetricSpace path8 = path_space(8);
  DyadicGrid g = binary_grid(path8);
  GridCheck check = verify_grid(g);
  CHECK(check.partition);
  CHECK(check.nesting);
  CHECK(check.parent_child);
  CHECK(child_parent_epsilon(g).empirical == 0.5);
}
