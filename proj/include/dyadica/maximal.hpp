#pragma once

#include <cstdint>
#include <functional>

#include "dyadica/banach.hpp"
#include "dyadica/grid.hpp"
#include "dyadica/space.hpp"

namespace dyadica {

/// Hardy-Littlewood maximal function: for each x the exact maximum of the
/// average of |f| over every ball containing x. O(n^2 log n).
Values hl_maximal(const QuasiMetricSpace& space, const Values& f);

/// Dyadic maximal function: maximum of cube averages of |f| along each
/// point's ancestor chain. One bottom-up and one top-down pass.
Values dyadic_maximal(const DyadicGrid& grid, const Values& f);

/// Maximal function localized to a cube: averages over subcubes of Q only;
/// zero outside Q.
Values localized_maximal(const DyadicGrid& grid, int cube_id, const Values& f);

struct ComparisonConstants {
  double upper = 0.0;  // max over grids, x of M^D f(x) / Mf(x)
  double lower = 0.0;  // max over x of Mf(x) / sum_t M^Dt f(x)
  double c_hk() const { return upper > lower ? upper : lower; }
};

/// Empirical two-sided comparison constants between the ball maximal function
/// and the grid maximal functions of an adjacent system (0/0 counts as 0).
ComparisonConstants comparison_check(const AdjacentSystem& system, const Values& f);

enum class MaximalOp { hardy_littlewood, dyadic };

/// Certified lower bound on sup ||T f|| / ||f||: best ratio over coordinate
/// indicators, the given indicator sets, seeded random probes, and a
/// coordinate-ascent refinement of the best probe. Deterministic given seed.
double operator_norm_probe(const QuasiMetricSpace& space,
                           const std::function<Values(const Values&)>& op,
                           const std::vector<PointSet>& indicator_sets,
                           const BanachNorm& norm, int trials, std::uint64_t seed);

/// Probe for M (ball indicators) or M^D (cube indicators) directly.
double operator_norm_probe(const QuasiMetricSpace& space, const DyadicGrid* grid,
                           MaximalOp op, const BanachNorm& norm, int trials,
                           std::uint64_t seed);

}  // namespace dyadica
