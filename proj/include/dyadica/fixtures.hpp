#pragma once

#include <cstdint>

#include "dyadica/grid.hpp"
#include "dyadica/space.hpp"

namespace dyadica {

/// Points 0..n-1 on a line, dist |i-j|, unit masses.
QuasiMetricSpace path_space(int n);

QuasiMetricSpace single_point_space();

/// n seeded uniform points in the unit square, Euclidean metric, unit masses.
QuasiMetricSpace rand2d_space(int n, std::uint64_t seed);

/// Standard halving intervals on a path of 2^m unit-mass points: level -j
/// holds the blocks of length 2^j.
DyadicGrid binary_grid(const QuasiMetricSpace& path_pow2);

}  // namespace dyadica
