#include "dyadica/fixtures.hpp"

#include <cmath>

#include "dyadica/rng.hpp"

namespace dyadica {

QuasiMetricSpace path_space(int n) {
  RawSpace raw;
  raw.n = n;
  raw.dist.assign(static_cast<std::size_t>(n) * n, 0.0);
  raw.mass.assign(static_cast<std::size_t>(n), 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      raw.dist[static_cast<std::size_t>(i) * n + j] = std::abs(i - j);
    }
  }
  return verify_axioms(raw);
}

QuasiMetricSpace single_point_space() { return path_space(1); }

QuasiMetricSpace rand2d_space(int n, std::uint64_t seed) {
  Rng rng(seed ^ 0x2DULL);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = rng.next_unit();
    double y = rng.next_unit();
    pts.emplace_back(x, y);
  }
  RawSpace raw;
  raw.n = n;
  raw.dist.assign(static_cast<std::size_t>(n) * n, 0.0);
  raw.mass.assign(static_cast<std::size_t>(n), 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double dx = pts[static_cast<std::size_t>(i)].first - pts[static_cast<std::size_t>(j)].first;
      double dy = pts[static_cast<std::size_t>(i)].second - pts[static_cast<std::size_t>(j)].second;
      raw.dist[static_cast<std::size_t>(i) * n + j] = std::sqrt(dx * dx + dy * dy);
    }
  }
  return verify_axioms(raw);
}

DyadicGrid binary_grid(const QuasiMetricSpace& path_pow2) {
  int n = path_pow2.size();
  int m = 0;
  while ((1 << m) < n) ++m;
  if ((1 << m) != n) throw PreconditionError("binary_grid needs 2^m points");
  std::vector<std::vector<PointSet>> levels;
  for (int j = m; j >= 0; --j) {
    std::vector<PointSet> level;
    int block = 1 << j;
    for (int start = 0; start < n; start += block) {
      PointSet cube;
      for (int p = start; p < start + block; ++p) cube.push_back(p);
      level.push_back(std::move(cube));
    }
    levels.push_back(std::move(level));
  }
  return manual_grid(path_pow2, 0.5, -m, levels);
}

}  // namespace dyadica
