#include "dyadica/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "dyadica/rng.hpp"

namespace dyadica {

Values hl_maximal(const QuasiMetricSpace& space, const Values& f) {
  const int n = space.size();
  Values out(static_cast<std::size_t>(n), 0.0);
  // Balls centered at c are prefixes of the distance-sorted point order, so
  // a suffix maximum of prefix averages gives, for each point, the best ball
  // centered at c containing it.
  std::vector<double> prefix_avg;
  std::vector<double> suffix_best;
  for (int c = 0; c < n; ++c) {
    const auto& t = space.neighbors(c);
    prefix_avg.assign(static_cast<std::size_t>(n), 0.0);
    double num = 0.0;
    for (int i = 0; i < n; ++i) {
      int p = t.idx[static_cast<std::size_t>(i)];
      num += std::abs(f[static_cast<std::size_t>(p)]) * space.mass(p);
      prefix_avg[static_cast<std::size_t>(i)] = num / t.mass_prefix[static_cast<std::size_t>(i)];
    }
    // Drop prefixes that are not balls: a prefix must end at a distance jump.
    suffix_best.assign(static_cast<std::size_t>(n), 0.0);
    double best = 0.0;
    for (int i = n - 1; i >= 0; --i) {
      bool realizable =
          (i == n - 1) || (t.dist[static_cast<std::size_t>(i)] !=
                           t.dist[static_cast<std::size_t>(i + 1)]);
      if (realizable) best = std::max(best, prefix_avg[static_cast<std::size_t>(i)]);
      suffix_best[static_cast<std::size_t>(i)] = best;
    }
    for (int i = 0; i < n; ++i) {
      int p = t.idx[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(p)] =
          std::max(out[static_cast<std::size_t>(p)], suffix_best[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

Values dyadic_maximal(const DyadicGrid& grid, const Values& f) {
  const int n = grid.space().size();
  std::vector<double> best(static_cast<std::size_t>(grid.cube_count()), 0.0);
  for (int k = grid.k_min(); k <= grid.k_max(); ++k) {
    for (int id : grid.level_cubes(k)) {
      const Cube& c = grid.cube(id);
      double num = 0.0;
      for (int p : c.members) num += std::abs(f[static_cast<std::size_t>(p)]) * grid.space().mass(p);
      double avg = num / grid.cube_measure(id);
      double up = c.parent == -1 ? 0.0 : best[static_cast<std::size_t>(c.parent)];
      best[static_cast<std::size_t>(id)] = std::max(avg, up);
    }
  }
  Values out(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    out[static_cast<std::size_t>(p)] = best[static_cast<std::size_t>(grid.leaf_of(p))];
  }
  return out;
}

Values localized_maximal(const DyadicGrid& grid, int cube_id, const Values& f) {
  const int n = grid.space().size();
  Values out(static_cast<std::size_t>(n), 0.0);
  // DFS over the subtree of Q; by nesting these are exactly the cubes that
  // meet Q with sidelength <= l(Q).
  std::vector<std::pair<int, double>> stack;  // (cube, best average above it)
  stack.emplace_back(cube_id, 0.0);
  while (!stack.empty()) {
    auto [id, up] = stack.back();
    stack.pop_back();
    const Cube& c = grid.cube(id);
    double num = 0.0;
    for (int p : c.members) num += std::abs(f[static_cast<std::size_t>(p)]) * grid.space().mass(p);
    double best = std::max(up, num / grid.cube_measure(id));
    if (c.level == grid.k_max() || c.children.empty()) {
      for (int p : c.members) out[static_cast<std::size_t>(p)] = best;
    } else {
      for (int ch : c.children) stack.emplace_back(ch, best);
    }
  }
  return out;
}

ComparisonConstants comparison_check(const AdjacentSystem& system, const Values& f) {
  const QuasiMetricSpace& space = system.grids.front().space();
  const int n = space.size();
  Values mf = hl_maximal(space, f);
  std::vector<Values> md;
  md.reserve(system.grids.size());
  for (const DyadicGrid& g : system.grids) md.push_back(dyadic_maximal(g, f));

  ComparisonConstants out;
  for (int p = 0; p < n; ++p) {
    double mfp = mf[static_cast<std::size_t>(p)];
    double sum = 0.0;
    for (const Values& v : md) {
      sum += v[static_cast<std::size_t>(p)];
      if (mfp > 0.0) {
        out.upper = std::max(out.upper, v[static_cast<std::size_t>(p)] / mfp);
      }
    }
    if (sum > 0.0) out.lower = std::max(out.lower, mfp / sum);
  }
  return out;
}

double operator_norm_probe(const QuasiMetricSpace& space,
                           const std::function<Values(const Values&)>& op,
                           const std::vector<PointSet>& indicator_sets,
                           const BanachNorm& norm, int trials, std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("operator_norm_probe needs trials >= 1");
  const std::size_t n = static_cast<std::size_t>(space.size());

  auto ratio = [&](const Values& f) {
    double denom = norm.eval(space, f);
    if (!(denom > 0.0)) return 0.0;
    return norm.eval(space, op(f)) / denom;
  };

  double best = 0.0;
  Values best_f(n, 1.0);
  auto consider = [&](const Values& f) {
    double r = ratio(f);
    if (r > best) {
      best = r;
      best_f = f;
    }
  };

  Values probe(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    probe[i] = 1.0;
    consider(probe);
    probe[i] = 0.0;
  }
  for (const PointSet& set : indicator_sets) {
    Values chi(n, 0.0);
    for (int p : set) chi[static_cast<std::size_t>(p)] = 1.0;
    consider(chi);
  }
  Rng rng(seed ^ 0x9027ULL);
  for (int t = 0; t < trials; ++t) {
    Values f(n);
    // Occasional spiky probes reach ratios that flat ones miss.
    double spike = (t % 3 == 0) ? 3.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(rng.next_unit(), spike);
    consider(f);
  }

  // Coordinate-ascent refinement of the best probe.
  Values f = best_f;
  double cur = best;
  for (int pass = 0; pass < 2; ++pass) {
    double top = 0.0;
    for (double v : f) top = std::max(top, v);
    for (std::size_t i = 0; i < n; ++i) {
      double orig = f[i];
      static constexpr double kFactors[] = {0.0, 0.5, 2.0};
      double keep = orig;
      for (double fac : kFactors) {
        double v = orig == 0.0 ? fac * std::max(top, 1.0) : orig * fac;
        if (v == orig) continue;
        f[i] = v;
        double r = ratio(f);
        if (r > cur) {
          cur = r;
          keep = v;
        }
      }
      f[i] = keep;
    }
  }
  return std::max(best, cur);
}

double operator_norm_probe(const QuasiMetricSpace& space, const DyadicGrid* grid,
                           MaximalOp op, const BanachNorm& norm, int trials,
                           std::uint64_t seed) {
  if (op == MaximalOp::dyadic) {
    if (grid == nullptr) throw PreconditionError("dyadic probe needs a grid");
    std::vector<PointSet> sets;
    sets.reserve(static_cast<std::size_t>(grid->cube_count()));
    for (const Cube& c : grid->cubes()) sets.push_back(c.members);
    return operator_norm_probe(
        space, [&](const Values& f) { return dyadic_maximal(*grid, f); }, sets, norm,
        trials, seed);
  }
  return operator_norm_probe(
      space, [&](const Values& f) { return hl_maximal(space, f); },
      enumerate_distinct_balls(space), norm, trials, seed);
}

}  // namespace dyadica
