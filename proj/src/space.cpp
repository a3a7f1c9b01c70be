#include "dyadica/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace dyadica {

namespace {

std::string point_pair(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// Mass of the closed ball {y : d(c,y) <= r} via the sorted neighbor table.
double closed_mass(const QuasiMetricSpace::NeighborTable& t, double r) {
  auto it = std::upper_bound(t.dist.begin(), t.dist.end(), r);
  std::size_t count = static_cast<std::size_t>(it - t.dist.begin());
  return count == 0 ? 0.0 : t.mass_prefix[count - 1];
}

PointSet closed_members(const QuasiMetricSpace::NeighborTable& t, double r) {
  auto it = std::upper_bound(t.dist.begin(), t.dist.end(), r);
  std::size_t count = static_cast<std::size_t>(it - t.dist.begin());
  PointSet out(t.idx.begin(), t.idx.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(out.begin(), out.end());
  return out;
}

// Sharp doubling constant. Both mu(B(x,r)) and mu(B(x,2r)) are step
// functions of r whose jumps happen when r crosses a distance from x or half
// of one, so it suffices to evaluate the ratio once per piece between
// consecutive breakpoints; on the piece (lo, hi) the open balls equal the
// closed balls of radius lo and 2*lo.
double doubling_from_tables(const std::vector<QuasiMetricSpace::NeighborTable>& tables) {
  double worst = 1.0;
  for (const auto& t : tables) {
    std::vector<double> breaks;
    breaks.reserve(2 * t.dist.size());
    for (double d : t.dist) {
      if (d > 0.0) {
        breaks.push_back(d);
        breaks.push_back(d / 2.0);
      }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    breaks.insert(breaks.begin(), 0.0);  // piece (0, first): B = {x}
    for (double lo : breaks) {
      double small = closed_mass(t, lo);
      double big = closed_mass(t, 2.0 * lo);
      if (small > 0.0) worst = std::max(worst, big / small);
    }
  }
  return worst;
}

}  // namespace

double set_measure(const Values& mass, const PointSet& set) {
  double total = 0.0;
  for (int i : set) total += mass[static_cast<std::size_t>(i)];
  return total;
}

double QuasiMetricSpace::integral(const Values& f) const {
  double total = 0.0;
  for (int i = 0; i < n_; ++i) total += f[static_cast<std::size_t>(i)] * mass(i);
  return total;
}

PointSet QuasiMetricSpace::ball(int center, double radius) const {
  if (!(radius > 0.0)) {
    throw NonpositiveRadius("ball radius must be positive, got " +
                            std::to_string(radius));
  }
  PointSet out;
  for (int j = 0; j < n_; ++j) {
    if (dist(center, j) < radius) out.push_back(j);
  }
  return out;
}

PointSet QuasiMetricSpace::closed_ball(int center, double radius) const {
  return closed_members(tables_[static_cast<std::size_t>(center)], radius);
}

double QuasiMetricSpace::closed_ball_mass(int center, double radius) const {
  return closed_mass(tables_[static_cast<std::size_t>(center)], radius);
}

std::vector<QuasiMetricSpace::BallPiece> QuasiMetricSpace::ball_pieces() const {
  std::vector<BallPiece> out;
  for (int c = 0; c < n_; ++c) {
    const NeighborTable& t = tables_[static_cast<std::size_t>(c)];
    // Distinct distances from c, ascending; dist[0] == 0 (the center).
    std::vector<double> cuts;
    for (double d : t.dist) {
      if (cuts.empty() || d != cuts.back()) cuts.push_back(d);
    }
    for (std::size_t j = 0; j < cuts.size(); ++j) {
      BallPiece piece;
      piece.center = c;
      piece.lo = cuts[j];
      piece.hi = (j + 1 < cuts.size()) ? cuts[j + 1]
                                       : std::numeric_limits<double>::infinity();
      piece.members = closed_members(t, cuts[j]);
      out.push_back(std::move(piece));
    }
  }
  return out;
}

QuasiMetricSpace verify_axioms(const RawSpace& raw) {
  if (raw.n < 1) throw MalformedInput("space needs at least one point");
  const std::size_t n = static_cast<std::size_t>(raw.n);
  if (raw.dist.size() != n * n) {
    throw MalformedInput("distance table has wrong size");
  }
  if (raw.mass.size() != n) throw MalformedInput("mass list has wrong size");

  QuasiMetricSpace s;
  s.n_ = raw.n;
  s.dist_ = raw.dist;
  s.mass_ = raw.mass;

  for (int i = 0; i < raw.n; ++i) {
    for (int j = 0; j < raw.n; ++j) {
      double d = s.dist(i, j);
      if (!std::isfinite(d) || d < 0.0) {
        throw MalformedInput("distance " + point_pair(i, j) + " is not a finite nonnegative real");
      }
      if (d != s.dist(j, i)) {
        throw AsymmetricDistance("dist" + point_pair(i, j) + " != dist" + point_pair(j, i));
      }
      if (i == j && d != 0.0) {
        throw ZeroDistanceDistinctPoints("dist" + point_pair(i, i) + " must be 0");
      }
      if (i != j && d == 0.0) {
        throw ZeroDistanceDistinctPoints("distinct points " + point_pair(i, j) + " at distance 0");
      }
      s.diameter_ = std::max(s.diameter_, d);
    }
  }
  for (int i = 0; i < raw.n; ++i) {
    double m = s.mass(i);
    if (!std::isfinite(m) || m <= 0.0) {
      throw NegativeMass("mass(" + std::to_string(i) + ") must be strictly positive");
    }
    s.total_mass_ += m;
  }

  // kappa: worst ratio d(i,k)/(d(i,j)+d(j,k)) over nondegenerate triples.
  double kappa = 1.0;
  for (int i = 0; i < raw.n; ++i) {
    for (int k = 0; k < raw.n; ++k) {
      double dik = s.dist(i, k);
      if (dik == 0.0) continue;
      for (int j = 0; j < raw.n; ++j) {
        double denom = s.dist(i, j) + s.dist(j, k);
        if (denom > 0.0) kappa = std::max(kappa, dik / denom);
      }
    }
  }
  s.kappa_ = kappa;

  s.tables_.resize(n);
  for (int c = 0; c < raw.n; ++c) {
    auto& t = s.tables_[static_cast<std::size_t>(c)];
    std::vector<std::pair<double, int>> order;
    order.reserve(n);
    for (int j = 0; j < raw.n; ++j) order.emplace_back(s.dist(c, j), j);
    std::sort(order.begin(), order.end());
    t.dist.reserve(n);
    t.idx.reserve(n);
    t.mass_prefix.reserve(n);
    double acc = 0.0;
    for (auto& [d, j] : order) {
      acc += s.mass(j);
      t.dist.push_back(d);
      t.idx.push_back(j);
      t.mass_prefix.push_back(acc);
    }
  }

  s.c_mu_ = doubling_from_tables(s.tables_);
  s.n_bound_ = std::pow(s.c_mu_, 6.0 + 3.0 * std::log2(s.kappa_));
  return s;
}

double doubling_constant(const QuasiMetricSpace& space) {
  std::vector<QuasiMetricSpace::NeighborTable> tables;
  tables.reserve(static_cast<std::size_t>(space.size()));
  for (int c = 0; c < space.size(); ++c) tables.push_back(space.neighbors(c));
  return doubling_from_tables(tables);
}

GeometricDoubling geometric_doubling(const QuasiMetricSpace& space) {
  GeometricDoubling out;
  out.bound = space.geometric_doubling_bound();
  out.empirical = 1;
  // Worst case over each radius piece is its infimum: the ball is the closed
  // ball at lo and the covering half-balls are closed balls of radius lo/2.
  for (const auto& piece : space.ball_pieces()) {
    if (piece.lo <= 0.0) continue;  // the singleton piece is covered by itself
    std::vector<char> covered(piece.members.size(), 0);
    int count = 0;
    for (std::size_t i = 0; i < piece.members.size(); ++i) {
      if (covered[i]) continue;
      ++count;
      int z = piece.members[i];
      for (std::size_t j = i; j < piece.members.size(); ++j) {
        if (!covered[j] && space.dist(z, piece.members[j]) <= piece.lo / 2.0) {
          covered[j] = 1;
        }
      }
    }
    out.empirical = std::max(out.empirical, count);
  }
  return out;
}

std::vector<PointSet> enumerate_distinct_balls(const QuasiMetricSpace& space) {
  std::set<PointSet> seen;
  for (const auto& piece : space.ball_pieces()) seen.insert(piece.members);
  return std::vector<PointSet>(seen.begin(), seen.end());
}

}  // namespace dyadica
