#pragma once

#include <limits>
#include <vector>

#include "dyadica/errors.hpp"

namespace dyadica {

/// Sorted, duplicate-free list of point ids. Doubles as the MeasurableSet
/// representation: its measure is the sum of the point masses.
using PointSet = std::vector<int>;

/// One real value per point (functions, weights, maximal functions, ...).
using Values = std::vector<double>;

double set_measure(const Values& mass, const PointSet& set);

/// Uncertified input: a distance table and point masses.
struct RawSpace {
  int n = 0;
  std::vector<double> dist;  // n*n row-major
  Values mass;
};

struct GeometricDoubling {
  double bound = 1.0;  // c_mu^(6 + 3*log2(kappa))
  int empirical = 1;   // worst greedy half-radius cover over all balls
};

/// A finite space of homogeneous type, certified by verify_axioms: the
/// distance table is a quasi-metric with constant kappa and the point-mass
/// measure is doubling with constant c_mu.
class QuasiMetricSpace {
 public:
  int size() const { return n_; }
  double dist(int i, int j) const {
    return dist_[static_cast<std::size_t>(i) * n_ + j];
  }
  double mass(int i) const { return mass_[static_cast<std::size_t>(i)]; }
  const Values& masses() const { return mass_; }
  double total_mass() const { return total_mass_; }
  double diameter() const { return diameter_; }

  /// Smallest constant with dist(i,k) <= kappa*(dist(i,j) + dist(j,k)),
  /// clamped below at 1.
  double kappa() const { return kappa_; }
  /// Smallest constant with mu(B(x,2r)) <= c_mu * mu(B(x,r)) for all x, r.
  double doubling() const { return c_mu_; }
  double geometric_doubling_bound() const { return n_bound_; }

  double measure(const PointSet& set) const { return set_measure(mass_, set); }
  double integral(const Values& f) const;  // sum f(i)*mass(i)

  /// Open ball {y : dist(x,y) < r}. Throws NonpositiveRadius for r <= 0.
  PointSet ball(int center, double radius) const;
  /// Closed ball {y : dist(x,y) <= r}; r may be 0.
  PointSet closed_ball(int center, double radius) const;
  double closed_ball_mass(int center, double radius) const;

  /// Points sorted by distance from a fixed center, with prefix masses
  /// (mass_prefix[i] = total mass of the i+1 nearest points).
  struct NeighborTable {
    std::vector<double> dist;
    std::vector<int> idx;
    std::vector<double> mass_prefix;
  };
  const NeighborTable& neighbors(int center) const {
    return tables_[static_cast<std::size_t>(center)];
  }

  /// A ball together with the interval (lo, hi] of radii that realize it;
  /// hi = +infinity for the full-space ball.
  struct BallPiece {
    int center = 0;
    double lo = 0.0;
    double hi = 0.0;
    PointSet members;
  };
  /// Every (center, radius-interval) piece; member sets repeat across centers.
  std::vector<BallPiece> ball_pieces() const;

 private:
  friend QuasiMetricSpace verify_axioms(const RawSpace& raw);
  QuasiMetricSpace() = default;

  int n_ = 0;
  std::vector<double> dist_;
  Values mass_;
  double total_mass_ = 0.0;
  double diameter_ = 0.0;
  double kappa_ = 1.0;
  double c_mu_ = 1.0;
  double n_bound_ = 1.0;
  std::vector<NeighborTable> tables_;
};

/// Validates axioms (a)-(c) and the measure, computes the certified
/// constants, and returns the immutable space. Throws AxiomViolation
/// subclasses on failure.
QuasiMetricSpace verify_axioms(const RawSpace& raw);

/// Recomputes the sharp doubling constant from scratch (equals
/// space.doubling()).
double doubling_constant(const QuasiMetricSpace& space);

GeometricDoubling geometric_doubling(const QuasiMetricSpace& space);

/// Every set realizable as an open ball, each exactly once.
std::vector<PointSet> enumerate_distinct_balls(const QuasiMetricSpace& space);

}  // namespace dyadica
