#pragma once

#include <cstdint>
#include <vector>

#include "dyadica/banach.hpp"
#include "dyadica/grid.hpp"

namespace dyadica {

struct LevelDecomposition {
  double lambda = 0.0;
  PointSet omega;             // {x : M^D f(x) > lambda}
  std::vector<int> cube_ids;  // inclusion-maximal cubes with average > lambda
  double epsilon_used = 0.0;  // empirical child/parent mass ratio
};

/// Superlevel decomposition at height lambda; requires lambda strictly above
/// the global average of |f| (LambdaTooSmall otherwise). The returned cubes
/// partition omega and every cube average lies in (lambda, lambda/epsilon].
LevelDecomposition level_set_decomposition(const DyadicGrid& grid, const Values& f,
                                           double lambda);

struct SparseEntry {
  int cube_id = -1;
  PointSet witness;  // E(Q)
  int level = 0;     // ladder index k; the cube average exceeds a^k
  int index = 0;     // j within the level
  bool root_augmentation = false;
};

/// Cubes with pairwise-disjoint witnesses E(Q) of at least half the mass.
/// cz-origin families carry the data needed to recover every superlevel set
/// Omega_k = {M^D f > a^k}; manual families carry only the entries.
struct SparseFamily {
  enum class Origin { cz, manual };
  Origin origin = Origin::manual;
  std::vector<SparseEntry> entries;

  // cz-origin payload
  double a = 0.0;
  int k0 = 0;  // smallest k with a^k > 2 * avg |f|
  Values mdyadic_f;

  std::vector<int> levels() const;
  /// Omega_k for cz families; below the ladder base (k < k0) this is the
  /// whole space, matching the convention that the augmented root cube sits
  /// at ladder index k0 - 1.
  PointSet omega(int k) const;
  bool contains_level_data() const { return origin == Origin::cz; }
};

/// Stopping-time family: for each ladder index k >= k0 the inclusion-maximal
/// cubes with average > a^k and witnesses E(Q) = Q \ Omega_{k+1}, plus the
/// root cube with witness X \ Omega_{k0}. Requires a > 2/epsilon.
SparseFamily cz_sparse_family(const DyadicGrid& grid, const Values& f, double a);

/// Validates E(Q) subset of Q, pairwise disjointness, and mu(Q) <= 2 mu(E(Q))
/// exactly; throws MalformedCollection on failure.
void validate_sparse_family(const DyadicGrid& grid, const SparseFamily& family);

struct LevelDecayReport {
  int checks = 0;
  double worst_slack = 0.0;  // min over checks of bound - measured
  bool pass = false;
};

/// For every stopping-time cube Q at ladder index k and every l = 0..ell_max,
/// checks mu(Q intersect Omega_{k+l}) <= mu(Q) / (a^l epsilon).
LevelDecayReport level_decay_check(const DyadicGrid& grid, const Values& f, double a,
                                   int ell_max);

struct SparseDomination {
  SparseFamily family;
  std::vector<double> coefficients;  // cube average of f per entry
  double slack = 0.0;                // min over points of bound - M^D f
};

/// Pointwise bound M^D f <= a * sum avg_Q(f) chi_{E(Q)} over stopping-time
/// entries, with constant 2a on the root witness.
SparseDomination sparse_domination(const DyadicGrid& grid, const Values& f, double a);

/// A_S f = sum_Q avg_Q(f) * chi_{E(Q)}.
Values sparse_operator(const DyadicGrid& grid, const SparseFamily& family,
                       const Values& f);

/// A*_S g = sum_Q ((1/mu(Q)) int_{E(Q)} g) * chi_Q.
Values sparse_adjoint(const DyadicGrid& grid, const SparseFamily& family,
                      const Values& g);

/// |<A_S f, g> - <f, A*_S g>|; a finite Fubini identity, so the result is
/// zero up to roundoff.
double duality_check(const DyadicGrid& grid, const SparseFamily& family,
                     const Values& f, const Values& g);

/// Minimal nu >= 0 with C eps^-gamma a^(-nu gamma) / (1 - a^-gamma) <= 1/2.
int nu_for(double c, double gamma, double epsilon, double a);

struct SigmaSplit {
  Values sigma1;  // sum alpha_Q chi_{Q \ Omega_{k+nu}}
  Values sigma2;  // sum alpha_Q chi_{Q intersect Omega_{k+nu}}
};

/// Splits sum alpha_Q chi_Q by whether the point is still nu ladder rungs up,
/// where alpha_Q = (1/mu(Q)) int_{E(Q)} |g|. Requires a cz-origin family.
/// Asserts sigma1 <= nu * M^D g pointwise before returning.
SigmaSplit sigma_split(const DyadicGrid& grid, const SparseFamily& family,
                       const Values& g, int nu);

struct AdjointNormReport {
  int nu = 0;
  double epsilon = 0.0;
  int trials = 0;
  double worst_ratio = 0.0;  // max ||A*_S g|| / ||M^D g||
  bool pass = false;         // worst_ratio <= 2 nu
};

/// Builds the stopping-time family of f, computes nu from (C, gamma), and
/// checks ||A*_S g||_E <= 2 nu ||M^D g||_E over a battery of seeded g.
AdjointNormReport adjoint_norm_bound_check(const DyadicGrid& grid, const Values& f,
                                           double a, const BanachNorm& norm_e,
                                           double c, double gamma, int trials,
                                           std::uint64_t seed);

}  // namespace dyadica
