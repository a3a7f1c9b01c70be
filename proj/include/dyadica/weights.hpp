#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dyadica/banach.hpp"
#include "dyadica/grid.hpp"

namespace dyadica {

/// Throws NonpositiveWeight unless every value is strictly positive.
void require_weight(const Values& w);

/// [w]_{A1}: max over points of M^D w(x) / w(x).
double a1_constant(const DyadicGrid& grid, const Values& w);

/// Fujii-Wilson-type constant: sup over cubes Q of
/// (1 / w(Q*)) * integral of the Q-localized maximal function of w,
/// where Q* is the (clamped) generalized dyadic parent.
double ainfty_constant(const DyadicGrid& grid, const Values& w);

/// ainfty_constant <= a1_constant, up to 1e-12 absolute slack.
bool check_a1_dominates_ainfty(const DyadicGrid& grid, const Values& w);

/// Upper end of the admissible eta range: 1 / (2 C_D^2 K [w]_{A1}).
double rhi_eta_cap(const DyadicGrid& grid, const Values& w, int k_grids);

struct RhiReport {
  double eta = 0.0;
  double a1 = 0.0;
  double c_d = 0.0;
  int cubes_checked = 0;
  double worst_slack = 0.0;  // min over cubes of RHS - LHS
  int violating_cube = -1;   // -1 when none
  bool pass = false;
};

/// For every cube checks
///   ((1/(2 mu(Q))) * int_Q w^(1+eta))^(1/(1+eta)) <= C_D [w]_{A1} avg_Q(w).
/// Throws EtaOutOfRange when eta is outside (0, cap].
RhiReport reverse_holder_check(const DyadicGrid& grid, const Values& w, double eta,
                               int k_grids);

struct RhiSubsetReport {
  double eta = 0.0;
  int pairs_checked = 0;
  double worst_slack = 0.0;
  bool pass = false;
  std::string witness;
};

/// For (Q, E) pairs (all singleton subsets plus seeded random subsets) checks
///   w(E)/w(Q) <= 2^(1/(1+eta)) C_D [w]_{A1} (mu(E)/mu(Q))^(eta/(1+eta)).
RhiSubsetReport rhi_subset_check(const DyadicGrid& grid, const Values& w, double eta,
                                 int k_grids, int random_subsets, std::uint64_t seed);

struct RdFResult {
  Values rg;
  int terms_used = 0;
  double tail_bound = 0.0;
  double norm_bound_a = 0.0;  // the supplied upper bound on ||M^D||
};

/// Iteration rg = sum_k (M^D)^k g / (2A)^k, truncated once the geometric tail
/// bound drops below tol. A must upper-bound the operator norm of M^D on the
/// given norm (cross-checked against the probe's lower bound). On return the
/// following were asserted: g <= rg pointwise, ||rg|| <= 2||g|| + tol, and
/// M^D(rg) <= 2A rg + 2A tol pointwise.
RdFResult rubio_de_francia(const DyadicGrid& grid, const Values& g,
                           const BanachNorm& norm_e_prime, double a_bound, double tol);

}  // namespace dyadica
