#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dyadica/banach.hpp"
#include "dyadica/czd.hpp"
#include "dyadica/grid.hpp"

namespace dyadica {

struct AinftyCheckResult {
  double lhs = 0.0;        // || sum alpha_Q chi_{G_Q} ||
  double rhs = 0.0;        // C * m^gamma * || sum alpha_Q chi_Q ||
  double max_ratio = 0.0;  // m = max mu(G_Q)/mu(Q)
  bool pass = false;
};

/// Evaluates both sides of the subset-density inequality
///   ||sum alpha_Q chi_{G_Q}|| <= C (max mu(G_Q)/mu(Q))^gamma ||sum alpha_Q chi_Q||
/// for a sparse cube collection with nonnegative alphas and pairwise disjoint
/// G_Q inside Q. Throws MalformedCollection when the G's overlap or escape
/// their cubes.
AinftyCheckResult ainfty_check(const QuasiMetricSpace& space, const BanachNorm& norm,
                               const std::vector<PointSet>& cubes, const Values& alphas,
                               const std::vector<PointSet>& gs, double c, double gamma);

/// Same check with the cubes drawn from a sparse family over a grid.
AinftyCheckResult ainfty_check(const DyadicGrid& grid, const BanachNorm& norm,
                               const SparseFamily& family, const Values& alphas,
                               const std::vector<PointSet>& gs, double c, double gamma);

struct AinftyInstance {
  std::vector<PointSet> cubes;
  Values alphas;
  std::vector<PointSet> gs;
  double lhs = 0.0;
  double rhs = 0.0;
  double m = 0.0;
  double r = 0.0;  // lhs / || sum alpha_Q chi_Q ||
};

struct AinftyCertificate {
  double c = 0.0;
  double gamma = 0.0;
  int trials = 0;
  double worst_m = 0.0;  // (m, r) pair that fits the envelope most tightly
  double worst_r = 0.0;
};

struct AinftyProbeResult {
  int trials = 0;
  int violations = 0;
  std::optional<AinftyInstance> witness;  // first violation, support-halved
  AinftyCertificate certificate;          // claimed or fitted envelope
  double c_fit = 0.0;
  double gamma_fit = 0.0;
};

/// Adversarial search for subset-density violations: sparse families from
/// stopping-time decompositions of seeded random functions, ancestor chains,
/// and level antichains, with alphas in [0,1] and disjoint G_Q biased toward
/// small mass ratios. With a claimed (C, gamma) it reports the first
/// violation (shrunk by halving the alpha support); otherwise it fits the
/// envelope over the Pareto frontier of observed (m, r) pairs.
AinftyProbeResult ainfty_probe(const AdjacentSystem& system, const BanachNorm& norm,
                               int trials, std::uint64_t seed,
                               std::optional<std::pair<double, double>> claimed);

struct LernerRow {
  int n = 0;
  double dyadic_norm_primal = 0.0;  // probe lower bound for M^D on Lp
  double dyadic_norm_dual = 0.0;    // probe lower bound for M^D on Lp'
  double gamma_fit = 0.0;
  bool pipeline_ok = false;  // iteration + sparse-domination checks ran clean
};

/// Desk-scale boundedness contrast: for each size builds the family space and
/// one grid, probes the dyadic maximal operator norm on Lp and its conjugate,
/// fits the subset-density exponent, and runs the iteration and sparse
/// pipeline checks.
std::vector<LernerRow> lerner_experiment(
    const std::function<QuasiMetricSpace(int)>& family, double p,
    const std::vector<int>& sizes, int probe_trials, std::uint64_t seed);

}  // namespace dyadica
