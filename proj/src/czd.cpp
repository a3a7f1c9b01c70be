#include "dyadica/czd.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dyadica/maximal.hpp"
#include "dyadica/rng.hpp"

namespace dyadica {

namespace {

Values abs_values(const Values& f) {
  Values out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]);
  return out;
}

double average(const DyadicGrid& grid, int cube_id, const Values& f) {
  return grid.cube_sum(cube_id, f) / grid.cube_measure(cube_id);
}

// Inclusion-maximal cubes with average > lambda, in deterministic
// (level, smallest member) order via a root-first DFS.
std::vector<int> maximal_cubes_above(const DyadicGrid& grid, const Values& f_abs,
                                     double lambda) {
  std::vector<int> out;
  std::vector<int> stack = {grid.root()};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (average(grid, id, f_abs) > lambda) {
      out.push_back(id);
      continue;
    }
    const Cube& c = grid.cube(id);
    for (auto it = c.children.rbegin(); it != c.children.rend(); ++it) {
      stack.push_back(*it);
    }
  }
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    const Cube& ca = grid.cube(a);
    const Cube& cb = grid.cube(b);
    if (ca.level != cb.level) return ca.level < cb.level;
    return ca.members.front() < cb.members.front();
  });
  return out;
}

double global_average(const DyadicGrid& grid, const Values& f_abs) {
  return grid.cube_sum(grid.root(), f_abs) / grid.cube_measure(grid.root());
}

// Smallest integer k with base^k > threshold (base > 1, threshold > 0).
int smallest_power_above(double base, double threshold) {
  int k = static_cast<int>(std::ceil(std::log(threshold) / std::log(base)));
  while (std::pow(base, k) <= threshold) ++k;
  while (k > std::numeric_limits<int>::min() + 1 &&
         std::pow(base, k - 1) > threshold) {
    --k;
  }
  return k;
}

double require_supercritical(const DyadicGrid& grid, double a) {
  double eps = child_parent_epsilon(grid).empirical;
  if (!(a > 2.0 / eps)) {
    throw SubcriticalA("a = " + std::to_string(a) + " must exceed 2/epsilon = " +
                       std::to_string(2.0 / eps));
  }
  return eps;
}

}  // namespace

LevelDecomposition level_set_decomposition(const DyadicGrid& grid, const Values& f,
                                           double lambda) {
  Values f_abs = abs_values(f);
  double avg = global_average(grid, f_abs);
  if (!(lambda > avg)) {
    throw LambdaTooSmall("lambda = " + std::to_string(lambda) +
                         " must exceed the global average " + std::to_string(avg));
  }
  LevelDecomposition out;
  out.lambda = lambda;
  out.epsilon_used = child_parent_epsilon(grid).empirical;
  Values md = dyadic_maximal(grid, f_abs);
  for (int p = 0; p < grid.space().size(); ++p) {
    if (md[static_cast<std::size_t>(p)] > lambda) out.omega.push_back(p);
  }
  out.cube_ids = maximal_cubes_above(grid, f_abs, lambda);

  // The two displayed properties of the decomposition.
  PointSet covered;
  for (int id : out.cube_ids) {
    const Cube& c = grid.cube(id);
    covered.insert(covered.end(), c.members.begin(), c.members.end());
    double cube_avg = average(grid, id, f_abs);
    if (!(lambda < cube_avg) ||
        cube_avg > lambda / out.epsilon_used * (1.0 + 1e-12)) {
      throw PostconditionFailed("cube average outside (lambda, lambda/epsilon]");
    }
  }
  std::sort(covered.begin(), covered.end());
  if (covered != out.omega) {
    throw PostconditionFailed("superlevel set differs from the cube union");
  }
  return out;
}

std::vector<int> SparseFamily::levels() const {
  std::set<int> ks;
  for (const SparseEntry& e : entries) ks.insert(e.level);
  return std::vector<int>(ks.begin(), ks.end());
}

PointSet SparseFamily::omega(int k) const {
  if (origin != Origin::cz) {
    throw MissingLevelData("superlevel sets are only available for cz families");
  }
  PointSet out;
  if (k < k0) {
    for (std::size_t p = 0; p < mdyadic_f.size(); ++p) out.push_back(static_cast<int>(p));
    return out;
  }
  double threshold = std::pow(a, k);
  for (std::size_t p = 0; p < mdyadic_f.size(); ++p) {
    if (mdyadic_f[p] > threshold) out.push_back(static_cast<int>(p));
  }
  return out;
}

SparseFamily cz_sparse_family(const DyadicGrid& grid, const Values& f, double a) {
  double eps = require_supercritical(grid, a);
  (void)eps;
  Values f_abs = abs_values(f);
  double avg = global_average(grid, f_abs);
  if (avg <= 0.0) throw ZeroFunction("cz_sparse_family needs f not identically 0");

  SparseFamily fam;
  fam.origin = SparseFamily::Origin::cz;
  fam.a = a;
  fam.k0 = smallest_power_above(a, 2.0 * avg);
  fam.mdyadic_f = dyadic_maximal(grid, f_abs);

  const int n = grid.space().size();
  auto omega_mask = [&](int k) {
    std::vector<char> mask(static_cast<std::size_t>(n), 0);
    double threshold = std::pow(a, k);
    for (int p = 0; p < n; ++p) {
      if (fam.mdyadic_f[static_cast<std::size_t>(p)] > threshold) {
        mask[static_cast<std::size_t>(p)] = 1;
      }
    }
    return mask;
  };

  for (int k = fam.k0;; ++k) {
    std::vector<int> cubes = maximal_cubes_above(grid, f_abs, std::pow(a, k));
    if (cubes.empty()) break;
    std::vector<char> next = omega_mask(k + 1);
    int j = 0;
    for (int id : cubes) {
      SparseEntry entry;
      entry.cube_id = id;
      entry.level = k;
      entry.index = j++;
      for (int p : grid.cube(id).members) {
        if (!next[static_cast<std::size_t>(p)]) entry.witness.push_back(p);
      }
      fam.entries.push_back(std::move(entry));
    }
  }

  SparseEntry root;
  root.cube_id = grid.root();
  root.level = fam.k0 - 1;
  root.root_augmentation = true;
  std::vector<char> base = omega_mask(fam.k0);
  for (int p = 0; p < n; ++p) {
    if (!base[static_cast<std::size_t>(p)]) root.witness.push_back(p);
  }
  fam.entries.insert(fam.entries.begin(), std::move(root));

  validate_sparse_family(grid, fam);
  return fam;
}

void validate_sparse_family(const DyadicGrid& grid, const SparseFamily& family) {
  std::set<int> used;
  for (const SparseEntry& e : family.entries) {
    const Cube& c = grid.cube(e.cube_id);
    if (!std::includes(c.members.begin(), c.members.end(), e.witness.begin(),
                       e.witness.end())) {
      throw MalformedCollection("witness not contained in its cube");
    }
    for (int p : e.witness) {
      if (!used.insert(p).second) {
        throw MalformedCollection("witness sets overlap at point " + std::to_string(p));
      }
    }
    double mu_q = grid.cube_measure(e.cube_id);
    double mu_e = grid.space().measure(e.witness);
    if (mu_q > 2.0 * mu_e) {
      throw MalformedCollection("mu(Q) <= 2 mu(E(Q)) fails for cube " +
                                std::to_string(e.cube_id));
    }
  }
}

LevelDecayReport level_decay_check(const DyadicGrid& grid, const Values& f, double a,
                                   int ell_max) {
  double eps = require_supercritical(grid, a);
  SparseFamily fam = cz_sparse_family(grid, f, a);
  const QuasiMetricSpace& space = grid.space();

  LevelDecayReport rep;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (const SparseEntry& e : fam.entries) {
    if (e.root_augmentation) continue;
    const Cube& c = grid.cube(e.cube_id);
    for (int ell = 0; ell <= ell_max; ++ell) {
      PointSet omega = fam.omega(e.level + ell);
      PointSet inter;
      std::set_intersection(c.members.begin(), c.members.end(), omega.begin(),
                            omega.end(), std::back_inserter(inter));
      double measured = space.measure(inter);
      double bound = grid.cube_measure(e.cube_id) / (std::pow(a, ell) * eps);
      double slack = bound - measured;
      rep.worst_slack = std::min(rep.worst_slack, slack);
      if (slack < -1e-12) ok = false;
      ++rep.checks;
    }
  }
  rep.pass = ok;
  return rep;
}

SparseDomination sparse_domination(const DyadicGrid& grid, const Values& f, double a) {
  require_supercritical(grid, a);
  Values f_abs = abs_values(f);
  SparseDomination out;
  out.family = cz_sparse_family(grid, f_abs, a);

  const int n = grid.space().size();
  Values bound(static_cast<std::size_t>(n), 0.0);
  for (const SparseEntry& e : out.family.entries) {
    double avg = average(grid, e.cube_id, f_abs);
    out.coefficients.push_back(avg);
    double coef = (e.root_augmentation ? 2.0 * a : a) * avg;
    for (int p : e.witness) {
      bound[static_cast<std::size_t>(p)] += coef;
    }
  }
  Values md = dyadic_maximal(grid, f_abs);
  out.slack = std::numeric_limits<double>::infinity();
  for (int p = 0; p < n; ++p) {
    out.slack = std::min(out.slack, bound[static_cast<std::size_t>(p)] -
                                        md[static_cast<std::size_t>(p)]);
  }
  if (out.slack < -1e-12) {
    throw PostconditionFailed("sparse domination failed pointwise");
  }
  return out;
}

Values sparse_operator(const DyadicGrid& grid, const SparseFamily& family,
                       const Values& f) {
  Values out(f.size(), 0.0);
  for (const SparseEntry& e : family.entries) {
    double avg = average(grid, e.cube_id, f);
    for (int p : e.witness) out[static_cast<std::size_t>(p)] += avg;
  }
  return out;
}

Values sparse_adjoint(const DyadicGrid& grid, const SparseFamily& family,
                      const Values& g) {
  Values out(g.size(), 0.0);
  const QuasiMetricSpace& space = grid.space();
  for (const SparseEntry& e : family.entries) {
    double witness_sum = 0.0;
    for (int p : e.witness) witness_sum += g[static_cast<std::size_t>(p)] * space.mass(p);
    double coef = witness_sum / grid.cube_measure(e.cube_id);
    for (int p : grid.cube(e.cube_id).members) {
      out[static_cast<std::size_t>(p)] += coef;
    }
  }
  return out;
}

double duality_check(const DyadicGrid& grid, const SparseFamily& family,
                     const Values& f, const Values& g) {
  const QuasiMetricSpace& space = grid.space();
  Values as_f = sparse_operator(grid, family, f);
  Values adj_g = sparse_adjoint(grid, family, g);
  double lhs = 0.0;
  double rhs = 0.0;
  for (int p = 0; p < space.size(); ++p) {
    lhs += as_f[static_cast<std::size_t>(p)] * g[static_cast<std::size_t>(p)] * space.mass(p);
    rhs += f[static_cast<std::size_t>(p)] * adj_g[static_cast<std::size_t>(p)] * space.mass(p);
  }
  return std::abs(lhs - rhs);
}

int nu_for(double c, double gamma, double epsilon, double a) {
  if (!(c > 0.0) || !(gamma > 0.0)) throw PreconditionError("nu_for needs C, gamma > 0");
  double ratio = std::pow(a, -gamma);
  if (ratio >= 1.0) {
    throw DivergentTail("a^-gamma >= 1: the geometric tail diverges");
  }
  double front = c * std::pow(epsilon, -gamma) / (1.0 - ratio);
  int nu = 0;
  while (front * std::pow(a, -static_cast<double>(nu) * gamma) > 0.5) {
    ++nu;
    if (nu > 1000000) throw PostconditionFailed("nu_for failed to converge");
  }
  return nu;
}

SigmaSplit sigma_split(const DyadicGrid& grid, const SparseFamily& family,
                       const Values& g, int nu) {
  if (!family.contains_level_data()) {
    throw MissingLevelData("sigma_split needs a cz-origin family");
  }
  if (nu < 0) throw PreconditionError("nu must be nonnegative");
  const QuasiMetricSpace& space = grid.space();
  const int n = space.size();
  SigmaSplit out;
  out.sigma1.assign(static_cast<std::size_t>(n), 0.0);
  out.sigma2.assign(static_cast<std::size_t>(n), 0.0);

  Values g_abs = abs_values(g);
  for (const SparseEntry& e : family.entries) {
    double witness_sum = 0.0;
    for (int p : e.witness) witness_sum += g_abs[static_cast<std::size_t>(p)] * space.mass(p);
    double alpha = witness_sum / grid.cube_measure(e.cube_id);
    PointSet omega = family.omega(e.level + nu);
    std::vector<char> high(static_cast<std::size_t>(n), 0);
    for (int p : omega) high[static_cast<std::size_t>(p)] = 1;
    for (int p : grid.cube(e.cube_id).members) {
      if (high[static_cast<std::size_t>(p)]) {
        out.sigma2[static_cast<std::size_t>(p)] += alpha;
      } else {
        out.sigma1[static_cast<std::size_t>(p)] += alpha;
      }
    }
  }

  Values md_g = dyadic_maximal(grid, g_abs);
  for (int p = 0; p < n; ++p) {
    double cap = static_cast<double>(nu) * md_g[static_cast<std::size_t>(p)];
    if (out.sigma1[static_cast<std::size_t>(p)] > cap * (1.0 + 1e-12) + 1e-15) {
      throw PostconditionFailed("sigma1 exceeds nu * M^D g at point " + std::to_string(p));
    }
  }
  return out;
}

AdjointNormReport adjoint_norm_bound_check(const DyadicGrid& grid, const Values& f,
                                           double a, const BanachNorm& norm_e,
                                           double c, double gamma, int trials,
                                           std::uint64_t seed) {
  double eps = require_supercritical(grid, a);
  SparseFamily fam = cz_sparse_family(grid, f, a);
  const QuasiMetricSpace& space = grid.space();
  const std::size_t n = static_cast<std::size_t>(space.size());

  AdjointNormReport rep;
  rep.epsilon = eps;
  rep.nu = nu_for(c, gamma, eps, a);
  rep.trials = trials;
  Rng rng(seed ^ 0xADB0ULL);
  for (int t = 0; t < trials; ++t) {
    Values g(n);
    double spike = (t % 4 == 0) ? 4.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) g[i] = std::pow(rng.next_unit(), spike);
    double denom = norm_e.eval(space, dyadic_maximal(grid, g));
    if (!(denom > 0.0)) continue;
    double num = norm_e.eval(space, sparse_adjoint(grid, fam, g));
    rep.worst_ratio = std::max(rep.worst_ratio, num / denom);
  }
  rep.pass = rep.worst_ratio <= 2.0 * rep.nu + 1e-9;
  return rep;
}

}  // namespace dyadica
