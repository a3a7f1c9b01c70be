#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dyadica/space.hpp"

namespace dyadica {

/// A Banach function norm over a finite space. Built-in kinds have closed-form
/// associates; variable-exponent and custom norms fall back to the numeric
/// associate oracle.
class BanachNorm {
 public:
  enum class Kind { l1, lp, linf, weighted_lp, variable_lp, custom };

  static BanachNorm l1();
  static BanachNorm linf();
  static BanachNorm lp(double p);  // p in (1, inf); p == 1 / inf map to l1 / linf
  static BanachNorm weighted_lp(double p, Values weight);
  static BanachNorm variable_lp(Values exponents);  // Luxemburg norm, p(x) >= 1
  static BanachNorm custom(std::string name,
                           std::function<double(const QuasiMetricSpace&, const Values&)> eval);

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  const Values& weight() const { return weight_; }
  const Values& exponents() const { return exponents_; }
  const std::string& name() const { return name_; }

  /// ||f|| = rho(|f|). Built-in kinds take the modulus of f internally;
  /// custom evaluators receive f as given.
  double eval(const QuasiMetricSpace& space, const Values& f) const;

  bool has_closed_form_associate() const;
  /// Closed-form associate norm; throws NoClosedForm otherwise.
  BanachNorm associate() const;

 private:
  BanachNorm() = default;
  Kind kind_ = Kind::l1;
  double p_ = 1.0;
  Values weight_;
  Values exponents_;
  std::string name_;
  std::function<double(const QuasiMetricSpace&, const Values&)> eval_;
};

double norm_eval(const BanachNorm& norm, const QuasiMetricSpace& space, const Values& f);

BanachNorm associate_norm(const BanachNorm& norm);

/// Certified lower bound on the associate norm rho'(g): the best pairing
/// integral over feasible probes (random starts refined by coordinate
/// ascent). Deterministic given the seed.
double numeric_associate(const QuasiMetricSpace& space, const BanachNorm& norm,
                         const Values& g, int restarts, std::uint64_t seed);

struct AxiomReport {
  bool a1 = false;  // definiteness, homogeneity, triangle inequality
  bool a2 = false;  // lattice property
  bool a3 = false;  // monotone (Fatou) convergence
  bool a4 = false;  // finite norm of indicators
  bool a5 = false;  // integral over E bounded by C_E * rho(f)
  double c_e_full = 0.0;  // the A5 constant used for E = X
  std::string witness;
  bool all_ok() const { return a1 && a2 && a3 && a4 && a5; }
};

/// Checks the norm axioms on seeded samples; report-only.
AxiomReport axiom_check(const QuasiMetricSpace& space, const BanachNorm& norm,
                        int samples, std::uint64_t seed);

}  // namespace dyadica
