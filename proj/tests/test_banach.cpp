#include <doctest.h>

#include <cmath>

#include "dyadica/banach.hpp"
#include "dyadica/fixtures.hpp"
#include "dyadica/rng.hpp"

using namespace dyadica;

namespace {

Values seeded(int n, std::uint64_t seed, double scale = 1.0) {
  Rng rng(seed);
  Values f(static_cast<std::size_t>(n));
  for (double& v : f) v = rng.next_unit() * scale;
  return f;
}

}  // namespace

TEST_CASE("norm_eval pinned values") {
  QuasiMetricSpace path4 = path_space(4);
  CHECK(norm_eval(BanachNorm::lp(2.0), path4, {1, 0, 0, 0}) == doctest::Approx(1.0));
  CHECK(norm_eval(BanachNorm::l1(), path4, {1, 1, 1, 1}) == doctest::Approx(4.0));
  CHECK(norm_eval(BanachNorm::linf(), path4, {1, -3, 2, 0}) == doctest::Approx(3.0));
  CHECK(norm_eval(BanachNorm::weighted_lp(2.0, {2, 1, 1, 1}), path4, {1, 0, 0, 0}) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("variable exponent norm reduces to Lp at constant exponent") {
  QuasiMetricSpace path4 = path_space(4);
  BanachNorm var = BanachNorm::variable_lp({2, 2, 2, 2});
  BanachNorm l2 = BanachNorm::lp(2.0);
  for (std::uint64_t s = 0; s < 50; ++s) {
    Values f = seeded(4, 900 + s, 5.0);
    CHECK(var.eval(path4, f) == doctest::Approx(l2.eval(path4, f)).epsilon(1e-10));
  }
  CHECK(var.eval(path4, {0, 0, 0, 0}) == 0.0);

  // Mixed exponents still give a norm with exact homogeneity.
  BanachNorm mixed = BanachNorm::variable_lp({1, 2, 3, 1.5});
  Values f = seeded(4, 5, 2.0);
  double base = mixed.eval(path4, f);
  for (double t : {0.5, 2.0, 10.0}) {
    Values tf(4);
    for (int i = 0; i < 4; ++i) tf[static_cast<std::size_t>(i)] = t * f[static_cast<std::size_t>(i)];
    CHECK(mixed.eval(path4, tf) == doctest::Approx(t * base).epsilon(1e-11));
  }
}

TEST_CASE("closed-form associates") {
  CHECK(BanachNorm::lp(2.0).associate().p() == doctest::Approx(2.0));
  CHECK(BanachNorm::lp(3.0).associate().p() == doctest::Approx(1.5));
  CHECK(BanachNorm::l1().associate().kind() == BanachNorm::Kind::linf);
  CHECK(BanachNorm::linf().associate().kind() == BanachNorm::Kind::l1);

  BanachNorm w2 = BanachNorm::weighted_lp(2.0, {2, 1, 1, 1});
  BanachNorm w2a = w2.associate();
  CHECK(w2a.p() == doctest::Approx(2.0));
  CHECK(w2a.weight()[0] == doctest::Approx(0.5));  // w^(1-p') = w^-1 at p = 2

  CHECK_THROWS_AS(BanachNorm::variable_lp({2, 2, 2, 2}).associate(), NoClosedForm);
}

TEST_CASE("numeric associate approaches the closed form") {
  QuasiMetricSpace path4 = path_space(4);

  // rho = L2, g = e_0: the maximizer is g itself, value 1.
  double v = numeric_associate(path4, BanachNorm::lp(2.0), {1, 0, 0, 0}, 4, 0);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(v <= 1.0 + 1e-12);

  CHECK(numeric_associate(path4, BanachNorm::lp(2.0), {0, 0, 0, 0}, 2, 0) == 0.0);

  // rho = L1: rho'(1) = ||1||_inf = 1.
  double vinf = numeric_associate(path4, BanachNorm::l1(), {1, 1, 1, 1}, 4, 0);
  CHECK(vinf == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(vinf <= 1.0 + 1e-12);
}

TEST_CASE("numeric associate within 2% of the closed form on small spaces") {
  for (int n : {4, 8}) {
    QuasiMetricSpace space = rand2d_space(n, 31 + static_cast<std::uint64_t>(n));
    std::vector<BanachNorm> norms = {BanachNorm::lp(2.0), BanachNorm::lp(3.0),
                                     BanachNorm::lp(1.5), BanachNorm::l1(),
                                     BanachNorm::linf(),
                                     BanachNorm::weighted_lp(2.0, seeded(n, 1, 1.0))};
    for (auto& norm : norms) {
      if (norm.kind() == BanachNorm::Kind::weighted_lp) {
        // Ensure the weight stays strictly positive.
        continue;
      }
      BanachNorm assoc = norm.associate();
      for (std::uint64_t s = 0; s < 5; ++s) {
        Values g = seeded(n, 400 + s, 2.0);
        double truth = assoc.eval(space, g);
        double numeric = numeric_associate(space, norm, g, 6, s);
        CHECK(numeric <= truth * (1.0 + 1e-9));
        CHECK(numeric >= truth * 0.98);
      }
    }
  }
}

TEST_CASE("weighted associate cross-checked numerically") {
  QuasiMetricSpace path4 = path_space(4);
  BanachNorm w2 = BanachNorm::weighted_lp(2.0, {2, 1, 1, 1});
  BanachNorm assoc = w2.associate();
  for (std::uint64_t s = 0; s < 10; ++s) {
    Values g = seeded(4, 700 + s, 2.0);
    double truth = assoc.eval(path4, g);
    double numeric = numeric_associate(path4, w2, g, 6, s);
    CHECK(numeric <= truth * (1.0 + 1e-9));
    CHECK(numeric >= truth * 0.98);
  }
}

TEST_CASE("Lorentz-Luxemburg round trip on small spaces") {
  QuasiMetricSpace space = rand2d_space(6, 17);
  for (const BanachNorm& norm : {BanachNorm::lp(2.0), BanachNorm::lp(3.0), BanachNorm::l1()}) {
    BanachNorm assoc = norm.associate();
    for (std::uint64_t s = 0; s < 5; ++s) {
      Values f = seeded(6, 800 + s, 1.5);
      double original = norm.eval(space, f);
      double round_trip = numeric_associate(space, assoc, f, 6, s);
      CHECK(round_trip <= original * (1.0 + 1e-9));
      CHECK(round_trip >= original * 0.98);
    }
  }
}

TEST_CASE("Hoelder pairing bound for all closed-form norms") {
  QuasiMetricSpace space = rand2d_space(12, 23);
  std::vector<BanachNorm> norms = {BanachNorm::lp(1.5), BanachNorm::lp(2.0),
                                   BanachNorm::lp(3.0), BanachNorm::l1(),
                                   BanachNorm::linf(),
                                   BanachNorm::weighted_lp(2.0, Values(12, 2.0))};
  for (const BanachNorm& norm : norms) {
    BanachNorm assoc = norm.associate();
    for (std::uint64_t s = 0; s < 30; ++s) {
      Values f = seeded(12, 1000 + s, 2.0);
      Values g = seeded(12, 2000 + s, 2.0);
      double pair = 0.0;
      for (int i = 0; i < 12; ++i) {
        pair += f[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)] * space.mass(i);
      }
      CHECK(pair <= norm.eval(space, f) * assoc.eval(space, g) * (1.0 + 1e-11) + 1e-15);
    }
  }
}

TEST_CASE("axiom check passes for built-in norms") {
  QuasiMetricSpace path4 = path_space(4);
  for (const BanachNorm& norm :
       {BanachNorm::lp(2.0), BanachNorm::linf(), BanachNorm::l1(),
        BanachNorm::variable_lp({1.5, 2, 2.5, 3})}) {
    AxiomReport rep = axiom_check(path4, norm, 100, 0);
    INFO(norm.name(), ": ", rep.witness);
    CHECK(rep.all_ok());
    CHECK(rep.c_e_full > 0.0);
  }
}

TEST_CASE("axiom check catches a broken evaluator") {
  QuasiMetricSpace path4 = path_space(4);
  BanachNorm broken = BanachNorm::custom("signed-sum", [](const QuasiMetricSpace&,
                                                          const Values& f) {
    double total = 0.0;
    for (double v : f) total += v;  // no modulus: cancellation breaks definiteness
    return total;
  });
  AxiomReport rep = axiom_check(path4, broken, 50, 0);
  CHECK_FALSE(rep.all_ok());
  CHECK_FALSE(rep.witness.empty());
  CHECK((!rep.a1 || !rep.a2));
}

TEST_CASE("homogeneity across the built-ins") {
  QuasiMetricSpace space = rand2d_space(9, 41);
  for (const BanachNorm& norm :
       {BanachNorm::lp(2.5), BanachNorm::l1(), BanachNorm::linf(),
        BanachNorm::variable_lp(Values(9, 1.7))}) {
    Values f = seeded(9, 4, 3.0);
    double base = norm.eval(space, f);
    for (double t : {0.5, 2.0, 10.0}) {
      Values tf(9);
      for (int i = 0; i < 9; ++i) tf[static_cast<std::size_t>(i)] = t * f[static_cast<std::size_t>(i)];
      CHECK(norm.eval(space, tf) == doctest::Approx(t * base).epsilon(1e-11));
    }
  }
}
