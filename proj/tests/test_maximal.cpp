#include <doctest.h>

#include <cmath>

#include "dyadica/fixtures.hpp"
#include "dyadica/maximal.hpp"
#include "dyadica/rng.hpp"
#include "oracles.hpp"

using namespace dyadica;

namespace {

Values seeded(int n, std::uint64_t seed, double scale = 1.0) {
  Rng rng(seed);
  Values f(static_cast<std::size_t>(n));
  for (double& v : f) v = rng.next_unit() * scale;
  return f;
}

}  // namespace

TEST_CASE("hl_maximal pinned values on the 4-point path") {
  QuasiMetricSpace path4 = path_space(4);
  Values mf = hl_maximal(path4, {1, 0, 0, 0});
  CHECK(mf[0] == doctest::Approx(1.0));
  CHECK(mf[1] == doctest::Approx(0.5));
  CHECK(mf[2] == doctest::Approx(1.0 / 3.0));
  CHECK(mf[3] == doctest::Approx(0.25));

  Values constant = hl_maximal(path4, {-2, -2, -2, -2});
  for (double v : constant) CHECK(v == doctest::Approx(2.0));

  Values zero = hl_maximal(path4, {0, 0, 0, 0});
  for (double v : zero) CHECK(v == 0.0);
}

TEST_CASE("hl_maximal agrees with the center-radius scan oracle") {
  for (int n : {2, 5, 8}) {
    QuasiMetricSpace space = rand2d_space(n, 21 + static_cast<std::uint64_t>(n));
    for (std::uint64_t s : {0u, 1u, 2u, 3u, 4u}) {
      Values f = seeded(n, s * 7 + 1, 3.0);
      Values mine = hl_maximal(space, f);
      Values ref = oracles::hl_maximal_by_scan(space, f);
      for (int p = 0; p < n; ++p) {
        CHECK(mine[static_cast<std::size_t>(p)] ==
              doctest::Approx(ref[static_cast<std::size_t>(p)]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("dyadic_maximal pinned values on DY4") {
  QuasiMetricSpace path4 = path_space(4);
  DyadicGrid dy4 = build_grid(path4, 0.5, 0);

  Values a = dyadic_maximal(dy4, {1, 0, 0, 0});
  CHECK(a[0] == doctest::Approx(1.0));
  CHECK(a[1] == doctest::Approx(0.5));
  CHECK(a[2] == doctest::Approx(0.25));
  CHECK(a[3] == doctest::Approx(0.25));

  Values b = dyadic_maximal(dy4, {0, 0, 0, 4});
  CHECK(b[0] == doctest::Approx(1.0));
  CHECK(b[1] == doctest::Approx(1.0));
  CHECK(b[2] == doctest::Approx(2.0));
  CHECK(b[3] == doctest::Approx(4.0));

  Values c = dyadic_maximal(dy4, {3, 3, 3, 3});
  for (double v : c) CHECK(v == doctest::Approx(3.0));
}

TEST_CASE("dyadic_maximal agrees with the all-cubes scan") {
  QuasiMetricSpace space = rand2d_space(32, 5);
  DyadicGrid g = build_grid(space, 0.5, 1);
  for (std::uint64_t s : {10u, 11u, 12u}) {
    Values f = seeded(32, s);
    Values mine = dyadic_maximal(g, f);
    Values ref = oracles::dyadic_maximal_by_scan(g, f);
    for (std::size_t p = 0; p < mine.size(); ++p) {
      CHECK(mine[p] == doctest::Approx(ref[p]).epsilon(1e-12));
    }
  }
}

TEST_CASE("localized maximal function") {
  QuasiMetricSpace path4 = path_space(4);
  DyadicGrid dy4 = build_grid(path4, 0.5, 0);
  Values f = {1, 0, 0, 0};

  int pair01 = dy4.cube_of(0, -1);
  Values loc = localized_maximal(dy4, pair01, f);
  CHECK(loc[0] == doctest::Approx(1.0));
  CHECK(loc[1] == doctest::Approx(0.5));
  CHECK(loc[2] == 0.0);
  CHECK(loc[3] == 0.0);

  // Localizing at the root recovers the dyadic maximal function.
  Values root_loc = localized_maximal(dy4, dy4.root(), f);
  Values md = dyadic_maximal(dy4, f);
  for (std::size_t p = 0; p < md.size(); ++p) CHECK(root_loc[p] == md[p]);

  Values vanish = localized_maximal(dy4, dy4.leaf_of(2), f);
  for (double v : vanish) CHECK(v == 0.0);
}

TEST_CASE("sublinearity and monotonicity properties") {
  QuasiMetricSpace space = rand2d_space(16, 9);
  DyadicGrid g = build_grid(space, 0.5, 0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    Values f = seeded(16, 100 + s);
    Values h = seeded(16, 200 + s);
    Values sum(16);
    for (int i = 0; i < 16; ++i) {
      sum[static_cast<std::size_t>(i)] =
          f[static_cast<std::size_t>(i)] + h[static_cast<std::size_t>(i)];
    }

    Values mf = hl_maximal(space, f);
    Values mh = hl_maximal(space, h);
    Values msum = hl_maximal(space, sum);
    Values df = dyadic_maximal(g, f);
    Values dh = dyadic_maximal(g, h);
    Values dsum = dyadic_maximal(g, sum);
    for (int i = 0; i < 16; ++i) {
      std::size_t p = static_cast<std::size_t>(i);
      CHECK(msum[p] <= mf[p] + mh[p] + 1e-12);
      CHECK(dsum[p] <= df[p] + dh[p] + 1e-12);
      // |f| <= M f pointwise: singleton balls and leaf cubes exist.
      CHECK(mf[p] >= f[p] - 1e-15);
      CHECK(df[p] >= f[p] - 1e-15);
    }

    Values scaled(16);
    for (int i = 0; i < 16; ++i) {
      scaled[static_cast<std::size_t>(i)] = -2.5 * f[static_cast<std::size_t>(i)];
    }
    Values mscaled = hl_maximal(space, scaled);
    for (int i = 0; i < 16; ++i) {
      std::size_t p = static_cast<std::size_t>(i);
      CHECK(mscaled[p] == doctest::Approx(2.5 * mf[p]).epsilon(1e-12));
    }

    // f <= h pointwise implies Mf <= Mh pointwise.
    Values lower(16);
    for (int i = 0; i < 16; ++i) {
      lower[static_cast<std::size_t>(i)] = 0.5 * f[static_cast<std::size_t>(i)];
    }
    Values mlower = hl_maximal(space, lower);
    Values dlower = dyadic_maximal(g, lower);
    for (int i = 0; i < 16; ++i) {
      std::size_t p = static_cast<std::size_t>(i);
      CHECK(mlower[p] <= mf[p] + 1e-12);
      CHECK(dlower[p] <= df[p] + 1e-12);
    }

    // The root cube forces M^D f >= the global average.
    double avg = g.cube_sum(g.root(), f) / space.total_mass();
    for (int i = 0; i < 16; ++i) CHECK(df[static_cast<std::size_t>(i)] >= avg - 1e-12);
  }
}

TEST_CASE("comparison constants on the single-grid path system") {
  QuasiMetricSpace path4 = path_space(4);
  AdjacentSystem sys = build_adjacent_system(path4, 0.5, 1, {0});

  ComparisonConstants flat = comparison_check(sys, {1, 1, 1, 1});
  CHECK(flat.upper == doctest::Approx(1.0));
  CHECK(flat.lower == doctest::Approx(1.0));  // K = 1

  ComparisonConstants spike = comparison_check(sys, {1, 0, 0, 0});
  CHECK(spike.upper == doctest::Approx(1.0));
  CHECK(spike.lower == doctest::Approx(4.0 / 3.0));  // x = 2: (1/3) / (1/4)
  CHECK(spike.c_hk() == doctest::Approx(4.0 / 3.0));

  ComparisonConstants zero = comparison_check(sys, {0, 0, 0, 0});
  CHECK(zero.upper == 0.0);
  CHECK(zero.lower == 0.0);
}

TEST_CASE("operator norm probe lower bounds") {
  QuasiMetricSpace path4 = path_space(4);
  DyadicGrid dy4 = build_grid(path4, 0.5, 0);

  double inf_bound = operator_norm_probe(path4, &dy4, MaximalOp::dyadic,
                                         BanachNorm::linf(), 16, 0);
  CHECK(inf_bound == doctest::Approx(1.0));  // averages never beat the sup

  double l1_bound = operator_norm_probe(path4, &dy4, MaximalOp::dyadic,
                                        BanachNorm::l1(), 16, 0);
  CHECK(l1_bound >= 2.0 - 1e-12);  // ||M^D e_0||_1 = 1 + 1/2 + 1/4 + 1/4

  double l2_bound = operator_norm_probe(path4, &dy4, MaximalOp::dyadic,
                                        BanachNorm::lp(2.0), 16, 0);
  CHECK(l2_bound >= std::sqrt(1.375) - 1e-12);
  CHECK(l2_bound <= 2.0 + 1e-12);  // martingale maximal bound p' = 2

  double hl_bound = operator_norm_probe(path4, nullptr, MaximalOp::hardy_littlewood,
                                        BanachNorm::lp(2.0), 16, 0);
  CHECK(hl_bound >= 1.0 - 1e-12);
}

TEST_CASE("probe determinism") {
  QuasiMetricSpace space = rand2d_space(16, 2);
  DyadicGrid g = build_grid(space, 0.5, 0);
  double a = operator_norm_probe(space, &g, MaximalOp::dyadic, BanachNorm::lp(2.0), 32, 5);
  double b = operator_norm_probe(space, &g, MaximalOp::dyadic, BanachNorm::lp(2.0), 32, 5);
  CHECK(a == b);
}
