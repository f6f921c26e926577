#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <vector>

#include "kdon/geometry.hpp"
#include "kdon/modular.hpp"
#include "kdon/wallcross.hpp"

#include "test_util.hpp"

using namespace kdon;
using testutil::poly;

namespace {

const i64 D = 12;

const ContextPtr& shared_ctx() {
  static ContextPtr ctx = build_context(D, default_window(D));
  return ctx;
}

LambdaPoly shift(const LambdaPoly& p, i64 s) {
  LambdaPoly r;
  for (const auto& [d, c] : p.terms()) r.set(d + s, c);
  return r;
}

}  // namespace

TEST_CASE("double exceptional wall values") {
  auto ctx = shared_ctx();
  Surface ph = surface_p2hat();
  IntClass xi{0, 2};
  CHECK(delta(ctx, ph, xi, {1, 0}, 8) == poly({{4, 1}}));
  CHECK(delta(ctx, ph, xi, {1, -1}, 8) == poly({{4, 2}, {8, -18}}));
  CHECK(delta(ctx, ph, xi, {2, 0}, 8) == poly({{4, 1}}));
  CHECK(delta(ctx, ph, xi, {2, -1}, 8) == poly({{4, 2}, {8, -27}}));
  CHECK(delta(ctx, ph, xi, {3, -1}, 8) == poly({{4, 2}, {8, -38}}));
}

TEST_CASE("single exceptional wall values") {
  auto ctx = shared_ctx();
  Surface bl = blowup(surface_p1xp1());
  // degree-5 value is -<2K,L> + K^2 + L^2 + 2 on the blown-down surface
  CHECK(delta(ctx, bl, {0, 0, 1}, {0, 0, 0}, 7) == poly({{5, 10}}));

  Surface ph = surface_p2hat();
  for (i64 k = 1; k <= 3; ++k)
    CHECK(delta(ctx, ph, {0, 1}, {k, 0}, 7) == poly({{5, k * k + 6 * k + 11}}));
}

TEST_CASE("wall antisymmetry and vanishing") {
  auto ctx = shared_ctx();
  Surface pp = surface_p1xp1();

  LambdaPoly d1 = delta(ctx, pp, {1, -1}, {2, 0}, 8);
  LambdaPoly d2 = delta(ctx, pp, {-1, 1}, {2, 0}, 8);
  CHECK(!d1.is_zero());
  CHECK(d1 == d2.scaled(GaussianRational(mpq_class(-1))));

  // zero pairing with L - K kills the contribution entirely
  CHECK(delta(ctx, pp, {1, -1}, {0, 0}, 8).is_zero());
  BiSeries strand = delta_bar_series(ctx, pp, {1, -1}, {0, 0});
  CHECK(equal_through(strand, BiSeries::zero(strand.lambda_trunc()), strand.lambda_trunc(), 10));

  // too negative square relative to the pairing: identically zero
  CHECK(delta(ctx, pp, {2, -2}, {0, 1}, 12).is_zero());

  // odd pairing with L is rejected
  CHECK_THROWS(delta(ctx, pp, {1, -2}, {1, 1}, 8));
}

TEST_CASE("wall contribution properties on all surfaces") {
  auto ctx = shared_ctx();
  Surface pp = surface_p1xp1(), ph = surface_p2hat(), bl = blowup(surface_p1xp1());

  struct Sample {
    const Surface& s;
    IntClass xi;
    IntClass L;
  };
  std::vector<Sample> samples = {
      {pp, {1, -1}, {2, 0}},  {pp, {1, -3}, {2, 2}},  {pp, {2, -1}, {2, 2}},
      {ph, {0, 2}, {1, 0}},   {ph, {1, 2}, {2, 0}},   {bl, {0, 0, 1}, {0, 0, 0}},
      {bl, {1, -1, 1}, {0, 0, 0}},
  };

  for (const Sample& smp : samples) {
    i64 m = -self_i(smp.s, smp.xi);
    IntClass lk(smp.L);
    for (size_t b = 0; b < lk.size(); ++b) lk[b] -= smp.s.K[b];
    i64 n = pair_i(smp.s, smp.xi, lk);
    i64 n_abs = n < 0 ? -n : n;

    LambdaPoly p = delta(ctx, smp.s, smp.xi, smp.L, 11);
    for (const auto& [d, c] : p.terms()) {
      CHECK(c.is_real());
      CHECK((d - m) % 4 == 0);
      CHECK(d >= m);
      CHECK(d <= 2 * n_abs + 4 - m);
    }

    BiSeries strand = delta_bar_series(ctx, smp.s, smp.xi, smp.L);
    CHECK(testutil::crossing_strand_supported(strand, m, n_abs));
    CHECK(strand.truncated_lambda(11).coeff_q0() == p);
  }
}

TEST_CASE("blowup spreads one wall across the exceptional lattice") {
  auto ctx = shared_ctx();
  Surface pp = surface_p1xp1();
  Surface bl = blowup(pp);

  IntClass xi{1, -1}, L{2, 0}, lhat{2, 0, 0};
  const i64 dc = 9;
  LambdaPoly total;
  for (i64 n = -3; n <= 4; ++n) {
    IntClass xh{xi[0], xi[1], 2 * n - 1};
    total += delta(ctx, bl, xh, lhat, dc);
  }
  CHECK(total == shift(delta(ctx, pp, xi, L, dc - 1), 1));
}

TEST_CASE("wall sums between polarizations") {
  auto ctx = shared_ctx();
  Surface pp = surface_p1xp1(), ph = surface_p2hat();

  // hostile configuration enumerates nothing
  CHECK(wall_sum(ctx, pp, {1, 0}, {-1, 0}, parse_polspec("F+", pp), PolSpec{{Class{1, 12}}}, 12)
            .is_zero());

  // landing on a wall picks up exactly half of its contribution
  PolSpec chamber{{Class{1, 0}, Class{0, -1}}};
  PolSpec on_wall{{Class{1, 0}}};
  CHECK(wall_sum(ctx, ph, {0, 0}, {1, 0}, chamber, on_wall, 8) ==
        poly({{4, mpq_class(-1, 2)}}));

  SUBCASE("additivity along chains of chambers") {
    IntClass c1{1, 0}, L{1, 2};
    for (const auto& [h1, h2, h3] :
         {std::array<Class, 3>{Class{2, 1}, Class{2, 3}, Class{5, 1}},
          std::array<Class, 3>{Class{3, 4}, Class{1, 3}, Class{7, 1}}}) {
      PolSpec p1{{h1}}, p2{{h2}}, p3{{h3}};
      LambdaPoly leg12 = wall_sum(ctx, pp, c1, L, p1, p2, 12);
      LambdaPoly leg23 = wall_sum(ctx, pp, c1, L, p2, p3, 12);
      LambdaPoly leg13 = wall_sum(ctx, pp, c1, L, p1, p3, 12);
      CHECK(leg12 + leg23 == leg13);
    }
  }
}
