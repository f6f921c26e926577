#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <stdexcept>

#include <gmpxx.h>

#include "doctest.h"
#include "kdon/closed_form.hpp"
#include "kdon/geometry.hpp"
#include "kdon/invariants.hpp"
#include "kdon/modular.hpp"
#include "test_util.hpp"

using namespace kdon;
using testutil::poly;

namespace {

const ContextPtr& shared_ctx() {
  static ContextPtr ctx = build_context(14, default_window(14));
  return ctx;
}

// series + 1 + c4 * L^4, the left-hand side of the closed-form identities
// stated before the degree-4 convention is applied.
LambdaPoly with_constants(const LambdaPoly& series, const mpq_class& c4) {
  LambdaPoly out = series;
  out.add(0, GaussianRational(mpq_class(1)));
  out.add(4, GaussianRational(c4));
  return out;
}

}  // namespace

TEST_CASE("fiber limit series in closed form") {
  auto ctx = shared_ctx();
  Surface pp = surface_p1xp1(), ph = surface_p2hat();
  const i64 dm = 12;

  GenFun g0 = chi_fplus(ctx, pp, {1, 0}, 0, 0, dm);
  validate_genfun(pp, g0);
  CHECK(g0.series + poly({{0, 1}}) == closed_form("1/(1-L^4)", dm));

  GenFun g1 = chi_fplus(ctx, ph, {1, -1}, 1, 0, dm);
  validate_genfun(ph, g1);
  CHECK(g1.series + poly({{0, 1}}) == closed_form("1/(1-L^4)^2", dm));

  // exponent zero: the series itself vanishes identically
  CHECK(chi_fplus(ctx, pp, {1, 0}, -1, 0, dm).series.is_zero());
}

TEST_CASE("raw constants before the blowup convention") {
  auto ctx = shared_ctx();
  Surface pp = surface_p1xp1(), ph = surface_p2hat();
  const i64 dm = 12;

  // c1 = 0, L = n F + 2 G
  GenFun a1 = chi_fplus(ctx, pp, {0, 0}, 1, 2, dm);
  CHECK(with_constants(a1.series, 13) == closed_form("1/(1-L^4)^6", dm));
  GenFun a2 = chi_fplus(ctx, pp, {0, 0}, 2, 2, dm);
  CHECK(with_constants(a2.series, 17) == closed_form("(1+L^8)/(1-L^4)^9", dm));

  // c1 = 0, L = n F + G on the quadric
  GenFun b1 = chi_fplus(ctx, pp, {0, 0}, 1, 1, dm);
  CHECK(with_constants(b1.series, 10) == closed_form("1/(1-L^4)^4", dm));
  GenFun b2 = chi_fplus(ctx, pp, {0, 0}, 2, 1, dm);
  CHECK(with_constants(b2.series, 13) == closed_form("1/(1-L^4)^6", dm));

  // same family at half-integral n on the blown-up plane
  GenFun h1 = chi_fplus(ctx, ph, {0, 0}, mpq_class(1, 2), 1, dm);
  CHECK(with_constants(h1.series, mpq_class(17, 2)) == closed_form("1/(1-L^4)^3", dm));
  GenFun h2 = chi_fplus(ctx, ph, {0, 0}, mpq_class(3, 2), 1, dm);
  CHECK(with_constants(h2.series, mpq_class(23, 2)) == closed_form("1/(1-L^4)^5", dm));
}

TEST_CASE("fiber limit of the opposite ruling vanishes") {
  auto ctx = shared_ctx();
  Surface pp = surface_p1xp1();
  GenFun g = chi_at(ctx, pp, {1, 0}, Class{1, 2}, parse_polspec("G+", pp), 12);
  CHECK(g.series.is_zero());
}

TEST_CASE("polarization swap symmetry") {
  auto ctx = shared_ctx();
  Surface pp = surface_p1xp1();
  GenFun g = chi_at(ctx, pp, {0, 0}, Class{1, 2}, parse_polspec("G+", pp), 12);
  GenFun f = chi_at(ctx, pp, {0, 0}, Class{2, 1}, parse_polspec("F+", pp), 12);
  CHECK(g.series == f.series);
}

TEST_CASE("series at a polarization on the blown-up plane") {
  auto ctx = shared_ctx();
  Surface ph = surface_p2hat();
  PolSpec pol = parse_polspec("(H)", ph);
  const i64 dm = 12;

  GenFun g1 = chi_at(ctx, ph, {0, 0}, Class{1, 0}, pol, dm);
  CHECK(g1.series.coeff(4) == GaussianRational(mpq_class(-6)));
  CHECK(with_constants(g1.series, 9) == closed_form("1/(1-L^4)^3", dm));

  GenFun g2 = chi_at(ctx, ph, {0, 0}, Class{2, 0}, pol, dm);
  CHECK(g2.series.coeff(4) == GaussianRational(mpq_class(-15, 2)));
  CHECK(with_constants(g2.series, mpq_class(27, 2)) == closed_form("1/(1-L^4)^6", dm));
}

TEST_CASE("series at a polarization matches the fiber limit in the stable chamber") {
  auto ctx = shared_ctx();
  Surface pp = surface_p1xp1();
  GenFun at = chi_at(ctx, pp, {1, 0}, Class{1, 0}, PolSpec{{Class{7, 2}}}, 12);
  GenFun lim = chi_fplus(ctx, pp, {1, 0}, 1, 0, 12);
  CHECK(at.series == lim.series);
}

TEST_CASE("projective plane blowdowns") {
  auto ctx = shared_ctx();
  const i64 dm = 11;

  GenFun g0 = blowdown_p2(ctx, {0}, Class{1}, dm);
  CHECK(with_constants(g0.series, 9) == closed_form("1/(1-L^4)^3", dm));

  GenFun g1 = blowdown_p2(ctx, {1}, Class{2}, dm);
  CHECK(g1.series == closed_form("L^3/(1-L^4)^6", dm));

  GenFun g3 = blowdown_p2(ctx, {0}, Class{3}, dm);
  CHECK(with_constants(g3.series, 19) == closed_form("(1+L^8)/(1-L^4)^10", dm));
}

TEST_CASE("blowup convention rewrites exactly one coefficient") {
  auto ctx = shared_ctx();
  Surface pp = surface_p1xp1();
  const i64 dm = 12;

  GenFun raw = chi_fplus(ctx, pp, {0, 0}, 0, 0, dm);
  CHECK(raw.series.coeff(4) == GaussianRational(mpq_class(-4)));
  CHECK(!raw.conventioned);

  GenFun conv = kdon_convention(raw);
  CHECK(conv.conventioned);
  CHECK(conv.series + poly({{0, 1}}) == closed_form("1/(1-L^4)", dm));
  for (const auto& [d, c] : raw.series.terms())
    if (d != 4) CHECK(conv.series.coeff(d) == c);

  // only defined for c1 = 0
  GenFun odd = chi_fplus(ctx, pp, {1, 0}, 1, 0, dm);
  CHECK_THROWS_AS(kdon_convention(odd), std::invalid_argument);
}

TEST_CASE("exceptional class series") {
  auto ctx = shared_ctx();
  Surface ph = surface_p2hat();

  // Any polarization strictly between the ruling and H sees no further walls
  // for c1 = E, so the whole chamber shares one closed form.
  LambdaPoly expected = closed_form("L/(1-L^4)^3", 13);
  expected.add(1, GaussianRational(mpq_class(-1)));
  GenFun g = chi_at(ctx, ph, {0, 1}, Class{1, 0}, parse_polspec("2H-E", ph), 13);
  CHECK(g.series.coeff(1).is_zero());
  CHECK(g.series == expected);

  // At H itself the wall through +-E is averaged: half of delta_{-E}(H),
  // i.e. -9 L^5 on top of the chamber value.
  GenFun on = chi_at(ctx, ph, {0, 1}, Class{1, 0}, parse_polspec("(H)", ph), 13);
  expected.add(5, GaussianRational(mpq_class(-9)));
  CHECK(on.series == expected);
}

TEST_CASE("series validation rejects tampering") {
  auto ctx = shared_ctx();
  Surface pp = surface_p1xp1();
  GenFun g = chi_fplus(ctx, pp, {0, 0}, 1, 1, 8);
  validate_genfun(pp, g);

  GenFun bad_parity = g;
  bad_parity.series.add(2, GaussianRational(mpq_class(1)));
  CHECK_THROWS(validate_genfun(pp, bad_parity));

  GenFun bad_imag = g;
  bad_imag.series.add(4, GaussianRational(mpq_class(0), mpq_class(1)));
  CHECK_THROWS(validate_genfun(pp, bad_imag));

  GenFun bad_range = g;
  bad_range.series.add(g.lambda_truncation + 4, GaussianRational(mpq_class(1)));
  CHECK_THROWS(validate_genfun(pp, bad_range));
}
