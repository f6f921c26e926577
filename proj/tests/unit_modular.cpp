#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "kdon/common.hpp"
#include "kdon/modular.hpp"

#include "test_util.hpp"

using namespace kdon;

namespace {

const i64 D = 10;

const ContextPtr& shared_ctx() {
  static ContextPtr ctx = build_context(D, default_window(D));
  return ctx;
}

GaussianRational re(long p, long q = 1) { return GaussianRational(mpq_class(p, q)); }
GaussianRational im(long p, long q = 1) {
  return GaussianRational(mpq_class(0), mpq_class(p, q));
}

BiSeries one() { return BiSeries::monomial(re(1), 0, 0, D); }

// sinh((a2/2)h) is an odd polynomial of degree <= a2 in (q^-1 L) over the
// support ring, so a nonzero L^d q^k needs k == -d (mod 4) and
// k >= d - 2*min(d, a2).
bool sinh_supported(const BiSeries& s, i64 a2) {
  for (i64 d = s.lambda_min(); d <= s.lambda_trunc(); ++d) {
    const QLaurent& r = s.row(d);
    for (i64 k = r.stored_begin(); k < r.stored_end(); ++k) {
      if (r.stored(k).is_zero()) continue;
      if (d % 2 == 0) return false;
      if ((((k + d) % 4) + 4) % 4 != 0) return false;
      if (k < d - 2 * (d < a2 ? d : a2)) return false;
    }
  }
  return true;
}

// cosh(n h) is an even polynomial of degree <= n in (q^-2 L^2) over the
// support ring: rows are even, k == d (mod 4), k >= d - 4*min(n, d/2).
bool cosh_supported(const BiSeries& s, i64 n) {
  for (i64 d = s.lambda_min(); d <= s.lambda_trunc(); ++d) {
    const QLaurent& r = s.row(d);
    for (i64 k = r.stored_begin(); k < r.stored_end(); ++k) {
      if (r.stored(k).is_zero()) continue;
      if (d % 2 != 0) return false;
      if ((((k - d) % 4) + 4) % 4 != 0) return false;
      if (k < d - 4 * (n < d / 2 ? n : d / 2)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("theta nullwerte expansions") {
  const auto& ctx = *shared_ctx();
  const QLaurent& t2 = ctx.theta2_null();
  const QLaurent& t3 = ctx.theta3_null();
  const QLaurent& t4 = ctx.theta4_null();

  for (i64 k = 0; k <= 30; ++k) {
    GaussianRational e2 = (k == 1 || k == 9 || k == 25) ? re(2) : re(0);
    GaussianRational e3 = k == 0 ? re(1) : (k == 4 || k == 16) ? re(2) : re(0);
    GaussianRational e4 = k == 0 ? re(1) : (k == 4) ? re(-2) : (k == 16) ? re(2) : re(0);
    CHECK(t2.coeff(k) == e2);
    CHECK(t3.coeff(k) == e3);
    CHECK(t4.coeff(k) == e4);
  }

  QLaurent q2 = t2 * t2, q3 = t3 * t3, q4 = t4 * t4;
  CHECK(equal_through(q3 * q3, q2 * q2 + q4 * q4, 40));
}

TEST_CASE("hauptmodul coordinate and its derivative") {
  const auto& ctx = *shared_ctx();
  const QLaurent& u = ctx.u();
  CHECK(u.coeff(-2) == re(-1, 4));
  CHECK(u.coeff(2) == re(-5));
  CHECK(u.coeff(6) == re(31, 2));
  CHECK(u.coeff(10) == re(-54));
  CHECK(u.coeff(14) == re(641, 4));
  CHECK(u.coeff(0) == re(0));
  CHECK(u.coeff(4) == re(0));

  CHECK(equal_through(u.derive_qlog(), ctx.uprime(), 30));
  QLaurent t2t3 = ctx.theta2_null() * ctx.theta3_null();
  QLaurent t4sq = ctx.theta4_null() * ctx.theta4_null();
  QLaurent t4_8 = t4sq * t4sq * t4sq * t4sq;
  CHECK(equal_through(ctx.uprime() * t2t3 * t2t3, t4_8.scaled(re(2)), 30));
}

TEST_CASE("elliptic coordinate rows") {
  const auto& ctx = *shared_ctx();
  const BiSeries& h = ctx.h();
  CHECK(h.row(0).known_zero());
  CHECK(h.row(2).known_zero());
  CHECK(h.coeff(1, -1) == im(1));
  CHECK(h.coeff(1, 3) == im(-2));
  CHECK(h.coeff(1, 7) == im(3));
  CHECK(h.coeff(3, -3) == im(1, 24));
  CHECK(h.coeff(3, 1) == im(3, 4));
  CHECK(h.coeff(3, 5) == im(-33, 8));

  const BiSeries& z = ctx.zeta();
  CHECK(z.coeff(1, -1) == im(1));
  CHECK(z.coeff(1, 3) == im(-2));
  CHECK(z.coeff(1, 7) == im(3));
  CHECK(z.coeff(3, 1) == im(1));
  CHECK(z.coeff(3, 5) == im(-5));
  CHECK(z.coeff(5, 3) == im(2));
  CHECK(z.coeff(5, 7) == im(-17));

  CHECK(equal_through(z, ctx.sinh_half(1).scaled(re(2)), D, 30));
}

TEST_CASE("lambda log derivative routes for the companion series") {
  const auto& ctx = *shared_ctx();
  CHECK(equal_through(ctx.hstar(), ctx.h().derive_lambdalog(), D, 25));

  // closed form: hstar * theta2 * theta3 * M = 4i L
  BiSeries lhs = (ctx.hstar() * ctx.M()).scaled_q(ctx.theta2_null() * ctx.theta3_null());
  CHECK(equal_through(lhs, BiSeries::monomial(im(4), 0, 1, D), D, 25));
}

TEST_CASE("unit square root coordinate") {
  const auto& ctx = *shared_ctx();
  BiSeries rhs = one() + BiSeries::from_qseries(ctx.u(), D).shift_lambda(2) +
                 BiSeries::monomial(re(1), 0, 4, D);
  CHECK(equal_through(ctx.M() * ctx.M(), rhs.scaled(re(4)), D, 30));
}

TEST_CASE("normalized theta series of the elliptic coordinate") {
  const auto& ctx = *shared_ctx();
  const BiSeries& t4h = ctx.theta4h();
  CHECK(equal_through(t4h.row(0), QLaurent::constant(re(1)).truncated(t4h.row(0).max_valid()),
                      t4h.row(0).max_valid()));
  CHECK(t4h.coeff(2, 2) == re(1));
  CHECK(t4h.coeff(1, 0) == re(0));

  // the defining ratio: theta1h = L * theta4h
  CHECK(equal_through(ctx.theta1h(), t4h.shift_lambda(1), D, 30));

  CHECK(equal_through(theta_of_h(shared_ctx(), ThetaKind::tilde4, 0), one(), D, 30));
  CHECK(equal_through(theta_of_h(shared_ctx(), ThetaKind::tilde4, -3),
                      theta_of_h(shared_ctx(), ThetaKind::tilde4, 3), D, 25));
  CHECK(equal_through(theta_of_h(shared_ctx(), ThetaKind::tilde1, -3),
                      -theta_of_h(shared_ctx(), ThetaKind::tilde1, 3), D, 25));
  CHECK(equal_through(theta_of_h(shared_ctx(), ThetaKind::tilde2, 1).row(0),
                      QLaurent::constant(re(1)).truncated(30), 30));
  CHECK_THROWS_AS(theta_of_h(shared_ctx(), ThetaKind::tilde1, 0), std::invalid_argument);

  // double-argument quotients, multiplied out to avoid negative powers:
  // theta4(2h)~ = (1 - L^4) theta4h^4 and theta1(2h)~ = L M theta4h^4
  const BiSeries& p4 = power_of_theta4h(shared_ctx(), 4);
  BiSeries l4 = BiSeries::monomial(re(1), 0, 4, D);
  CHECK(equal_through(theta_of_h(shared_ctx(), ThetaKind::tilde4, 2), p4 * (one() - l4), D, 25));
  CHECK(equal_through(theta_of_h(shared_ctx(), ThetaKind::tilde1, 2),
                      (p4 * ctx.M()).shift_lambda(1), D, 25));
}

TEST_CASE("integer powers are inverses of each other") {
  const auto& ctx = *shared_ctx();
  CHECK(equal_through(power_of_theta4h(shared_ctx(), 0), one(), D, 30));
  CHECK(equal_through(power_of_theta4h(shared_ctx(), 5) * power_of_theta4h(shared_ctx(), -5),
                      one(), D, 25));
  CHECK(equal_through(power_of_theta4h(shared_ctx(), 2), ctx.theta4h() * ctx.theta4h(), D, 30));

  QLaurent t4cube = ctx.theta4_null() * ctx.theta4_null() * ctx.theta4_null();
  CHECK(equal_through(ctx.theta4_null_pow(-3) * t4cube, QLaurent::constant(re(1)).truncated(30), 30));
}

TEST_CASE("hyperbolic kernels") {
  auto ctx = shared_ctx();
  CHECK(equal_through(kernel(ctx, KernelKind::cosh, 0), one(), D, 30));
  CHECK(equal_through(kernel(ctx, KernelKind::sinh, 3), ctx->sinh_half(3), D, 25));

  // quotient kernels lose a couple of top L rows to the L^{+-1} valuations
  BiSeries s2 = kernel(ctx, KernelKind::sinh, 2);
  BiSeries c2 = kernel(ctx, KernelKind::cosh, 2);
  CHECK(equal_through(s2 * kernel(ctx, KernelKind::coth, 2), c2, D - 2, 20));
  CHECK(equal_through(kernel(ctx, KernelKind::tanh, 2) * kernel(ctx, KernelKind::coth, 2), one(),
                      D - 2, 20));
  CHECK(equal_through(kernel(ctx, KernelKind::csch, 2) * s2, one(), D - 2, 20));
  CHECK(equal_through(kernel(ctx, KernelKind::coth, 3) * kernel(ctx, KernelKind::sinh, 3),
                      kernel(ctx, KernelKind::cosh, 3), D - 2, 20));
  CHECK_THROWS_AS(kernel(ctx, KernelKind::coth, 0), std::invalid_argument);
  CHECK_THROWS_AS(kernel(ctx, KernelKind::csch, 0), std::invalid_argument);
}

TEST_CASE("support memberships of the coordinate family") {
  const auto& ctx = *shared_ctx();
  CHECK(testutil::supported_in_shifted_ring(ctx.zeta(), -1, 1));
  // rows of h reach down to q^(-d), unlike zeta's uniform q^(d-2) floor
  CHECK(sinh_supported(ctx.h(), kInfWindow));

  BiSeries zinv = ctx.zeta().shift_lambda(-1).inverse().shift_lambda(-1);
  CHECK(testutil::supported_in_shifted_ring(zinv, 1, -1));

  for (i64 n = 0; n <= 4; ++n) CHECK(sinh_supported(ctx.sinh_half(2 * n + 1), 2 * n + 1));
  for (i64 n = 1; n <= 4; ++n)
    CHECK(cosh_supported(kernel(shared_ctx(), KernelKind::cosh, 2 * n), n));
}

TEST_CASE("measure factor assembly") {
  const auto& ctx = *shared_ctx();
  BiSeries rhs = (power_of_theta4h(shared_ctx(), 3) * ctx.uprime_hstar())
                     .shift_lambda(2)
                     .scaled_q(ctx.theta4_null());
  CHECK(equal_through(ctx.measure_factor(3, 1), rhs, D, 20));
  CHECK(ctx.uprime_hstar().coeff(1, -3) == im(1, 2));
}

TEST_CASE("window guards") {
  CHECK_THROWS_AS(build_context(6, 10), std::invalid_argument);
  const auto& ctx = *shared_ctx();
  CHECK_THROWS_AS(equal_through(ctx.u(), ctx.u(), default_window(D) + 5), WindowError);
}
