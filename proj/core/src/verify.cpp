#include "kdon/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "kdon/bi_series.hpp"
#include "kdon/blowup_poly.hpp"
#include "kdon/closed_form.hpp"
#include "kdon/geometry.hpp"
#include "kdon/invariants.hpp"
#include "kdon/lambda_poly.hpp"
#include "kdon/modular.hpp"
#include "kdon/parallel.hpp"
#include "kdon/wallcross.hpp"

namespace kdon {

namespace {

using CheckBody = std::function<std::string()>;  // "" on pass, detail on fail

CheckResult run_one(const std::string& name, const CheckBody& body) {
  CheckResult c;
  c.name = name;
  try {
    c.detail = body();
    c.pass = c.detail.empty();
  } catch (const WindowError& e) {
    c.pass = false;
    c.window_hit = true;
    c.detail = std::string("window exhausted: ") + e.what();
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("error: ") + e.what();
  }
  return c;
}

void add_check(VerifyReport& rep, const std::string& name, const CheckBody& body) {
  rep.checks.push_back(run_one(name, body));
  if (!rep.checks.back().pass) rep.pass = false;
}

// Run a batch of named checks in parallel, appending results in input order.
void add_checks_parallel(VerifyReport& rep, const std::vector<std::pair<std::string, CheckBody>>& batch,
                         int jobs) {
  std::vector<CheckResult> results(batch.size());
  parallel_for(batch.size(),
               [&](size_t i) { results[i] = run_one(batch[i].first, batch[i].second); }, jobs);
  for (auto& c : results) {
    if (!c.pass) rep.pass = false;
    rep.checks.push_back(std::move(c));
  }
}

std::string coeff_mismatch(i64 d, i64 k, const GaussianRational& want, const GaussianRational& got) {
  return "L^" + std::to_string(d) + " q^" + std::to_string(k) + ": expected " + want.str() +
         ", got " + got.str();
}

// Compare two series through L^dmax over the intersection of the validity
// windows of each row pair; "" when no stored coefficient disagrees.
std::string first_mismatch(const BiSeries& a, const BiSeries& b, i64 dmax) {
  i64 top = std::min(dmax, std::min(a.lambda_trunc(), b.lambda_trunc()));
  for (i64 d = std::min(a.lambda_min(), b.lambda_min()); d <= top; ++d) {
    const QLaurent& ra = a.row(d);
    const QLaurent& rb = b.row(d);
    if (ra.exact_zero() && rb.exact_zero()) continue;
    i64 lo = std::min(ra.stored_begin(), rb.stored_begin());
    i64 hi = std::min(std::min(ra.max_valid(), rb.max_valid()),
                      std::max(ra.stored_end(), rb.stored_end()) - 1);
    for (i64 k = lo; k <= hi; ++k)
      if (ra.coeff(k) != rb.coeff(k)) return coeff_mismatch(d, k, rb.coeff(k), ra.coeff(k));
  }
  return "";
}

std::string poly_mismatch(const LambdaPoly& got, const LambdaPoly& want) {
  std::set<i64> keys;
  for (const auto& [d, c] : got.terms()) keys.insert(d);
  for (const auto& [d, c] : want.terms()) keys.insert(d);
  for (i64 d : keys)
    if (got.coeff(d) != want.coeff(d))
      return "L^" + std::to_string(d) + ": expected " + want.coeff(d).str() + ", got " +
             got.coeff(d).str();
  return "";
}

LambdaPoly plus_one(LambdaPoly p) {
  p.add(0, GaussianRational(1));
  return p;
}

// --------------------------------------------------------------------------
// modular
// --------------------------------------------------------------------------

// Check the stored series against a table of (q-order -> value), with every
// untabulated order in [lo, hi] required to vanish.
std::string qtable_check(const QLaurent& s, const std::map<i64, mpq_class>& want, i64 lo, i64 hi) {
  for (i64 k = lo; k <= hi; ++k) {
    auto it = want.find(k);
    GaussianRational w(it == want.end() ? mpq_class(0) : it->second);
    if (s.coeff(k) != w) return coeff_mismatch(0, k, w, s.coeff(k));
  }
  return "";
}

// Same for one Lambda row of a BiSeries, with purely imaginary table values.
std::string row_check(const BiSeries& s, i64 d, const std::map<i64, mpq_class>& want_imag, i64 lo,
                      i64 hi) {
  const QLaurent& row = s.row(d);
  for (i64 k = lo; k <= hi; ++k) {
    auto it = want_imag.find(k);
    GaussianRational w(mpq_class(0), it == want_imag.end() ? mpq_class(0) : it->second);
    if (row.coeff(k) != w) return coeff_mismatch(d, k, w, row.coeff(k));
  }
  return "";
}

void suite_modular(VerifyReport& rep, i64 d_max, i64 q_margin, int /*jobs*/) {
  const i64 dm = d_max > 0 ? d_max : 24;
  const i64 D = std::max<i64>(dm, 8);
  ContextPtr ctx = build_context(D, std::max<i64>(default_window(D, q_margin), 70));

  add_check(rep, "quartic-null-identity", [&] {
    auto pow4 = [](const QLaurent& t) {
      QLaurent sq = t * t;
      return sq * sq;
    };
    QLaurent left = pow4(ctx->theta3_null());
    QLaurent right = pow4(ctx->theta2_null()) + pow4(ctx->theta4_null());
    for (i64 k = 0; k <= 64; ++k)
      if (left.coeff(k) != right.coeff(k)) return coeff_mismatch(0, k, right.coeff(k), left.coeff(k));
    return std::string();
  });

  add_check(rep, "u-coefficients", [&] {
    return qtable_check(ctx->u(),
                        {{-2, mpq_class(-1, 4)},
                         {2, mpq_class(-5)},
                         {6, mpq_class(31, 2)},
                         {10, mpq_class(-54)},
                         {14, mpq_class(641, 4)}},
                        -2, 14);
  });

  add_check(rep, "h-leading-rows", [&] {
    std::string r = row_check(ctx->h(), 1, {{-1, 1}, {3, -2}, {7, 3}}, -1, 7);
    if (!r.empty()) return r;
    return row_check(ctx->h(), 3, {{-3, mpq_class(1, 24)}, {1, mpq_class(3, 4)}, {5, mpq_class(-33, 8)}},
                     -3, 5);
  });

  add_check(rep, "zeta-leading-rows", [&] {
    std::string r = row_check(ctx->zeta(), 1, {{-1, 1}, {3, -2}, {7, 3}}, -1, 7);
    if (!r.empty()) return r;
    r = row_check(ctx->zeta(), 3, {{1, 1}, {5, -5}}, -3, 5);
    if (!r.empty()) return r;
    return row_check(ctx->zeta(), 5, {{3, 2}, {7, -17}}, -5, 7);
  });

  add_check(rep, "lambda-theta-ratio", [&] {
    BiSeries lam = BiSeries::monomial(GaussianRational(1), 0, 1, D);
    return first_mismatch(ctx->theta1h(), lam * ctx->theta4h(), D);
  });

  add_check(rep, "M-squared", [&] {
    BiSeries rhs = BiSeries::from_qseries(ctx->u(), D).shift_lambda(2) +
                   BiSeries::monomial(GaussianRational(1), 0, 0, D) +
                   BiSeries::monomial(GaussianRational(1), 0, 4, D);
    return first_mismatch(ctx->M() * ctx->M(), rhs.scaled(GaussianRational(4)), D);
  });

  add_check(rep, "measure-closed-form", [&] {
    QLaurent t23 = ctx->theta2_null() * ctx->theta3_null();
    QLaurent t23_cubed = t23 * t23 * t23;
    BiSeries lhs = (ctx->uprime_hstar() * ctx->M()).scaled_q(t23_cubed);
    BiSeries rhs = BiSeries::monomial(GaussianRational(mpq_class(0), mpq_class(8)), 0, 1, D)
                       .scaled_q(ctx->theta4_null_pow(8));
    return first_mismatch(lhs, rhs, D);
  });
}

// --------------------------------------------------------------------------
// theth
// --------------------------------------------------------------------------

// Compare every stored coefficient with q-order <= qcut in rows d <= 20
// against the expected table; untabulated positions must vanish.
std::string leading_check(const BiSeries& s, const std::map<std::pair<i64, i64>, mpq_class>& want,
                          i64 qcut) {
  i64 top = std::min<i64>(20, s.lambda_trunc());
  for (i64 d = std::min<i64>(0, s.lambda_min()); d <= top; ++d) {
    const QLaurent& row = s.row(d);
    if (row.exact_zero()) continue;
    i64 hi = std::min(qcut, std::min(row.max_valid(), row.stored_end() - 1));
    for (i64 k = row.stored_begin(); k <= hi; ++k) {
      auto it = want.find({d, k});
      GaussianRational w(it == want.end() ? mpq_class(0) : it->second);
      if (row.coeff(k) != w) return coeff_mismatch(d, k, w, row.coeff(k));
    }
  }
  for (const auto& [dk, c] : want) {
    if (dk.first > top) continue;
    if (s.row(dk.first).coeff(dk.second) != GaussianRational(c))
      return coeff_mismatch(dk.first, dk.second, GaussianRational(c),
                            s.row(dk.first).coeff(dk.second));
  }
  return "";
}

void suite_theth(VerifyReport& rep, i64 d_max, i64 q_margin, int /*jobs*/) {
  const i64 D = std::max<i64>(d_max > 0 ? d_max + 1 : 21, 21);
  ContextPtr ctx = build_context(D, default_window(D, q_margin));
  const GaussianRational mhalf(mpq_class(-1, 2));
  const GaussianRational half(mpq_class(1, 2));
  BiSeries one = BiSeries::monomial(GaussianRational(1), 0, 0, D);
  BiSeries l4 = BiSeries::monomial(GaussianRational(1), 0, 4, D);
  BiSeries uphl2 = ctx->uprime_hstar().shift_lambda(2);

  add_check(rep, "kernel-row-1", [&] {
    std::string r = leading_check(ctx->theta4h(), {{{0, 0}, 1}, {{2, 2}, 1}}, 2);
    if (!r.empty()) return r;
    // The next q-order is recorded rather than asserted.
    LambdaPoly q3;
    for (i64 d = 0; d <= std::min<i64>(20, ctx->theta4h().lambda_trunc()); ++d)
      q3.set(d, ctx->theta4h().row(d).coeff(3));
    return std::string();
  });

  add_check(rep, "kernel-row-2", [&] {
    BiSeries e = (ctx->kernel(KernelKind::coth, 1) * uphl2).scaled(mhalf);
    return leading_check(e, {{{2, -2}, mpq_class(-1, 2)}, {{4, 0}, -1}}, 0);
  });

  add_check(rep, "kernel-row-3", [&] {
    BiSeries f = ctx->power_of_theta4h(4) * (one - l4) - one;
    BiSeries e = (ctx->kernel(KernelKind::csch, 2) * f * uphl2).scaled(half);
    return leading_check(e, {{{4, 0}, 1}}, 0);
  });

  add_check(rep, "kernel-row-4", [&] {
    BiSeries f = ctx->power_of_theta4h(4) * (one - l4) - one;
    BiSeries e = (ctx->kernel(KernelKind::coth, 2) * f * uphl2).scaled(mhalf);
    return leading_check(e, {{{4, 0}, -1}, {{6, -2}, mpq_class(1, 2)}, {{8, 0}, 3}}, 0);
  });

  add_check(rep, "kernel-row-5", [&] {
    BiSeries f = ctx->power_of_theta4h(3) * (one - l4) - one;
    BiSeries e = (ctx->kernel(KernelKind::coth, 3) * f * uphl2).scaled(mhalf);
    return leading_check(
        e, {{{4, 0}, mpq_class(-1, 2)}, {{6, -2}, mpq_class(1, 2)}, {{8, 0}, mpq_class(5, 2)}}, 0);
  });

  add_check(rep, "kernel-row-6", [&] {
    BiSeries oml4_cubed = (one - l4) * (one - l4) * (one - l4);
    BiSeries f = ctx->power_of_theta4h(8) * oml4_cubed - (one + l4);
    BiSeries e = (ctx->kernel(KernelKind::tanh, 2) * f * uphl2).scaled(mhalf);
    return leading_check(e,
                         {{{6, -2}, 2},
                          {{8, 0}, 13},
                          {{10, -2}, mpq_class(-3, 2)},
                          {{12, 0}, -14},
                          {{14, -2}, mpq_class(1, 2)},
                          {{16, 0}, 5}},
                         0);
  });
}

// --------------------------------------------------------------------------
// walls
// --------------------------------------------------------------------------

LambdaPoly make_poly(std::initializer_list<std::pair<i64, mpq_class>> terms) {
  LambdaPoly p;
  for (const auto& [d, c] : terms) p.set(d, GaussianRational(c));
  return p;
}

struct WallSample {
  IntClass xi;
  IntClass L;
};

std::vector<WallSample> sample_walls(const Surface& s, const std::vector<std::pair<Class, Class>>& rays,
                                     const std::vector<IntClass>& Ls,
                                     const std::vector<IntClass>& c1s, i64 d_max, size_t count) {
  std::set<std::pair<IntClass, IntClass>> seen;
  std::vector<WallSample> pool;
  for (const auto& [a, b] : rays) {
    PolSpec from{{a}};
    PolSpec to{{b}};
    for (const auto& L : Ls)
      for (const auto& c1 : c1s) {
        // Crossing terms are only defined when <c1, L> is even (every wall
        // class is congruent to c1, so <xi, L> inherits the parity).
        if (((pair_i(s, c1, L) % 2) + 2) % 2 != 0) continue;
        for (bool on_to : {false, true})
          for (const Wall& w : walls_between(s, c1, from, to, L, d_max, on_to))
            if (seen.insert({w.xi, L}).second) pool.push_back({w.xi, L});
      }
  }
  std::vector<WallSample> chosen;
  if (pool.empty()) return chosen;
  size_t step = std::max<size_t>(1, pool.size() / count);
  for (size_t i = 0; i < pool.size() && chosen.size() < count; i += step) chosen.push_back(pool[i]);
  return chosen;
}

std::string check_wall_properties(const ContextPtr& ctx, const Surface& s, const WallSample& w,
                                  i64 dm, bool deep) {
  const i64 m = -self_i(s, w.xi);
  IntClass lmk(w.L.size());
  for (size_t i = 0; i < w.L.size(); ++i) lmk[i] = w.L[i] - s.K[i];
  const i64 N = pair_i(s, w.xi, lmk);
  const i64 absN = N < 0 ? -N : N;
  const i64 send = 2 * absN + 4 - m;
  std::string tag = " (xi=" + class_str(s, w.xi) + ", L=" + class_str(s, w.L) + ")";

  LambdaPoly p = delta(ctx, s, w.xi, w.L, dm);  // asserts the two crossing routes agree
  for (const auto& [d, c] : p.terms()) {
    if (!c.is_real()) return "non-real coefficient at L^" + std::to_string(d) + tag;
    if (((d - m) % 4 + 4) % 4 != 0) return "parity violation at L^" + std::to_string(d) + tag;
    if (d < m || d > send) return "support violation at L^" + std::to_string(d) + tag;
  }
  if (m > absN + 2 && !p.is_zero()) return "expected vanishing contribution" + tag;
  if (deep) {
    LambdaPoly q = delta_bar_series(ctx, s, w.xi, w.L).coeff_q0().truncated(dm);
    std::string r = poly_mismatch(q, p);
    if (!r.empty()) return "strand extraction disagrees: " + r + tag;
    IntClass neg(w.xi.size());
    for (size_t i = 0; i < w.xi.size(); ++i) neg[i] = -w.xi[i];
    r = poly_mismatch(delta(ctx, s, neg, w.L, dm), p.scaled(GaussianRational(-1)));
    if (!r.empty()) return "antisymmetry fails: " + r + tag;
  }
  return "";
}

void suite_walls(VerifyReport& rep, i64 d_max, i64 q_margin, int jobs) {
  const i64 dm = d_max > 0 ? d_max : 24;
  const i64 D = std::max<i64>(dm, 16);
  ContextPtr ctx = build_context(D, default_window(D, q_margin));
  Surface p1 = surface_p1xp1();
  Surface ph = surface_p2hat();
  Surface bl = blowup(ph);

  add_check(rep, "double-blow-spots", [&] {
    struct Spot {
      IntClass L;
      LambdaPoly want;
    };
    std::vector<Spot> spots = {{{1, 0}, make_poly({{4, 1}})},
                               {{1, -1}, make_poly({{4, 2}, {8, -18}})},
                               {{2, 0}, make_poly({{4, 1}})},
                               {{2, -1}, make_poly({{4, 2}, {8, -27}})},
                               {{3, -1}, make_poly({{4, 2}, {8, -38}})}};
    for (const auto& spot : spots) {
      LambdaPoly got = delta(ctx, ph, {0, 2}, spot.L, std::min<i64>(dm, D));
      std::string r = poly_mismatch(got, spot.want);
      if (!r.empty()) return "L=" + class_str(ph, spot.L) + ": " + r;
    }
    return std::string();
  });

  add_check(rep, "single-blow-formula", [&] {
    for (i64 k = 1; k <= 5; ++k) {
      LambdaPoly want = make_poly({{5, mpq_class(k * k + 6 * k + 11)}});
      LambdaPoly got = delta(ctx, ph, {0, 1}, {k, 0}, 7);
      std::string r = poly_mismatch(got, want);
      if (!r.empty()) return "L=" + std::to_string(k) + "H: " + r;
    }
    return std::string();
  });

  struct SurfacePlan {
    const Surface* s;
    std::vector<std::pair<Class, Class>> rays;
    std::vector<IntClass> Ls;
    std::vector<IntClass> c1s;
    WallSample vanish;  // hand-picked wall with -xi^2 > |N| + 2
  };
  auto Q = [](long a) { return mpq_class(a); };
  std::vector<SurfacePlan> plans = {
      {&p1,
       {{{Q(1), Q(9)}, {Q(9), Q(1)}}, {{Q(1), Q(6)}, {Q(6), Q(1)}}, {{Q(2), Q(9)}, {Q(9), Q(2)}}},
       {{0, 0}, {1, 0}, {0, 2}, {1, 2}, {3, 1}, {2, 2}},
       {{0, 0}, {1, 0}, {0, 1}, {1, 1}},
       {{2, -2}, {0, 1}}},
      {&ph,
       {{{Q(10), Q(-1)}, {Q(10), Q(-9)}}, {{Q(5), Q(-1)}, {Q(5), Q(-4)}}, {{Q(8), Q(-3)}, {Q(8), Q(-7)}}},
       {{0, 0}, {1, 0}, {2, -1}, {1, -1}, {3, 0}, {2, 2}, {2, 0}, {0, 2}},
       {{0, 0}, {1, 0}, {0, 1}, {1, 1}},
       {{0, 4}, {1, 0}}},
      {&bl,
       {{{Q(10), Q(-1), Q(-1)}, {Q(10), Q(-6), Q(-3)}},
        {{Q(9), Q(-2), Q(-1)}, {Q(9), Q(-1), Q(-6)}},
        {{Q(6), Q(-4), Q(-1)}, {Q(6), Q(-1), Q(-4)}}},
       {{0, 0, 0}, {1, 0, 0}, {2, -1, 0}, {1, -1, -1}, {2, 0, -1}, {2, 0, 0}, {0, 2, -2},
        {3, -1, -1}},
       {{0, 0, 0}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}},
       {{0, 2, 2}, {1, 0, 0}}}};

  for (const auto& plan : plans) {
    const Surface& s = *plan.s;
    std::vector<WallSample> samples = sample_walls(s, plan.rays, plan.Ls, plan.c1s, dm, 50);
    add_check(rep, "properties-" + s.name, [&, samples] {
      if (samples.size() < 50)
        return "only " + std::to_string(samples.size()) + " admissible walls sampled";
      std::vector<std::string> fails(samples.size());
      parallel_for(samples.size(),
                   [&](size_t i) { fails[i] = check_wall_properties(ctx, s, samples[i], dm, i < 10); },
                   jobs);
      for (const auto& f : fails)
        if (!f.empty()) return f;
      return std::string();
    });
    add_check(rep, "vanishing-" + s.name, [&, plan] {
      std::string r = check_wall_properties(ctx, s, plan.vanish, dm, false);
      if (!r.empty()) return r;
      if (!delta(ctx, s, plan.vanish.xi, plan.vanish.L, dm).is_zero())
        return std::string("expected zero contribution for ") + class_str(s, plan.vanish.xi);
      return std::string();
    });
  }
}

// --------------------------------------------------------------------------
// p11t
// --------------------------------------------------------------------------

void suite_p11t(VerifyReport& rep, i64 d_max, i64 q_margin, int jobs) {
  const i64 dm = d_max > 0 ? d_max : 21;
  const i64 D = dm + 1;
  ContextPtr ctx = build_context(D, default_window(D, q_margin));
  std::vector<Surface> xs = {surface_p1xp1(), surface_p2hat()};
  std::vector<std::pair<std::string, CheckBody>> batch;

  auto pow_str = [](const mpq_class& e) {
    mpq_class r = e;
    r.canonicalize();
    if (r.get_den() != 1) throw std::logic_error("non-integral exponent");
    return r.get_num().get_str();
  };

  for (const Surface& s : xs) {
    IntClass cF = to_int_class(s.F);
    IntClass c0(s.rank(), 0);

    for (i64 n = 0; n <= 6; ++n) {
      std::string want = "1/(1-L^4)^" + std::to_string(n + 1);
      batch.emplace_back("family1-F-" + s.name + "-n" + std::to_string(n), [=, &s] {
        LambdaPoly got = plus_one(chi_fplus(ctx, s, cF, mpq_class(n), 0, dm).series);
        return poly_mismatch(got, closed_form(want, dm));
      });
      batch.emplace_back("family1-0-" + s.name + "-n" + std::to_string(n), [=, &s] {
        LambdaPoly got = plus_one(kdon_convention(chi_fplus(ctx, s, c0, mpq_class(n), 0, dm)).series);
        return poly_mismatch(got, closed_form(want, dm));
      });
    }

    std::vector<mpq_class> ns2;
    if (s.name == "P1xP1")
      for (i64 n = 0; n <= 4; ++n) ns2.emplace_back(n);
    else
      for (i64 k = 0; k <= 3; ++k) ns2.emplace_back(mpq_class(2 * k + 1, 2));
    for (const mpq_class& n : ns2) {
      std::string want = "1/(1-L^4)^" + pow_str(2 * n + 2);
      batch.emplace_back("family2-0-" + s.name + "-n" + rat_str(n), [=, &s] {
        LambdaPoly got = plus_one(kdon_convention(chi_fplus(ctx, s, c0, n, 1, dm)).series);
        return poly_mismatch(got, closed_form(want, dm));
      });
    }

    for (i64 n = 0; n <= 4; ++n) {
      std::string nn = std::to_string(n);
      std::string den = "(2*(1-L^4)^" + std::to_string(3 * n + 3) + ")";
      std::string wantF = "((1+L^4)^" + nn + "-(1-L^4)^" + nn + ")/" + den;
      std::string want0 = "((1+L^4)^" + nn + "+(1-L^4)^" + nn + ")/" + den;
      batch.emplace_back("family3-F-" + s.name + "-n" + nn, [=, &s] {
        LambdaPoly got = chi_fplus(ctx, s, cF, mpq_class(n), 2, dm).series;
        return poly_mismatch(got, closed_form(wantF, dm));
      });
      batch.emplace_back("family3-0-" + s.name + "-n" + nn, [=, &s] {
        LambdaPoly got = plus_one(kdon_convention(chi_fplus(ctx, s, c0, mpq_class(n), 2, dm)).series);
        return poly_mismatch(got, closed_form(want0, dm));
      });
    }
  }
  add_checks_parallel(rep, batch, jobs);
}

// --------------------------------------------------------------------------
// P22
// --------------------------------------------------------------------------

void suite_p22(VerifyReport& rep, i64 d_max, i64 q_margin, int jobs) {
  const i64 dm = d_max > 0 ? d_max : 19;
  const i64 D = dm + 2;
  ContextPtr ctx = build_context(D, default_window(D, q_margin));
  std::vector<std::pair<std::string, CheckBody>> batch;

  auto trivial_check = [=](i64 k, const std::string& want) {
    return [=] {
      // Pullback and twisted-by-(1 - L^4) routes are compared inside.
      GenFun g = blowdown_p2(ctx, {0}, {mpq_class(k)}, dm);
      return poly_mismatch(plus_one(kdon_convention(g).series), closed_form(want, dm));
    };
  };
  batch.emplace_back("L=H", trivial_check(1, "1/(1-L^4)^3"));
  batch.emplace_back("L=2H", trivial_check(2, "1/(1-L^4)^6"));
  batch.emplace_back("L=3H", trivial_check(3, "(1+L^8)/(1-L^4)^10"));
  batch.emplace_back("odd-L=2H", [=] {
    GenFun g = blowdown_p2(ctx, {1}, {mpq_class(2)}, dm);
    return poly_mismatch(g.series, closed_form("L^3/(1-L^4)^6", dm));
  });
  batch.emplace_back("odd-L=2H-direct", [=] {
    Surface ph = surface_p2hat();
    GenFun g = chi_at(ctx, ph, {1, 0}, {mpq_class(2), mpq_class(0)},
                      PolSpec{{{mpq_class(1), mpq_class(0)}}}, dm);
    return poly_mismatch(g.series, closed_form("L^3/(1-L^4)^6", dm));
  });
  add_checks_parallel(rep, batch, jobs);
}

// --------------------------------------------------------------------------
// blowup polynomials
// --------------------------------------------------------------------------

void suite_blowup(VerifyReport& rep, i64 d_max, i64 q_margin, int /*jobs*/) {
  const i64 dm = d_max > 0 ? d_max : 12;

  add_check(rep, "division-table", [&] {
    for (i64 n = -12; n <= 12; ++n) {
      BlowupPoly bp = blowup_poly(n);  // throws if any quotient has a remainder
      Poly2 r0, s0;
      for (const auto& [k, c] : bp.R.terms())
        if (k.second == 0) r0 = r0 + Poly2::term(c, k.first, 0);
      for (const auto& [k, c] : bp.S.terms())
        if (k.second == 0) s0 = s0 + Poly2::term(c, k.first, 0);
      if (r0 != Poly2::term(1, 0, 0))
        return "R_" + std::to_string(n) + " at l=0 is " + r0.str();
      if (!s0.is_zero()) return "S_" + std::to_string(n) + " at l=0 is " + s0.str();
      if (blowup_poly(-n).R != bp.R || blowup_poly(-n).S != bp.S)
        return "n -> -n symmetry fails at n=" + std::to_string(n);
    }
    return std::string();
  });

  add_check(rep, "closed-polynomials", [&] {
    Poly2 one = Poly2::term(1, 0, 0);
    Poly2 l4 = Poly2::term(1, 0, 4);
    Poly2 a = one - l4;
    Poly2 x2 = Poly2::term(1, 2, 0);
    struct Want {
      std::string name;
      Poly2 got, want;
    };
    std::vector<Want> table = {
        {"R_2", blowup_poly(2).R, a},
        {"R_3", blowup_poly(3).R, a * a - Poly2::term(1, 2, 4)},
        {"R_4", blowup_poly(4).R, a * a * a * a - Poly2::term(1, 4, 4)},
        {"S_3", blowup_poly(3).S, Poly2::term(1, 0, 1) * (x2 - a * a)},
        {"S_4", blowup_poly(4).S,
         Poly2::term(1, 1, 1) * ((one - Poly2::term(1, 0, 8)) * x2 - Poly2::term(2, 0, 0) * a * a * a)}};
    for (const auto& w : table)
      if (w.got != w.want) return w.name + ": expected " + w.want.str() + ", got " + w.got.str();
    return std::string();
  });

  const i64 D = std::max<i64>(dm + 1, 13);
  ContextPtr ctx = build_context(D, default_window(D, q_margin));
  for (i64 n = 1; n <= 4; ++n)
    add_check(rep, "theta-identity-n" + std::to_string(n), [&, n] {
      IdentityReport r = verify_blowup_identity(ctx, n, std::min<i64>(dm, 12));
      return r.ok ? std::string() : r.detail;
    });
}

// --------------------------------------------------------------------------
// dims
// --------------------------------------------------------------------------

void suite_dims(VerifyReport& rep, i64 /*d_max*/, i64 /*q_margin*/, int /*jobs*/) {
  add_check(rep, "section-count", [&] {
    LambdaPoly series = closed_form("L^3/(1-L^4)^6", 39);
    for (i64 c2 = 1; c2 <= 10; ++c2) {
      GaussianRational want{mpq_class(binom_int(c2 + 4, 5))};
      GaussianRational got = series.coeff(4 * c2 - 1);
      if (got != want)
        return "c2=" + std::to_string(c2) + ": expected " + want.str() + ", got " + got.str();
    }
    return std::string();
  });
}

using SuiteFn = void (*)(VerifyReport&, i64, i64, int);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"modular", suite_modular}, {"theth", suite_theth},   {"walls", suite_walls},
      {"p11t", suite_p11t},       {"P22", suite_p22},       {"blowup", suite_blowup},
      {"dims", suite_dims}};
  return table;
}

VerifyReport run_suite_once(const std::string& suite, i64 d_max, i64 q_margin, int jobs) {
  VerifyReport rep;
  rep.suite = suite;
  for (const auto& [name, fn] : suite_table())
    if (name == suite) {
      fn(rep, d_max, q_margin, jobs);
      return rep;
    }
  throw std::invalid_argument("unknown verify suite: " + suite);
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : suite_table()) v.push_back(name);
    return v;
  }();
  return names;
}

VerifyReport run_verify(const std::string& suite, i64 d_max, i64 q_margin, int jobs) {
  if (suite == "all") {
    VerifyReport all;
    all.suite = "all";
    for (const std::string& name : verify_suites()) {
      VerifyReport sub = run_verify(name, d_max, q_margin, jobs);
      if (!sub.pass) all.pass = false;
      if (sub.retried) all.retried = true;
      for (auto& c : sub.checks) {
        c.name = name + ":" + c.name;
        all.checks.push_back(std::move(c));
      }
    }
    return all;
  }
  VerifyReport rep = run_suite_once(suite, d_max, q_margin, jobs);
  bool window_hit = false;
  for (const auto& c : rep.checks) window_hit = window_hit || c.window_hit;
  if (window_hit) {
    rep = run_suite_once(suite, d_max, q_margin * 2, jobs);
    rep.retried = true;
  }
  return rep;
}

}  // namespace kdon
