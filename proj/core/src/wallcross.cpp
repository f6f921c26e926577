#include "kdon/wallcross.hpp"

#include <sstream>
#include <stdexcept>

#include "kdon/parallel.hpp"

namespace kdon {

namespace {

// Parity bookkeeping for a crossing class: m = -xi^2, N = <xi, L-K> and
// k = <xi, K> all share one parity (K is a characteristic vector).
struct XiData {
  i64 m;       // -xi^2 >= 1 on a wall
  i64 N;       // <xi, L-K>
  i64 k;       // <xi, K>
  i64 e;       // (L-K)^2, exponent of the theta quotient
};

XiData xi_data(const Surface& s, const IntClass& xi, const IntClass& L) {
  XiData d;
  d.m = -self_i(s, xi);
  IntClass LmK(L.size());
  for (size_t i = 0; i < L.size(); ++i) LmK[i] = L[i] - s.K[i];
  d.N = pair_i(s, xi, LmK);
  d.k = pair_i(s, xi, s.K);
  d.e = pair_i(s, LmK, LmK);
  if (((d.m - d.N) % 2 + 2) % 2 != 0 || ((d.m - d.k) % 2 + 2) % 2 != 0)
    throw std::logic_error("crossing class parity bookkeeping is inconsistent");
  return d;
}

}  // namespace

BiSeries delta_bar_series(const ContextPtr& ctx, const Surface& s, const IntClass& xi,
                          const IntClass& L) {
  XiData d = xi_data(s, xi, L);
  // y^N - (-1)^N y^-N is twice a hyperbolic function of Nh/2.
  BiSeries core = (d.N % 2 == 0) ? ctx->sinh_half(d.N) : ctx->cosh_half(d.N);
  core = core.scaled(GaussianRational::i_pow(d.k) * GaussianRational(2));
  return (core * ctx->measure_factor(d.e, s.sigma)).shift_q(d.m);
}

LambdaPoly delta(const ContextPtr& ctx, const Surface& s, const IntClass& xi, const IntClass& L,
                 i64 d_max) {
  XiData d = xi_data(s, xi, L);
  const BiSeries& mf = ctx->measure_factor(d.e, s.sigma);

  BiSeries core = (d.N % 2 == 0) ? ctx->sinh_half(d.N) : ctx->cosh_half(d.N);
  core = core.scaled(GaussianRational::i_pow(d.k) * GaussianRational(2)).shift_q(d.m);
  LambdaPoly sym = coeff_q0_product(core, mf).truncated(d_max);

  // Independent route: average of the two one-sided crossing terms, each
  // built from y^+-N = cosh(Nh/2) +- sinh(Nh/2).
  BiSeries ypos = ctx->cosh_half(d.N) + ctx->sinh_half(d.N);
  BiSeries yneg = ctx->cosh_half(d.N) - ctx->sinh_half(d.N);
  LambdaPoly lhs = coeff_q0_product(ypos.scaled(GaussianRational::i_pow(d.k)).shift_q(d.m), mf);
  LambdaPoly rhs = coeff_q0_product(yneg.scaled(GaussianRational::i_pow(-d.k)).shift_q(d.m), mf);
  LambdaPoly avg = (lhs - rhs).truncated(d_max);

  if (sym != avg) {
    std::ostringstream os;
    os << "crossing-term routes disagree for " << class_str(s, xi) << ": " << sym.str()
       << " vs " << avg.str();
    throw std::logic_error(os.str());
  }
  return sym;
}

LambdaPoly wall_sum(const ContextPtr& ctx, const Surface& s, const IntClass& c1,
                    const IntClass& L, const PolSpec& from, const PolSpec& to, i64 d_max,
                    int jobs) {
  std::vector<Wall> walls = walls_between(s, c1, from, to, L, d_max, false);
  const size_t n_strict = walls.size();
  std::vector<Wall> tied = walls_between(s, c1, from, to, L, d_max, true);
  walls.insert(walls.end(), tied.begin(), tied.end());
  std::vector<LambdaPoly> parts(walls.size());
  parallel_for(walls.size(), [&](size_t i) { parts[i] = delta(ctx, s, walls[i].xi, L, d_max); },
               jobs);
  const GaussianRational half(mpq_class(1, 2));
  LambdaPoly total;
  for (size_t i = 0; i < parts.size(); ++i)
    total += i < n_strict ? parts[i] : parts[i].scaled(half);
  return total;
}

}  // namespace kdon
