#include "kdon/invariants.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

#include "kdon/wallcross.hpp"

namespace kdon {

namespace {

i64 to_i64_exact(const mpq_class& v, const std::string& what) {
  if (v.get_den() != 1) throw std::invalid_argument(what + " is not an integer");
  if (!v.get_num().fits_slong_p()) throw std::overflow_error(what + " overflows");
  return static_cast<i64>(v.get_num().get_si());
}

Class l_minus_k(const Surface& s, const Class& L) {
  Class r(L);
  for (int i = 0; i < s.rank(); ++i) r[i] -= s.K[i];
  return r;
}

bool chain_equal(const PolSpec& a, const PolSpec& b) {
  if (a.chain.size() != b.chain.size()) return false;
  for (size_t i = 0; i < a.chain.size(); ++i)
    if (a.chain[i] != b.chain[i]) return false;
  return true;
}

int parity(i64 v) { return static_cast<int>(((v % 2) + 2) % 2); }

// Offsets of the sublattice of crossing classes orthogonal to the fiber
// class: the boundary row sums over xi = t*F (+ c*E_last in rank 3) with t
// and c running over integers shifted by eps_t/2 and eps_e/2.  No such class
// exists at all when <c1, F> is odd.
struct BoundaryCoset {
  bool empty = false;
  int eps_t = 0;
  int eps_e = 0;
};

BoundaryCoset fiber_coset(const Surface& s, const IntClass& c1) {
  BoundaryCoset co;
  switch (s.kind) {
    case LatticeKind::hyperbolic:  // basis (F, G)
      co.empty = parity(c1[1]) != 0;
      co.eps_t = parity(c1[0]);
      break;
    case LatticeKind::lorentz2:  // basis (H, E), F = H - E
      co.empty = parity(c1[0] + c1[1]) != 0;
      co.eps_t = parity(c1[0]);
      break;
    case LatticeKind::hyperbolic_e:  // basis (F, G, E)
      co.empty = parity(c1[1]) != 0;
      co.eps_t = parity(c1[0]);
      co.eps_e = parity(c1[2]);
      break;
    case LatticeKind::lorentz2_e:  // basis (H, E1, E2), F = H - E1
      co.empty = parity(c1[0] + c1[1]) != 0;
      co.eps_t = parity(c1[0]);
      co.eps_e = parity(c1[2]);
      break;
    default:
      throw std::invalid_argument("surface has no ruling boundary");
  }
  return co;
}

// Same sublattice analysis against the section class G instead of F; only
// meaningful where swapping the rulings is a lattice isometry, i.e. on the
// product surface and its blowup (the isometry fixes the exceptional class).
BoundaryCoset section_coset(const Surface& s, const IntClass& c1) {
  BoundaryCoset co;
  switch (s.kind) {
    case LatticeKind::hyperbolic:  // basis (F, G)
      co.empty = parity(c1[0]) != 0;
      co.eps_t = parity(c1[1]);
      break;
    case LatticeKind::hyperbolic_e:  // basis (F, G, E)
      co.empty = parity(c1[0]) != 0;
      co.eps_t = parity(c1[1]);
      co.eps_e = parity(c1[2]);
      break;
    default:
      throw std::invalid_argument("section-side limit needs a second integral ruling");
  }
  return co;
}

// The boundary row of the crossing-sum development at the fiber chamber:
// summing the orthogonal classes against the geometric series of the
// prefactor collapses to hyperbolic kernels in m0 = <F, L-K>, tensored in
// rank 3 with theta-type sums in ep = <E_last, L-K>.
BiSeries boundary_row(const ContextPtr& ctx, const BoundaryCoset& co, bool rank3, i64 m0, i64 ep) {
  const i64 D = ctx->D();
  const GaussianRational half(mpq_class(1, 2));
  const GaussianRational minus_half(mpq_class(-1, 2));
  if (m0 <= 0) throw std::invalid_argument("boundary row needs <F, L-K> > 0");

  if (!rank3) {
    if (co.eps_t == 0) return ctx->kernel(KernelKind::coth, m0).scaled(minus_half);
    return ctx->kernel(KernelKind::csch, m0).scaled(half);
  }

  const i64 qcut = ctx->W() + D;
  if (co.eps_t == 1 && co.eps_e == 0) {
    BiSeries t4 = ctx->theta_of_h(ThetaKind::tilde4, ep).scaled_q(ctx->theta4_null_pow(1));
    return (t4 * ctx->kernel(KernelKind::csch, m0)).scaled(half);
  }
  if (co.eps_t == 1 && co.eps_e == 1) {
    BiSeries t1 = ctx->theta_of_h(ThetaKind::tilde1, ep).scaled_q(ctx->theta4_null_pow(1));
    return (t1 * ctx->kernel(KernelKind::csch, m0)).scaled(half);
  }
  if (co.eps_t == 0 && co.eps_e == 1) {
    BiSeries sum = BiSeries::zero(D);
    for (i64 k = 0; (2 * k + 1) * (2 * k + 1) <= qcut; ++k) {
      BiSeries term = ctx->sinh_half(m0 - (2 * k + 1) * ep).shift_q((2 * k + 1) * (2 * k + 1));
      sum += k % 2 ? -term : term;
    }
    return (sum * ctx->kernel(KernelKind::csch, m0)).scaled(GaussianRational(0, -1));
  }
  // eps_t == 0, eps_e == 0
  BiSeries acc = BiSeries::monomial(half, 0, 0, D);
  for (i64 k = 1; 4 * k * k <= qcut; ++k) {
    BiSeries term = (ctx->cosh_half(2 * k * ep) - ctx->sinh_half(2 * k * ep)).shift_q(4 * k * k);
    acc += k % 2 ? -term : term;
  }
  BiSeries t4 = ctx->theta_of_h(ThetaKind::tilde4, ep).scaled_q(ctx->theta4_null_pow(1));
  BiSeries one = BiSeries::monomial(GaussianRational(1), 0, 0, D);
  acc += (t4 * (ctx->kernel(KernelKind::coth, m0) - one)).scaled(half);
  return -acc;
}

LambdaPoly boundary_series(const ContextPtr& ctx, const Surface& s, const BoundaryCoset& co,
                           const Class& base, const Class& lmk, i64 e) {
  if (co.empty) return LambdaPoly();
  i64 m0 = to_i64_exact(pair_q(s, base, lmk), "<F, L-K>");
  i64 ep = 0;
  bool rank3 = s.rank() == 3;
  if (rank3) {
    Class el(s.rank(), mpq_class(0));
    el[s.last_exceptional] = 1;
    ep = to_i64_exact(pair_q(s, el, lmk), "<E, L-K>");
  }
  BiSeries row = boundary_row(ctx, co, rank3, m0, ep);
  return coeff_q0_product(row, ctx->measure_factor(e, s.sigma));
}

LambdaPoly divide_one_minus_l4(const LambdaPoly& p, i64 d_max) {
  LambdaPoly out;
  for (i64 d = 1; d <= d_max; ++d) {
    GaussianRational c = p.coeff(d) + out.coeff(d - 4);
    if (!c.is_zero()) out.set(d, c);
  }
  return out;
}

}  // namespace

void validate_genfun(const Surface& s, const GenFun& g) {
  i64 res = ((-self_i(s, g.c1)) % 4 + 4) % 4;
  for (const auto& [d, c] : g.series.terms()) {
    if (c.is_zero()) continue;
    if (!c.is_real())
      throw std::logic_error("generating function for " + s.name +
                             " has a non-real coefficient at degree " + std::to_string(d));
    if (d < 1 || d > g.lambda_truncation)
      throw std::logic_error("generating function for " + s.name +
                             " has a coefficient outside (0, truncation] at degree " +
                             std::to_string(d));
    if (((d % 4) + 4) % 4 != res)
      throw std::logic_error("generating function for " + s.name +
                             " violates the degree parity rule at degree " + std::to_string(d));
  }
}

GenFun chi_at(const ContextPtr& ctx, const Surface& s, const IntClass& c1, const Class& L,
              const PolSpec& pol, i64 d_max) {
  if (static_cast<int>(c1.size()) != s.rank() || static_cast<int>(L.size()) != s.rank())
    throw std::invalid_argument("class dimension does not match the surface");
  if (!is_integral(L)) throw std::invalid_argument("L must be an integral class");
  if (d_max < 1 || d_max + 1 > ctx->D())
    throw std::invalid_argument("context truncation too small for requested degree");
  mpq_class c1l = pair_mixed(s, c1, L);
  if (c1l.get_den() != 1 || parity(to_i64_exact(c1l, "<c1, L>")) != 0)
    throw std::invalid_argument("<c1, L> must be even");
  PolSpec from = fiber_limit_chain(s);

  Class lmk = l_minus_k(s, L);
  i64 e = to_i64_exact(pair_q(s, lmk, lmk), "(L-K)^2");

  LambdaPoly series;
  bool swappable = s.kind == LatticeKind::hyperbolic || s.kind == LatticeKind::hyperbolic_e;
  if (swappable && chain_equal(pol, parse_polspec("G+", s))) {
    series = boundary_series(ctx, s, section_coset(s, c1), s.G, lmk, e);
  } else {
    series = boundary_series(ctx, s, fiber_coset(s, c1), s.F, lmk, e);
    if (!chain_equal(pol, from))
      series += wall_sum(ctx, s, c1, to_int_class(L), from, pol, d_max);
  }

  GenFun g{s.name, c1, L, pol, d_max, series.truncated(d_max), false};
  validate_genfun(s, g);
  return g;
}

GenFun chi_fplus(const ContextPtr& ctx, const Surface& s, const IntClass& c1, const mpq_class& n,
                 i64 m, i64 d_max) {
  if (!s.has_ruling || s.rank() != 2)
    throw std::invalid_argument("fiber-limit series need a ruled surface with a rank-2 lattice");
  IntClass f = to_int_class(s.F);
  bool is_zero = c1 == IntClass(c1.size(), 0);
  if (static_cast<int>(c1.size()) != s.rank() || (!is_zero && c1 != f))
    throw std::invalid_argument("fiber-limit series are defined for c1 = 0 or c1 = F");
  Class L(s.rank(), mpq_class(0));
  for (int i = 0; i < s.rank(); ++i) L[i] = n * s.F[i] + m * s.G[i];
  if (!is_integral(L))
    throw std::invalid_argument("nF + mG is not an integral class on " + s.name);
  return chi_at(ctx, s, c1, L, fiber_limit_chain(s), d_max);
}

GenFun blowdown_p2(const ContextPtr& ctx, const IntClass& c1, const Class& L_p2, i64 d_max) {
  Surface p2 = surface_p2();
  Surface ph = surface_p2hat();
  if (c1.size() != 1 || L_p2.size() != 1 || (c1[0] != 0 && c1[0] != 1))
    throw std::invalid_argument("the plane series take c1 = 0 or c1 = H");
  if (!is_integral(L_p2)) throw std::invalid_argument("L must be an integral class");
  Class lh{L_p2[0], 0};
  PolSpec pol_h{{Class{1, 0}}};
  PolSpec pol_p2{{Class{mpq_class(1)}}};

  LambdaPoly series;
  if (c1[0] == 0) {
    GenFun pulled = chi_at(ctx, ph, IntClass{0, 0}, lh, pol_h, d_max);
    Class lhe{L_p2[0], -1};
    GenFun twisted = chi_at(ctx, ph, IntClass{0, 0}, lhe, pol_h, d_max);
    LambdaPoly divided = divide_one_minus_l4(twisted.series, d_max);
    if (!(divided == pulled.series))
      throw std::logic_error("blowdown routes disagree for L = " + class_str(p2, L_p2) + ": " +
                             pulled.series.str() + " vs " + divided.str());
    series = pulled.series;
  } else {
    GenFun shiftable = chi_at(ctx, ph, IntClass{1, 1}, lh, pol_h, d_max + 1);
    for (const auto& [d, c] : shiftable.series.terms()) series.set(d - 1, c);
  }

  GenFun g{p2.name, c1, L_p2, pol_p2, d_max, series.truncated(d_max), false};
  validate_genfun(p2, g);
  return g;
}

GenFun kdon_convention(const GenFun& g) {
  if (g.c1 != IntClass(g.c1.size(), 0))
    throw std::invalid_argument("the degree-4 convention applies only to c1 = 0 series");
  if (g.lambda_truncation < 4)
    throw std::invalid_argument("series truncated below degree 4");
  Surface s = surface_by_name(g.surface);
  Surface sh = blowup(s);

  static const ContextPtr ctx9 = build_context(9, default_window(9));

  Class lh(g.L);
  lh.resize(sh.rank(), mpq_class(0));
  IntClass c1h(sh.rank(), 0);
  c1h[sh.rank() - 1] = 1;
  PolSpec chain;
  for (const Class& c : g.pol.chain) {
    Class cc(c);
    cc.resize(sh.rank(), mpq_class(0));
    chain.chain.push_back(std::move(cc));
  }
  Class neg_e(sh.rank(), mpq_class(0));
  neg_e[sh.rank() - 1] = -1;
  chain.chain.push_back(std::move(neg_e));

  GenFun exc = chi_at(ctx9, sh, c1h, lh, chain, 5);
  GaussianRational blow5 = exc.series.coeff(5);

  mpq_class lk = pair_q(s, g.L, to_class(s.K));
  mpq_class kk = pair_q(s, to_class(s.K), to_class(s.K));
  mpq_class ll = pair_q(s, g.L, g.L);
  GaussianRational shift(lk - (kk + ll) / 2 - 1);
  GaussianRational raw4 = g.series.coeff(4);
  if (!((blow5 + shift) == raw4))
    throw std::logic_error("degree-4 convention cross-check failed for " + g.surface + ", L = " +
                           class_str(s, g.L) + ": series has " + raw4.str() +
                           " but the blowup route gives " + (blow5 + shift).str());

  GenFun out = g;
  out.series.set(4, blow5);
  out.conventioned = true;
  return out;
}

}  // namespace kdon
