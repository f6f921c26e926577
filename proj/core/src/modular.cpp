#include "kdon/modular.hpp"

#include <sstream>
#include <stdexcept>

namespace kdon {

namespace {

QLaurent qpow(const QLaurent& a, i64 e) {
  if (e < 0) throw std::invalid_argument("qpow: negative exponent");
  QLaurent r = QLaurent::constant(GaussianRational(1));
  QLaurent base = a;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

// After assembling a theta-type sum that was cut off at q-shift > base, row d
// is only exact through q^(base-d); clamp the windows accordingly.
BiSeries cap_rows(const BiSeries& b, i64 base) {
  BiSeries r(b.lambda_trunc(), b.lambda_min());
  for (i64 d = b.lambda_min(); d <= b.lambda_trunc(); ++d)
    r.set_row(d, b.row(d).truncated(base - d));
  return r;
}

// Joint recursion for sinh(a) and cosh(a) where a has an exactly vanishing
// Lambda^0 row:  d*S_d = sum_j (j a_j) C_{d-j},  d*C_d = sum_j (j a_j) S_{d-j}.
// Products of exactly-zero rows stay exactly zero, so parity in Lambda is
// preserved exactly (a odd => S odd, C even).
std::pair<BiSeries, BiSeries> sinh_cosh(const BiSeries& a) {
  if (a.lambda_min() != 0 || !a.row(0).exact_zero())
    throw std::logic_error("sinh_cosh: argument must have exactly vanishing constant row");
  const i64 D = a.lambda_trunc();
  std::vector<QLaurent> s(static_cast<size_t>(D) + 1), c(static_cast<size_t>(D) + 1);
  s[0] = QLaurent::zero();
  c[0] = QLaurent::constant(GaussianRational(1));
  for (i64 d = 1; d <= D; ++d) {
    QLaurent sacc, cacc;
    for (i64 j = 1; j <= d; ++j) {
      const QLaurent& aj = a.row(j);
      if (aj.exact_zero()) continue;
      QLaurent ja = aj.scaled(GaussianRational(j));
      sacc += ja * c[static_cast<size_t>(d - j)];
      cacc += ja * s[static_cast<size_t>(d - j)];
    }
    GaussianRational inv_d{mpq_class(1, static_cast<long>(d))};
    s[static_cast<size_t>(d)] = sacc.scaled(inv_d);
    c[static_cast<size_t>(d)] = cacc.scaled(inv_d);
  }
  BiSeries S(D, 0), C(D, 0);
  for (i64 d = 0; d <= D; ++d) {
    S.set_row(d, std::move(s[static_cast<size_t>(d)]));
    C.set_row(d, std::move(c[static_cast<size_t>(d)]));
  }
  return {std::move(S), std::move(C)};
}

void check_equal(const BiSeries& a, const BiSeries& b, i64 dmax, const char* label) {
  i64 lo_d = std::min(a.lambda_min(), b.lambda_min());
  i64 hi_d = std::min({dmax, a.lambda_trunc(), b.lambda_trunc()});
  for (i64 d = lo_d; d <= hi_d; ++d) {
    const QLaurent& ra = a.row(d);
    const QLaurent& rb = b.row(d);
    if (ra.known_zero() && rb.known_zero()) continue;
    i64 lo = kInfWindow, hi = -kInfWindow;
    if (!ra.known_zero()) { lo = std::min(lo, ra.stored_begin()); hi = std::max(hi, ra.stored_end() - 1); }
    if (!rb.known_zero()) { lo = std::min(lo, rb.stored_begin()); hi = std::max(hi, rb.stored_end() - 1); }
    hi = std::min({hi, ra.max_valid(), rb.max_valid()});
    for (i64 k = lo; k <= hi; ++k) {
      if (!(ra.coeff(k) == rb.coeff(k))) {
        std::ostringstream os;
        os << "series tower consistency check failed (" << label << ") at L^" << d << " q^" << k
           << ": " << ra.coeff(k).str() << " vs " << rb.coeff(k).str();
        throw std::logic_error(os.str());
      }
    }
  }
}

}  // namespace

ModularContext::ModularContext(i64 D, i64 W, bool run_checks) : D_(D), W_(W) {
  if (D < 1) throw std::invalid_argument("ModularContext: need D >= 1");
  if (W < 4 * D + 4) throw std::invalid_argument("ModularContext: need W >= 4D + 4");

  // Theta nullwerte in q; every series below inherits validity from these.
  theta2_ = QLaurent::zero_through(W);
  for (i64 k = 0; (2 * k + 1) * (2 * k + 1) <= W; ++k)
    theta2_ += QLaurent::monomial(GaussianRational(2), (2 * k + 1) * (2 * k + 1));
  theta3_ = QLaurent::zero_through(W) + QLaurent::constant(GaussianRational(1));
  theta4_ = theta3_;
  for (i64 k = 1; 4 * k * k <= W; ++k) {
    theta3_ += QLaurent::monomial(GaussianRational(2), 4 * k * k);
    theta4_ += QLaurent::monomial(GaussianRational(k % 2 ? -2 : 2), 4 * k * k);
  }

  QLaurent t22 = theta2_ * theta2_;
  QLaurent t32 = theta3_ * theta3_;
  u_ = (t22 * t32.inverse() + t32 * t22.inverse()).scaled(GaussianRational(-1));
  uprime_ = (qpow(theta4_, 8) * (t22 * t32).inverse()).scaled(GaussianRational(2));
  inv_t2t3_ = (theta2_ * theta3_).inverse();
  inv_theta4_ = theta4_.inverse();

  // h = (2i/(theta2*theta3)) * sum_{n>=k>=0} C(-1/2,n) C(n,k) u^k L^(4n-2k+1)/(4n-2k+1).
  const i64 nmax = D >= 1 ? (D - 1) / 2 : 0;
  std::vector<QLaurent> upow(static_cast<size_t>(nmax) + 1);
  upow[0] = QLaurent::constant(GaussianRational(1));
  for (i64 k = 1; k <= nmax; ++k) upow[static_cast<size_t>(k)] = upow[static_cast<size_t>(k - 1)] * u_;
  h_ = BiSeries(D, 0);
  const mpq_class minus_half(-1, 2);
  for (i64 d = 1; d <= D; d += 2) {
    QLaurent row;
    for (i64 n = (d + 2) / 4; n <= (d - 1) / 2; ++n) {
      i64 k = (4 * n + 1 - d) / 2;
      mpq_class coef = binom(minus_half, n) * binom_int(n, k) / d;
      row += upow[static_cast<size_t>(k)].scaled(GaussianRational(coef));
    }
    h_.set_row(d, (row * inv_t2t3_).scaled(GaussianRational(mpq_class(0), mpq_class(2))));
  }

  hstar_ = h_.derive_lambdalog();
  zeta_ = sinh_half(1).scaled(GaussianRational(2));

  BiSeries msq(D, 0);
  msq.set_row(2, u_);
  msq.set_row(4, QLaurent::constant(GaussianRational(1)));
  M_ = msq.sqrt_one_plus().scaled(GaussianRational(2));

  uph_ = hstar_.scaled_q(uprime_);
  theta4h_ = theta_sum_even(1).scaled_q(inv_theta4_);
  theta1h_ = theta_sum_odd(1).scaled_q(inv_theta4_);

  if (run_checks) run_construction_checks();
}

const ModularContext::ScPair& ModularContext::sc_pair(i64 a2_abs) const {
  return sc_cache_.get(a2_abs, [&] {
    auto [s, c] = sinh_cosh(h_.scaled(GaussianRational(mpq_class(a2_abs, 2))));
    return ScPair{std::move(s), std::move(c)};
  });
}

BiSeries ModularContext::sinh_half(i64 a2) const {
  if (a2 == 0) return BiSeries::zero(D_);
  const BiSeries& s = sc_pair(a2 < 0 ? -a2 : a2).s;
  return a2 < 0 ? -s : s;
}

BiSeries ModularContext::cosh_half(i64 a2) const {
  if (a2 == 0) return BiSeries::monomial(GaussianRational(1), 0, 0, D_);
  return sc_pair(a2 < 0 ? -a2 : a2).c;
}

const BiSeries& ModularContext::kernel(KernelKind kind, i64 a2) const {
  if (a2 == 0 && kind != KernelKind::sinh && kind != KernelKind::cosh)
    throw std::invalid_argument("kernel: coth/tanh/csch need a nonzero multiple of h");
  return kernel_cache_.get({static_cast<int>(kind), a2}, [&]() -> BiSeries {
    switch (kind) {
      case KernelKind::sinh:
        return sinh_half(a2);
      case KernelKind::cosh:
        return cosh_half(a2);
      case KernelKind::csch: {
        // sinh((a2/2)h) = L * (unit), so invert after shifting one L out.
        BiSeries unit = sinh_half(a2).shift_lambda(-1);
        return unit.inverse().shift_lambda(-1);
      }
      case KernelKind::coth:
        return cosh_half(a2) * kernel(KernelKind::csch, a2);
      case KernelKind::tanh:
        return sinh_half(a2) * cosh_half(a2).inverse();
    }
    throw std::invalid_argument("kernel: unknown kind");
  });
}

BiSeries ModularContext::theta_sum_even(i64 n) const {
  BiSeries b = BiSeries::monomial(GaussianRational(1), 0, 0, D_);
  for (i64 k = 1; 4 * k * k <= W_ + D_; ++k)
    b += cosh_half(2 * k * n).scaled(GaussianRational(k % 2 ? -2 : 2)).shift_q(4 * k * k);
  return cap_rows(b, W_ + D_);
}

BiSeries ModularContext::theta_sum_odd(i64 n) const {
  BiSeries b = BiSeries::zero(D_);
  for (i64 k = 0; (2 * k + 1) * (2 * k + 1) <= W_ + D_; ++k)
    b += sinh_half((2 * k + 1) * n)
             .scaled(GaussianRational(mpq_class(0), mpq_class(k % 2 ? 2 : -2)))
             .shift_q((2 * k + 1) * (2 * k + 1));
  return cap_rows(b, W_ + D_);
}

BiSeries ModularContext::theta_sum_2(i64 n) const {
  BiSeries b = BiSeries::zero(D_);
  for (i64 k = 0; (2 * k + 1) * (2 * k + 1) <= W_ + D_; ++k)
    b += cosh_half((2 * k + 1) * n).scaled(GaussianRational(2)).shift_q((2 * k + 1) * (2 * k + 1));
  return cap_rows(b, W_ + D_);
}

BiSeries ModularContext::theta_sum_3(i64 n) const {
  BiSeries b = BiSeries::monomial(GaussianRational(1), 0, 0, D_);
  for (i64 k = 1; 4 * k * k <= W_ + D_; ++k)
    b += cosh_half(2 * k * n).scaled(GaussianRational(2)).shift_q(4 * k * k);
  return cap_rows(b, W_ + D_);
}

const BiSeries& ModularContext::theta_of_h(ThetaKind which, i64 n) const {
  return theta_cache_.get({static_cast<int>(which), n}, [&]() -> BiSeries {
    switch (which) {
      case ThetaKind::tilde1:
        if (n == 0) throw std::invalid_argument("theta_of_h: tilde1 needs n != 0");
        if (n == 1) return theta1h_;
        return theta_sum_odd(n).scaled_q(inv_theta4_);
      case ThetaKind::tilde2:
        return theta_sum_2(n).scaled_q(theta2_.inverse());
      case ThetaKind::tilde3:
        return theta_sum_3(n).scaled_q(theta3_.inverse());
      case ThetaKind::tilde4:
        if (n == 1 || n == -1) return theta4h_;
        return theta_sum_even(n).scaled_q(inv_theta4_);
    }
    throw std::invalid_argument("theta_of_h: unknown kind");
  });
}

const BiSeries& ModularContext::power_of_theta4h(i64 e) const {
  return t4h_pow_cache_.get(e, [&]() -> BiSeries {
    if (e == 0) return BiSeries::monomial(GaussianRational(1), 0, 0, D_);
    if (e == 1) return theta4h_;
    if (e == -1) return theta4h_.inverse();
    i64 a = e / 2;
    return power_of_theta4h(a) * power_of_theta4h(e - a);
  });
}

const QLaurent& ModularContext::theta4_null_pow(i64 e) const {
  return t4_null_pow_cache_.get(e, [&]() -> QLaurent {
    if (e >= 0) return qpow(theta4_, e);
    return qpow(inv_theta4_, -e);
  });
}

const BiSeries& ModularContext::measure_factor(i64 e, int sigma) const {
  return measure_cache_.get({e, sigma}, [&]() -> BiSeries {
    BiSeries m = (power_of_theta4h(e) * uph_).shift_lambda(2);
    if (sigma != 0) m = m.scaled_q(theta4_null_pow(sigma));
    return m;
  });
}

void ModularContext::run_construction_checks() const {
  // Jacobi relation between the nullwerte.
  {
    QLaurent lhs = qpow(theta3_, 4);
    QLaurent rhs = qpow(theta2_, 4) + qpow(theta4_, 4);
    i64 bound = std::min<i64>(64, W_);
    if (!equal_through(lhs, rhs, bound))
      throw std::logic_error("series tower consistency check failed (theta nullwert quartic relation)");
  }
  // theta1h = L * theta4h, i.e. L is the ratio of the normalized thetas of h.
  check_equal(theta1h_, theta4h_.shift_lambda(1), D_, "theta1h vs L*theta4h");
  // hstar against its closed form 4i L / (theta2 theta3 M).
  {
    BiSeries alt = M_.inverse().scaled_q(inv_t2t3_).scaled(GaussianRational(mpq_class(0), mpq_class(4))).shift_lambda(1);
    check_equal(hstar_, alt, D_, "hstar closed form");
  }
  // M was built from its square; compare with the theta-quotient definition.
  {
    BiSeries lhs = M_ * theta4h_ * theta4h_;
    BiSeries rhs = (theta_of_h(ThetaKind::tilde2, 1) * theta_of_h(ThetaKind::tilde3, 1)).scaled(GaussianRational(2));
    check_equal(lhs, rhs, D_, "M theta quotient");
  }
}

i64 default_window(i64 D, i64 qmargin) { return 4 * D + 8 + qmargin; }

ContextPtr build_context(i64 D, i64 W, bool run_checks) {
  return std::make_shared<const ModularContext>(D, W, run_checks);
}

const BiSeries& kernel(const ContextPtr& ctx, KernelKind kind, i64 a2) { return ctx->kernel(kind, a2); }
const BiSeries& theta_of_h(const ContextPtr& ctx, ThetaKind which, i64 n) { return ctx->theta_of_h(which, n); }
const BiSeries& power_of_theta4h(const ContextPtr& ctx, i64 e) { return ctx->power_of_theta4h(e); }

KernelKind kernel_kind_from_string(const std::string& s) {
  if (s == "sinh") return KernelKind::sinh;
  if (s == "cosh") return KernelKind::cosh;
  if (s == "coth") return KernelKind::coth;
  if (s == "tanh") return KernelKind::tanh;
  if (s == "csch") return KernelKind::csch;
  throw std::invalid_argument("unknown kernel kind: " + s);
}

}  // namespace kdon
