#pragma once

#include <memory>
#include <string>
#include <utility>

#include "kdon/bi_series.hpp"
#include "kdon/parallel.hpp"

namespace kdon {

// Hyperbolic-function kernels of the elliptic coordinate h.  The argument is
// encoded as `a2` = twice the multiple of h/2, i.e. kernel(kind, a2) is the
// series of kind((a2/2)*h).  coth/tanh/csch require a2 != 0.
enum class KernelKind { sinh, cosh, coth, tanh, csch };

// Normalized Jacobi theta functions of the elliptic coordinate:
//   tilde1(n) = theta1(n*h)/theta4(0),  tilde2(n) = theta2(n*h)/theta2(0),
//   tilde3(n) = theta3(n*h)/theta3(0),  tilde4(n) = theta4(n*h)/theta4(0).
enum class ThetaKind { tilde1, tilde2, tilde3, tilde4 };

// Shared tower of modular/theta series used by all invariant computations.
// All members are series in q (validity window W) and Lambda (truncation D).
// Instances are immutable after construction; the accessor caches are
// thread-safe, so one context can serve parallel wall evaluations.
class ModularContext {
 public:
  ModularContext(i64 D, i64 W, bool run_checks);

  i64 D() const { return D_; }
  i64 W() const { return W_; }

  // Theta nullwerte (series in q alone).
  const QLaurent& theta2_null() const { return theta2_; }
  const QLaurent& theta3_null() const { return theta3_; }
  const QLaurent& theta4_null() const { return theta4_; }

  // The hauptmodul-like coordinate u = -t2^2/t3^2 - t3^2/t2^2 and the
  // logarithmic-derivative companion uprime = 2*theta4^8/(theta2*theta3)^2.
  const QLaurent& u() const { return u_; }
  const QLaurent& uprime() const { return uprime_; }

  // Elliptic coordinate h (odd series in Lambda, one pole order in q per
  // Lambda degree), its Lambda-logarithmic derivative hstar, the coordinate
  // zeta = 2*sinh(h/2), and M = 2*sqrt(1 + u*Lambda^2 + Lambda^4).
  const BiSeries& h() const { return h_; }
  const BiSeries& hstar() const { return hstar_; }
  const BiSeries& zeta() const { return zeta_; }
  const BiSeries& M() const { return M_; }

  // uprime * hstar, the universal measure factor of wall contributions.
  const BiSeries& uprime_hstar() const { return uph_; }

  // Normalized theta series of h itself.
  const BiSeries& theta4h() const { return theta4h_; }
  const BiSeries& theta1h() const { return theta1h_; }

  // sinh((a2/2) h) and cosh((a2/2) h) for any integer a2 (cached pairwise).
  BiSeries sinh_half(i64 a2) const;
  BiSeries cosh_half(i64 a2) const;

  const BiSeries& kernel(KernelKind kind, i64 a2) const;
  const BiSeries& theta_of_h(ThetaKind which, i64 n) const;
  const BiSeries& power_of_theta4h(i64 e) const;

  // Integer powers of the theta4 nullwert (negative exponents allowed).
  const QLaurent& theta4_null_pow(i64 e) const;

  // Lambda^2 * theta4h^e * theta4(0)^sigma * uprime * hstar — the common
  // factor of every wall contribution, keyed by the two exponents.
  const BiSeries& measure_factor(i64 e, int sigma) const;

 private:
  struct ScPair {
    BiSeries s, c;
  };
  const ScPair& sc_pair(i64 a2_abs) const;
  BiSeries theta_sum_even(i64 n) const;  // theta4-type sum of y^{2kn}
  BiSeries theta_sum_odd(i64 n) const;   // theta1-type sum of y^{(2k+1)n}
  BiSeries theta_sum_2(i64 n) const;     // theta2-type sum
  BiSeries theta_sum_3(i64 n) const;     // theta3-type sum
  void run_construction_checks() const;

  i64 D_ = 0;
  i64 W_ = 0;
  QLaurent theta2_, theta3_, theta4_;
  QLaurent u_, uprime_;
  QLaurent inv_t2t3_;   // 1/(theta2*theta3)
  QLaurent inv_theta4_; // 1/theta4
  BiSeries h_, hstar_, zeta_, M_;
  BiSeries uph_;
  BiSeries theta4h_, theta1h_;

  Memo<i64, ScPair> sc_cache_;
  Memo<std::pair<int, i64>, BiSeries> kernel_cache_;
  Memo<std::pair<int, i64>, BiSeries> theta_cache_;
  Memo<i64, BiSeries> t4h_pow_cache_;
  Memo<i64, QLaurent> t4_null_pow_cache_;
  Memo<std::pair<i64, int>, BiSeries> measure_cache_;
};

using ContextPtr = std::shared_ptr<const ModularContext>;

// Build the shared series tower.  W controls how far in q every derived
// series stays valid; the invariant pipeline needs W >= 4D + 4 and a couple
// of orders of slack, which default_window provides.
ContextPtr build_context(i64 D, i64 W, bool run_checks = true);
i64 default_window(i64 D, i64 qmargin = 4);

const BiSeries& kernel(const ContextPtr& ctx, KernelKind kind, i64 a2);
const BiSeries& theta_of_h(const ContextPtr& ctx, ThetaKind which, i64 n);
const BiSeries& power_of_theta4h(const ContextPtr& ctx, i64 e);

KernelKind kernel_kind_from_string(const std::string& s);

}  // namespace kdon
