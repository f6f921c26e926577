#pragma once

#include <string>

#include <gmpxx.h>

#include "kdon/geometry.hpp"
#include "kdon/lambda_poly.hpp"
#include "kdon/modular.hpp"

namespace kdon {

// A generating function of K-theoretic Donaldson invariants: a Laurent
// polynomial in Lambda whose degree-d coefficient is the holomorphic Euler
// characteristic of the degree-d moduli space, tagged with the geometric
// data it was computed from.
struct GenFun {
  std::string surface;
  IntClass c1;
  Class L;
  PolSpec pol;
  i64 lambda_truncation = 0;
  LambdaPoly series;
  bool conventioned = false;  // Lambda^4 slot holds the blowup value
};

// Every computed series must have real coefficients supported in degrees
// 1 <= d <= lambda_truncation with d == -c1^2 (mod 4).
void validate_genfun(const Surface& s, const GenFun& g);

// Fiber-limit series on a ruled surface with rank-2 lattice (P1xP1 or
// P2hat), for c1 = 0 or c1 = F and L = nF + mG.  Pure boundary-kernel
// evaluation; no crossing terms.
GenFun chi_fplus(const ContextPtr& ctx, const Surface& s, const IntClass& c1, const mpq_class& n,
                 i64 m, i64 d_max);

// Series at polarization `pol` on a ruled surface: fiber boundary kernel
// plus crossing terms between the fiber chamber and `pol`.  A chain that
// leaves ties unresolved averages the tied walls with half weight.
GenFun chi_at(const ContextPtr& ctx, const Surface& s, const IntClass& c1, const Class& L,
              const PolSpec& pol, i64 d_max);

// P2 series (c1 = 0 or H, polarization H), computed on P2hat and blown back
// down along two independent routes that must agree exactly.
GenFun blowdown_p2(const ContextPtr& ctx, const IntClass& c1, const Class& L_p2, i64 d_max);

// Replace the Lambda^4 coefficient of a c1 = 0 series by the degree-5
// invariant of the exceptional-class series on the blown-up surface.  The
// input's Lambda^4 value must equal that invariant plus
// <L,K> - (K^2 + L^2)/2 - 1; the replacement is rejected otherwise.
GenFun kdon_convention(const GenFun& g);

}  // namespace kdon
