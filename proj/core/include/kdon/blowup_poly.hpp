#pragma once

#include <map>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "kdon/common.hpp"
#include "kdon/modular.hpp"

namespace kdon {

// Polynomial in two variables x and l with exact rational coefficients.
class Poly2 {
 public:
  using Key = std::pair<i64, i64>;  // (x-degree, l-degree)

  Poly2() = default;
  static Poly2 term(const mpq_class& c, i64 dx, i64 dl);

  const std::map<Key, mpq_class>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  mpq_class coeff(i64 dx, i64 dl) const;

  Poly2 operator-() const;
  friend Poly2 operator+(const Poly2& a, const Poly2& b);
  friend Poly2 operator-(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly2& a, const Poly2& b) { return !(a == b); }

  // Exact quotient a/b under lexicographic (x, then l) monomial order; a
  // nonzero remainder means the recursion invariant is broken and throws.
  static Poly2 divide_exact(const Poly2& a, const Poly2& b);

  std::string str() const;  // e.g. "-l^4*x^2 + (1-l^4)^2" written out flat

 private:
  std::map<Key, mpq_class> t_;
  void add_term(const Key& k, const mpq_class& c);
};

struct BlowupPoly {
  i64 n = 0;
  Poly2 R, S;
};

// R_n and S_n from the quadratic recursions R_{n+1} = (R_n^2 - l^2 S_n^2)/R_{n-1},
// S_{n+1} = (S_n^2 - l^2 R_n^2)/S_{n-1}, extended to negative n by symmetry.
BlowupPoly blowup_poly(i64 n);

struct IdentityReport {
  bool ok = true;
  std::string detail;  // first mismatch, as "L^d q^k: expected ..., got ..."
};

// Substitute x := M, l := Lambda and compare R_n and S_n with the normalized
// theta ratios of the n-fold elliptic argument through L^lambda_max.
IdentityReport verify_blowup_identity(const ContextPtr& ctx, i64 n, i64 lambda_max);

}  // namespace kdon
