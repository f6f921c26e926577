#pragma once

#include <vector>

#include "kdon/lambda_poly.hpp"
#include "kdon/q_laurent.hpp"

namespace kdon {

// Truncated series in L whose coefficients are truncated q-Laurent series:
// an element of Q(i)((q))[[L]] with L-degrees represented in
// [lambda_min, lambda_trunc] (degrees below lambda_min are exactly zero,
// degrees above lambda_trunc are unknown).  Each row carries its own
// q-validity window.
class BiSeries {
 public:
  explicit BiSeries(i64 lambda_trunc = 0, i64 lambda_min = 0);

  static BiSeries zero(i64 lambda_trunc) { return BiSeries(lambda_trunc); }
  static BiSeries from_qseries(QLaurent row0, i64 lambda_trunc);
  static BiSeries monomial(GaussianRational c, i64 q_ord, i64 lambda_deg, i64 lambda_trunc,
                           i64 window = kInfWindow);

  i64 lambda_min() const { return lambda_min_; }
  i64 lambda_trunc() const { return lambda_trunc_; }

  // Row of L^d.  Rows below lambda_min are the exact zero; rows above
  // lambda_trunc throw WindowError.
  const QLaurent& row(i64 d) const;
  void set_row(i64 d, QLaurent r);

  const GaussianRational& coeff(i64 d, i64 k) const { return row(d).coeff(k); }

  BiSeries operator-() const;
  friend BiSeries operator+(const BiSeries& a, const BiSeries& b);
  friend BiSeries operator-(const BiSeries& a, const BiSeries& b);
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b);
  BiSeries& operator+=(const BiSeries& o) { return *this = *this + o; }
  BiSeries& operator-=(const BiSeries& o) { return *this = *this - o; }
  BiSeries& operator*=(const BiSeries& o) { return *this = *this * o; }

  BiSeries scaled(const GaussianRational& s) const;
  BiSeries scaled_q(const QLaurent& s) const;  // multiply every row by a q-series
  BiSeries shift_lambda(i64 s) const;          // multiply by L^s
  BiSeries shift_q(i64 k) const;               // multiply by q^k
  BiSeries truncated_lambda(i64 new_trunc) const;

  // Multiplicative inverse; requires L-valuation 0 (all rows below L^0 exactly
  // zero and an invertible L^0 row).
  BiSeries inverse() const;
  // exp(a); requires the L^0 row to have no known nonzero coefficient.
  BiSeries exp() const;
  // sqrt(1 + a) with constant term 1; same precondition as exp.
  BiSeries sqrt_one_plus() const;

  BiSeries derive_qlog() const;      // q d/dq rowwise
  BiSeries derive_lambdalog() const; // L d/dL

  // q^0 coefficient of every represented row; throws WindowError (naming the
  // offending L-degree) when some row's window ends below order 0.
  LambdaPoly coeff_q0() const;

  // q^0 coefficient of a*b without forming the full product.
  friend LambdaPoly coeff_q0_product(const BiSeries& a, const BiSeries& b);

  friend bool equal_through(const BiSeries& a, const BiSeries& b, i64 lambda_deg, i64 q_ord);

 private:
  i64 lambda_min_;
  i64 lambda_trunc_;
  std::vector<QLaurent> rows_;  // rows_[i] is the coefficient of L^(lambda_min_+i)
  void trim_lambda_min();
};

// Free-function aliases mirroring the module operation names.
enum class ArithOp { add, sub, mul, negate, scalar_mul };
BiSeries arith(const BiSeries& a, const BiSeries& b, ArithOp op,
               const GaussianRational& scalar = GaussianRational{});
inline BiSeries invert(const BiSeries& a) { return a.inverse(); }
inline BiSeries exp_series(const BiSeries& a) { return a.exp(); }
inline BiSeries sqrt_one_plus(const BiSeries& a) { return a.sqrt_one_plus(); }
enum class DeriveVar { q_log, lambda_log };
inline BiSeries derive(const BiSeries& a, DeriveVar v) {
  return v == DeriveVar::q_log ? a.derive_qlog() : a.derive_lambdalog();
}
inline LambdaPoly coeff_q0(const BiSeries& a) { return a.coeff_q0(); }

}  // namespace kdon
