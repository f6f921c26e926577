#pragma once

#include <vector>

#include "kdon/gaussian_rational.hpp"

namespace kdon {

// Truncated Laurent series in q over Q(i).
//
// Coefficients are stored for orders [min_order, min_order + size); orders
// between the stored range and max_valid are known to be zero; orders above
// max_valid are unknown and reading them throws WindowError.  Invariants after
// normalization: the first and last stored coefficients are nonzero and the
// stored range lies inside the window.  A series with no known nonzero
// coefficient has an empty store and min_order == max_valid + 1 (the first
// order at which it could be nonzero); the exact zero has an infinite window.
class QLaurent {
 public:
  QLaurent() : min_order_(kInfWindow), max_valid_(kInfWindow) {}

  static QLaurent zero() { return QLaurent(); }
  static QLaurent zero_through(i64 w);
  static QLaurent monomial(GaussianRational c, i64 k, i64 w = kInfWindow);
  static QLaurent constant(GaussianRational c, i64 w = kInfWindow) {
    return monomial(std::move(c), 0, w);
  }
  // Build from a dense coefficient block starting at order k0.
  static QLaurent from_coeffs(std::vector<GaussianRational> c, i64 k0, i64 w);

  i64 min_order() const { return min_order_; }
  i64 max_valid() const { return max_valid_; }
  bool known_zero() const { return c_.empty(); }
  bool exact_zero() const { return c_.empty() && max_valid_ == kInfWindow; }

  // Coefficient of q^k; throws WindowError when k exceeds the window.
  const GaussianRational& coeff(i64 k) const;

  i64 stored_begin() const { return min_order_; }
  i64 stored_end() const { return min_order_ + static_cast<i64>(c_.size()); }
  const GaussianRational& stored(i64 k) const { return c_[static_cast<size_t>(k - min_order_)]; }

  QLaurent operator-() const;
  friend QLaurent operator+(const QLaurent& a, const QLaurent& b);
  friend QLaurent operator-(const QLaurent& a, const QLaurent& b);
  friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
  QLaurent& operator+=(const QLaurent& o) { return *this = *this + o; }
  QLaurent& operator-=(const QLaurent& o) { return *this = *this - o; }

  QLaurent scaled(const GaussianRational& s) const;
  QLaurent shifted(i64 dq) const;  // multiply by q^dq
  QLaurent truncated(i64 w) const;  // weaken the window to min(w, current)
  QLaurent inverse() const;
  QLaurent derive_qlog() const;  // q d/dq

  bool has_imag() const;

  // True when the two series agree on every order <= k; throws WindowError if
  // either window ends below k.
  friend bool equal_through(const QLaurent& a, const QLaurent& b, i64 k);

  friend class BiSeries;

 private:
  i64 min_order_;
  i64 max_valid_;
  std::vector<GaussianRational> c_;
  void normalize();
};

}  // namespace kdon
