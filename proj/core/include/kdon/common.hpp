#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace kdon {

using i64 = std::int64_t;

// Sentinel validity window: orders are trusted to +infinity.  A quarter of the
// int64 range keeps saturating sums of two windows plus small shifts overflow-free.
inline constexpr i64 kInfWindow = std::numeric_limits<i64>::max() / 4;

inline i64 sat_add(i64 a, i64 b) {
  if (a >= kInfWindow || b >= kInfWindow) return kInfWindow;
  i64 s = a + b;
  return s >= kInfWindow ? kInfWindow : s;
}

inline i64 sat_min(i64 a, i64 b) { return a < b ? a : b; }

// Thrown when a coefficient is requested beyond the validity window of a
// truncated series.  The CLI maps this to exit code 3.
class WindowError : public std::runtime_error {
 public:
  WindowError(const std::string& what, i64 lambda_degree, i64 q_order, i64 max_valid)
      : std::runtime_error(what),
        lambda_degree_(lambda_degree),
        q_order_(q_order),
        max_valid_(max_valid) {}
  i64 lambda_degree() const { return lambda_degree_; }
  i64 q_order() const { return q_order_; }
  i64 max_valid() const { return max_valid_; }

 private:
  i64 lambda_degree_;
  i64 q_order_;
  i64 max_valid_;
};

std::string rat_str(const mpq_class& q);
mpq_class rat_parse(const std::string& s);

// Binomial coefficient C(a, n) for rational a and integer n >= 0.
mpq_class binom(const mpq_class& a, i64 n);

// Integer binomial C(n, k), zero outside the triangle.
mpz_class binom_int(i64 n, i64 k);

}  // namespace kdon
