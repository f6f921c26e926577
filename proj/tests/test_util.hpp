#pragma once

#include <initializer_list>
#include <utility>

#include <gmpxx.h>

#include "kdon/bi_series.hpp"
#include "kdon/lambda_poly.hpp"
#include "kdon/q_laurent.hpp"

namespace kdon::testutil {

inline LambdaPoly poly(std::initializer_list<std::pair<i64, mpq_class>> terms) {
  LambdaPoly p;
  for (const auto& [d, c] : terms) p.set(d, GaussianRational(c));
  return p;
}

// Exact structural equality: same window and same stored coefficients.
inline bool same_row(const QLaurent& a, const QLaurent& b) {
  if (a.min_order() != b.min_order() || a.max_valid() != b.max_valid()) return false;
  if (a.stored_end() != b.stored_end()) return false;
  for (i64 k = a.stored_begin(); k < a.stored_end(); ++k)
    if (a.stored(k) != b.stored(k)) return false;
  return true;
}

inline bool same_series(const BiSeries& a, const BiSeries& b) {
  if (a.lambda_trunc() != b.lambda_trunc()) return false;
  i64 lo = a.lambda_min() < b.lambda_min() ? a.lambda_min() : b.lambda_min();
  for (i64 d = lo; d <= a.lambda_trunc(); ++d)
    if (!same_row(a.row(d), b.row(d))) return false;
  return true;
}

// Membership in q^q0 * L^l0 * Q[[q^2 L^2, q^4]]: rows of the wrong parity or
// below l0 vanish, and a stored nonzero coefficient of L^d q^k needs
// k >= q0 + (d - l0) with k == q0 + (d - l0) (mod 4).
inline bool supported_in_shifted_ring(const BiSeries& s, i64 q0, i64 l0) {
  for (i64 d = s.lambda_min(); d <= s.lambda_trunc(); ++d) {
    const QLaurent& r = s.row(d);
    bool row_allowed = d >= l0 && (d - l0) % 2 == 0;
    for (i64 k = r.stored_begin(); k < r.stored_end(); ++k) {
      if (r.stored(k).is_zero()) continue;
      if (!row_allowed) return false;
      i64 base = q0 + (d - l0);
      if (k < base || (((k - base) % 4) + 4) % 4 != 0) return false;
    }
  }
  return true;
}

// Crossing-strand support: a nonzero L^d q^k coefficient requires
// k == m - d (mod 4) and k >= m + d - 2*min(d, n_abs + 2); extracting q^0
// then forces the degree window m <= d <= 2*n_abs + 4 - m.
inline bool crossing_strand_supported(const BiSeries& s, i64 m, i64 n_abs) {
  for (i64 d = s.lambda_min(); d <= s.lambda_trunc(); ++d) {
    const QLaurent& r = s.row(d);
    for (i64 k = r.stored_begin(); k < r.stored_end(); ++k) {
      if (r.stored(k).is_zero()) continue;
      if ((((k - m + d) % 4) + 4) % 4 != 0) return false;
      i64 j = d < n_abs + 2 ? d : n_abs + 2;
      if (k < m + d - 2 * j) return false;
    }
  }
  return true;
}

}  // namespace kdon::testutil
