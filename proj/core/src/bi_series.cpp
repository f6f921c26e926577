#include "kdon/bi_series.hpp"

#include <algorithm>

namespace kdon {

namespace {
const QLaurent kZeroRow{};

i64 pair_window(const QLaurent& r1, const QLaurent& r2) {
  return sat_min(sat_add(r1.max_valid(), r2.min_order()), sat_add(r2.max_valid(), r1.min_order()));
}
}  // namespace

BiSeries::BiSeries(i64 lambda_trunc, i64 lambda_min)
    : lambda_min_(lambda_min), lambda_trunc_(lambda_trunc) {
  if (lambda_trunc_ >= lambda_min_)
    rows_.assign(static_cast<size_t>(lambda_trunc_ - lambda_min_ + 1), QLaurent::zero());
}

BiSeries BiSeries::from_qseries(QLaurent row0, i64 lambda_trunc) {
  BiSeries r(lambda_trunc);
  if (lambda_trunc >= 0) r.set_row(0, std::move(row0));
  return r;
}

BiSeries BiSeries::monomial(GaussianRational c, i64 q_ord, i64 lambda_deg, i64 lambda_trunc,
                            i64 window) {
  BiSeries r(lambda_trunc);
  if (lambda_deg <= lambda_trunc) r.set_row(lambda_deg, QLaurent::monomial(std::move(c), q_ord, window));
  return r;
}

const QLaurent& BiSeries::row(i64 d) const {
  if (d > lambda_trunc_)
    throw WindowError("coefficient of L^" + std::to_string(d) + " beyond lambda truncation " +
                          std::to_string(lambda_trunc_),
                      d, 0, lambda_trunc_);
  if (d < lambda_min_) return kZeroRow;
  return rows_[static_cast<size_t>(d - lambda_min_)];
}

void BiSeries::set_row(i64 d, QLaurent r) {
  if (d > lambda_trunc_ || d < lambda_min_)
    throw std::invalid_argument("set_row outside represented range");
  rows_[static_cast<size_t>(d - lambda_min_)] = std::move(r);
}

void BiSeries::trim_lambda_min() {
  while (!rows_.empty() && rows_.front().exact_zero() && lambda_min_ < 0) {
    rows_.erase(rows_.begin());
    ++lambda_min_;
  }
}

BiSeries BiSeries::operator-() const {
  BiSeries r = *this;
  for (auto& row : r.rows_) row = -row;
  return r;
}

BiSeries operator+(const BiSeries& a, const BiSeries& b) {
  i64 lmin = std::min(a.lambda_min_, b.lambda_min_);
  i64 trunc = sat_min(a.lambda_trunc_, b.lambda_trunc_);
  BiSeries r(trunc, lmin);
  for (i64 d = lmin; d <= trunc; ++d) r.set_row(d, a.row(d) + b.row(d));
  return r;
}

BiSeries operator-(const BiSeries& a, const BiSeries& b) { return a + (-b); }

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
  i64 lmin = a.lambda_min_ + b.lambda_min_;
  i64 trunc = sat_min(sat_add(a.lambda_trunc_, b.lambda_min_), sat_add(b.lambda_trunc_, a.lambda_min_));
  BiSeries r(trunc, lmin);
  for (i64 d = lmin; d <= trunc; ++d) {
    i64 win = kInfWindow;
    i64 lo = kInfWindow;
    i64 hi_stored = -kInfWindow;
    i64 d1_begin = std::max(a.lambda_min_, d - b.lambda_trunc_);
    i64 d1_end = std::min(a.lambda_trunc_, d - b.lambda_min_);
    for (i64 d1 = d1_begin; d1 <= d1_end; ++d1) {
      const QLaurent& r1 = a.row(d1);
      const QLaurent& r2 = b.row(d - d1);
      if (r1.exact_zero() || r2.exact_zero()) continue;
      win = sat_min(win, pair_window(r1, r2));
      if (!r1.known_zero() && !r2.known_zero()) {
        lo = sat_min(lo, r1.min_order() + r2.min_order());
        hi_stored = std::max(hi_stored, (r1.stored_end() - 1) + (r2.stored_end() - 1));
      }
    }
    if (lo == kInfWindow || hi_stored < lo || win < lo) {
      r.set_row(d, win == kInfWindow ? QLaurent::zero() : QLaurent::zero_through(win));
      continue;
    }
    i64 hi = sat_min(hi_stored, win);
    std::vector<GaussianRational> acc(static_cast<size_t>(hi - lo + 1));
    for (i64 d1 = d1_begin; d1 <= d1_end; ++d1) {
      const QLaurent& r1 = a.row(d1);
      const QLaurent& r2 = b.row(d - d1);
      if (r1.known_zero() || r2.known_zero()) continue;
      bool real = !r1.has_imag() && !r2.has_imag();
      for (i64 i = r1.stored_begin(); i < r1.stored_end(); ++i) {
        const GaussianRational& av = r1.stored(i);
        if (av.is_zero()) continue;
        i64 jmax = sat_min(r2.stored_end() - 1, hi - i);
        if (real) {
          for (i64 j = r2.stored_begin(); j <= jmax; ++j) {
            const GaussianRational& bv = r2.stored(j);
            if (sgn(bv.re) == 0) continue;
            acc[static_cast<size_t>(i + j - lo)].re += av.re * bv.re;
          }
        } else {
          for (i64 j = r2.stored_begin(); j <= jmax; ++j) {
            const GaussianRational& bv = r2.stored(j);
            if (bv.is_zero()) continue;
            acc[static_cast<size_t>(i + j - lo)] += av * bv;
          }
        }
      }
    }
    r.set_row(d, QLaurent::from_coeffs(std::move(acc), lo, win));
  }
  return r;
}

BiSeries BiSeries::scaled(const GaussianRational& s) const {
  BiSeries r = *this;
  for (auto& row : r.rows_) row = row.scaled(s);
  return r;
}

BiSeries BiSeries::scaled_q(const QLaurent& s) const {
  BiSeries r = *this;
  for (auto& row : r.rows_) row = row * s;
  return r;
}

BiSeries BiSeries::shift_lambda(i64 s) const {
  BiSeries r = *this;
  r.lambda_min_ += s;
  r.lambda_trunc_ = sat_add(r.lambda_trunc_, s);
  return r;
}

BiSeries BiSeries::shift_q(i64 k) const {
  BiSeries r = *this;
  for (auto& row : r.rows_) row = row.shifted(k);
  return r;
}

BiSeries BiSeries::truncated_lambda(i64 new_trunc) const {
  if (new_trunc >= lambda_trunc_) return *this;
  BiSeries r(new_trunc, lambda_min_);
  for (i64 d = lambda_min_; d <= new_trunc; ++d) r.set_row(d, row(d));
  return r;
}

BiSeries BiSeries::inverse() const {
  BiSeries t = *this;
  t.trim_lambda_min();
  if (t.lambda_min_ > 0 || t.lambda_trunc_ < 0)
    throw std::domain_error("series inverse requires L-valuation 0");
  if (t.lambda_min_ < 0)
    throw std::domain_error("series inverse: L-degrees below 0 are not known to vanish");
  QLaurent c0 = t.row(0).inverse();
  BiSeries r(t.lambda_trunc_, 0);
  r.set_row(0, c0);
  for (i64 d = 1; d <= t.lambda_trunc_; ++d) {
    QLaurent acc = QLaurent::zero();
    for (i64 j = 1; j <= d; ++j) acc += t.row(j) * r.row(d - j);
    r.set_row(d, -(c0 * acc));
  }
  return r;
}

BiSeries BiSeries::exp() const {
  BiSeries t = *this;
  t.trim_lambda_min();
  if (t.lambda_min_ < 0)
    throw std::domain_error("exp: L-degrees below 0 are not known to vanish");
  if (t.lambda_trunc_ >= 0 && !t.row(0).known_zero())
    throw std::domain_error("exp requires a vanishing L^0 coefficient");
  BiSeries r(t.lambda_trunc_, 0);
  if (t.lambda_trunc_ < 0) return r;
  i64 w0 = t.row(0).max_valid();
  r.set_row(0, QLaurent::constant(GaussianRational(1), w0));
  for (i64 d = 1; d <= t.lambda_trunc_; ++d) {
    QLaurent acc = QLaurent::zero();
    for (i64 j = 1; j <= d; ++j)
      acc += t.row(j).scaled(GaussianRational(mpq_class(j))) * r.row(d - j);
    r.set_row(d, acc.scaled(GaussianRational(mpq_class(1, d))));
  }
  return r;
}

BiSeries BiSeries::sqrt_one_plus() const {
  BiSeries t = *this;
  t.trim_lambda_min();
  if (t.lambda_min_ < 0)
    throw std::domain_error("sqrt_one_plus: L-degrees below 0 are not known to vanish");
  if (t.lambda_trunc_ >= 0 && !t.row(0).known_zero())
    throw std::domain_error("sqrt_one_plus requires a vanishing L^0 coefficient");
  BiSeries r(t.lambda_trunc_, 0);
  if (t.lambda_trunc_ < 0) return r;
  i64 w0 = t.row(0).max_valid();
  r.set_row(0, QLaurent::constant(GaussianRational(1), w0));
  for (i64 d = 1; d <= t.lambda_trunc_; ++d) {
    QLaurent acc = QLaurent::zero();
    for (i64 j = 1; j <= d; ++j)
      acc += t.row(j).scaled(GaussianRational(mpq_class(3 * j - 2 * d, 2))) * r.row(d - j);
    r.set_row(d, acc.scaled(GaussianRational(mpq_class(1, d))));
  }
  return r;
}

BiSeries BiSeries::derive_qlog() const {
  BiSeries r = *this;
  for (auto& row : r.rows_) row = row.derive_qlog();
  return r;
}

BiSeries BiSeries::derive_lambdalog() const {
  BiSeries r = *this;
  for (i64 d = lambda_min_; d <= lambda_trunc_; ++d)
    r.rows_[static_cast<size_t>(d - lambda_min_)] =
        row(d).scaled(GaussianRational(mpq_class(d)));
  return r;
}

LambdaPoly BiSeries::coeff_q0() const {
  LambdaPoly p;
  for (i64 d = lambda_min_; d <= lambda_trunc_; ++d) {
    const QLaurent& r = row(d);
    if (r.max_valid() < 0)
      throw WindowError("q^0 coefficient of L^" + std::to_string(d) +
                            " is beyond the validity window (max q^" +
                            std::to_string(r.max_valid()) + ")",
                        d, 0, r.max_valid());
    p.add(d, r.coeff(0));
  }
  return p;
}

LambdaPoly coeff_q0_product(const BiSeries& a, const BiSeries& b) {
  i64 lmin = a.lambda_min_ + b.lambda_min_;
  i64 trunc =
      sat_min(sat_add(a.lambda_trunc_, b.lambda_min_), sat_add(b.lambda_trunc_, a.lambda_min_));
  LambdaPoly p;
  for (i64 d = lmin; d <= trunc; ++d) {
    GaussianRational acc;
    i64 d1_begin = std::max(a.lambda_min_, d - b.lambda_trunc_);
    i64 d1_end = std::min(a.lambda_trunc_, d - b.lambda_min_);
    for (i64 d1 = d1_begin; d1 <= d1_end; ++d1) {
      const QLaurent& r1 = a.row(d1);
      const QLaurent& r2 = b.row(d - d1);
      if (r1.exact_zero() || r2.exact_zero()) continue;
      if (pair_window(r1, r2) < 0)
        throw WindowError("q^0 coefficient of L^" + std::to_string(d) +
                              " in a product is beyond the validity window",
                          d, 0, pair_window(r1, r2));
      i64 k_lo = std::max(r1.stored_begin(), -(r2.stored_end() - 1));
      i64 k_hi = std::min(r1.stored_end() - 1, -r2.stored_begin());
      for (i64 k = k_lo; k <= k_hi; ++k) {
        const GaussianRational& x = r1.stored(k);
        if (x.is_zero()) continue;
        const GaussianRational& y = r2.stored(-k);
        if (y.is_zero()) continue;
        acc += x * y;
      }
    }
    p.add(d, acc);
  }
  return p;
}

bool equal_through(const BiSeries& a, const BiSeries& b, i64 lambda_deg, i64 q_ord) {
  for (i64 d = std::min(a.lambda_min(), b.lambda_min()); d <= lambda_deg; ++d)
    if (!equal_through(a.row(d), b.row(d), q_ord)) return false;
  return true;
}

BiSeries arith(const BiSeries& a, const BiSeries& b, ArithOp op, const GaussianRational& scalar) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::negate: return -a;
    case ArithOp::scalar_mul: return a.scaled(scalar);
  }
  throw std::invalid_argument("unknown arithmetic op");
}

}  // namespace kdon
