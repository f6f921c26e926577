#include "kdon/q_laurent.hpp"

#include <sstream>

namespace kdon {

std::string rat_str(const mpq_class& q) { return q.get_str(); }

mpq_class rat_parse(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

mpq_class binom(const mpq_class& a, i64 n) {
  mpq_class r = 1;
  for (i64 j = 0; j < n; ++j) {
    r *= (a - j);
    r /= (j + 1);
  }
  return r;
}

mpz_class binom_int(i64 n, i64 k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

std::string GaussianRational::str() const {
  if (sgn(im) == 0) return re.get_str();
  std::ostringstream os;
  if (sgn(re) != 0) os << re.get_str() << (sgn(im) > 0 ? "+" : "");
  if (im == 1)
    os << "i";
  else if (im == -1)
    os << "-i";
  else
    os << im.get_str() << "*i";
  return os.str();
}

namespace {
const GaussianRational kZeroValue{};
}

void QLaurent::normalize() {
  // Drop stored coefficients that fell outside the window.
  if (!c_.empty() && stored_end() - 1 > max_valid_) {
    i64 keep = max_valid_ - min_order_ + 1;
    if (keep <= 0)
      c_.clear();
    else
      c_.resize(static_cast<size_t>(keep));
  }
  size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    min_order_ = max_valid_ == kInfWindow ? kInfWindow : max_valid_ + 1;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    min_order_ += static_cast<i64>(lead);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QLaurent QLaurent::zero_through(i64 w) {
  QLaurent r;
  r.max_valid_ = w;
  r.min_order_ = w == kInfWindow ? kInfWindow : w + 1;
  return r;
}

QLaurent QLaurent::monomial(GaussianRational c, i64 k, i64 w) {
  QLaurent r;
  r.max_valid_ = w;
  r.min_order_ = k;
  r.c_.push_back(std::move(c));
  r.normalize();
  return r;
}

QLaurent QLaurent::from_coeffs(std::vector<GaussianRational> c, i64 k0, i64 w) {
  QLaurent r;
  r.max_valid_ = w;
  r.min_order_ = k0;
  r.c_ = std::move(c);
  r.normalize();
  return r;
}

const GaussianRational& QLaurent::coeff(i64 k) const {
  if (k > max_valid_)
    throw WindowError("coefficient of q^" + std::to_string(k) + " beyond validity window (max " +
                          std::to_string(max_valid_) + ")",
                      0, k, max_valid_);
  if (k < min_order_ || k >= stored_end()) return kZeroValue;
  return c_[static_cast<size_t>(k - min_order_)];
}

QLaurent QLaurent::operator-() const {
  QLaurent r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

QLaurent operator+(const QLaurent& a, const QLaurent& b) {
  if (a.exact_zero()) return b;
  if (b.exact_zero()) return a;
  QLaurent r;
  r.max_valid_ = sat_min(a.max_valid_, b.max_valid_);
  i64 lo = sat_min(a.min_order_, b.min_order_);
  if (lo > r.max_valid_) return QLaurent::zero_through(r.max_valid_);
  i64 hi = std::max(a.c_.empty() ? lo - 1 : a.stored_end() - 1,
                    b.c_.empty() ? lo - 1 : b.stored_end() - 1);
  hi = sat_min(hi, r.max_valid_);
  if (hi < lo) return QLaurent::zero_through(r.max_valid_);
  r.min_order_ = lo;
  r.c_.assign(static_cast<size_t>(hi - lo + 1), GaussianRational{});
  for (i64 k = a.stored_begin(); k < a.stored_end() && k <= hi; ++k)
    r.c_[static_cast<size_t>(k - lo)] += a.stored(k);
  for (i64 k = b.stored_begin(); k < b.stored_end() && k <= hi; ++k)
    r.c_[static_cast<size_t>(k - lo)] += b.stored(k);
  r.normalize();
  return r;
}

QLaurent operator-(const QLaurent& a, const QLaurent& b) { return a + (-b); }

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
  if (a.exact_zero() || b.exact_zero()) return QLaurent::zero();
  QLaurent r;
  r.max_valid_ = sat_min(sat_add(a.max_valid_, b.min_order_), sat_add(b.max_valid_, a.min_order_));
  if (a.c_.empty() || b.c_.empty()) return QLaurent::zero_through(r.max_valid_);
  i64 lo = a.min_order_ + b.min_order_;
  i64 hi = sat_min((a.stored_end() - 1) + (b.stored_end() - 1), r.max_valid_);
  if (hi < lo) return QLaurent::zero_through(r.max_valid_);
  r.min_order_ = lo;
  r.c_.assign(static_cast<size_t>(hi - lo + 1), GaussianRational{});
  bool real = !a.has_imag() && !b.has_imag();
  for (i64 i = a.stored_begin(); i < a.stored_end(); ++i) {
    const GaussianRational& av = a.stored(i);
    if (av.is_zero()) continue;
    i64 jmax = sat_min(b.stored_end() - 1, hi - i);
    if (real) {
      for (i64 j = b.stored_begin(); j <= jmax; ++j) {
        const GaussianRational& bv = b.stored(j);
        if (sgn(bv.re) == 0) continue;
        r.c_[static_cast<size_t>(i + j - lo)].re += av.re * bv.re;
      }
    } else {
      for (i64 j = b.stored_begin(); j <= jmax; ++j) {
        const GaussianRational& bv = b.stored(j);
        if (bv.is_zero()) continue;
        r.c_[static_cast<size_t>(i + j - lo)] += av * bv;
      }
    }
  }
  r.normalize();
  return r;
}

QLaurent QLaurent::scaled(const GaussianRational& s) const {
  if (s.is_zero()) return QLaurent::zero();
  QLaurent r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

QLaurent QLaurent::shifted(i64 dq) const {
  QLaurent r = *this;
  if (r.exact_zero()) return r;
  r.min_order_ = sat_add(r.min_order_, dq);
  r.max_valid_ = sat_add(r.max_valid_, dq);
  return r;
}

QLaurent QLaurent::truncated(i64 w) const {
  QLaurent r = *this;
  r.max_valid_ = sat_min(r.max_valid_, w);
  r.normalize();
  return r;
}

QLaurent QLaurent::inverse() const {
  if (known_zero())
    throw std::domain_error("inverse of a q-series with no known nonzero coefficient");
  i64 m = min_order_;
  // Unit part u with u[0] != 0, valid through degree n = max_valid - m.
  i64 n = max_valid_ == kInfWindow ? kInfWindow : max_valid_ - m;
  // A single exact monomial inverts exactly: 1/(c q^m) = (1/c) q^(-m).
  if (n == kInfWindow && c_.size() == 1) return QLaurent::monomial(c_[0].inverse(), -m);
  // The inverse is valid through max_valid - 2m; as a polynomial in the unit
  // part's coefficients it needs u up to the same relative degree.
  i64 rel = n;
  // For any other exact polynomial the inverse is an honest infinite series;
  // it cannot carry an exact zero tail, so an infinite request is an error.
  if (n == kInfWindow)
    throw std::domain_error("inverse of an exactly-known q-series requires a finite window");
  std::vector<GaussianRational> u(static_cast<size_t>(rel) + 1);
  for (i64 k = 0; k <= rel; ++k) {
    i64 src = m + k;
    u[static_cast<size_t>(k)] =
        (src >= stored_begin() && src < stored_end()) ? stored(src) : GaussianRational{};
  }
  GaussianRational u0inv = u[0].inverse();
  std::vector<GaussianRational> v(static_cast<size_t>(rel) + 1);
  v[0] = u0inv;
  for (i64 k = 1; k <= rel; ++k) {
    GaussianRational acc;
    for (i64 j = 1; j <= k; ++j) {
      if (u[static_cast<size_t>(j)].is_zero()) continue;
      acc += u[static_cast<size_t>(j)] * v[static_cast<size_t>(k - j)];
    }
    v[static_cast<size_t>(k)] = -(acc * u0inv);
  }
  return QLaurent::from_coeffs(std::move(v), -m, max_valid_ - 2 * m);
}

QLaurent QLaurent::derive_qlog() const {
  QLaurent r = *this;
  for (i64 k = r.stored_begin(); k < r.stored_end(); ++k)
    r.c_[static_cast<size_t>(k - r.min_order_)] *= GaussianRational(mpq_class(k));
  r.normalize();
  return r;
}

bool QLaurent::has_imag() const {
  for (const auto& x : c_)
    if (sgn(x.im) != 0) return true;
  return false;
}

bool equal_through(const QLaurent& a, const QLaurent& b, i64 k) {
  for (i64 j = sat_min(a.min_order_, b.min_order_); j <= k; ++j)
    if (a.coeff(j) != b.coeff(j)) return false;
  if (a.max_valid_ < k || b.max_valid_ < k)
    throw WindowError("window ends before q^" + std::to_string(k), 0, k,
                      sat_min(a.max_valid_, b.max_valid_));
  return true;
}

}  // namespace kdon
