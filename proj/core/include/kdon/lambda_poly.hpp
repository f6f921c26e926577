#pragma once

#include <map>
#include <string>

#include "kdon/gaussian_rational.hpp"

namespace kdon {

// Finite Laurent polynomial in the variable L (the second series variable);
// the usual output of a q^0 extraction.  Only nonzero coefficients are kept.
class LambdaPoly {
 public:
  LambdaPoly() = default;

  const std::map<i64, GaussianRational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  GaussianRational coeff(i64 d) const {
    auto it = t_.find(d);
    return it == t_.end() ? GaussianRational{} : it->second;
  }
  void set(i64 d, GaussianRational c) {
    if (c.is_zero())
      t_.erase(d);
    else
      t_[d] = std::move(c);
  }
  void add(i64 d, const GaussianRational& c) {
    auto it = t_.find(d);
    if (it == t_.end()) {
      if (!c.is_zero()) t_.emplace(d, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  LambdaPoly& operator+=(const LambdaPoly& o) {
    for (const auto& [d, c] : o.t_) add(d, c);
    return *this;
  }
  LambdaPoly& operator-=(const LambdaPoly& o) {
    for (const auto& [d, c] : o.t_) add(d, -c);
    return *this;
  }
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const LambdaPoly& a, const LambdaPoly& b) { return !(a == b); }

  LambdaPoly scaled(const GaussianRational& s) const {
    LambdaPoly r;
    if (s.is_zero()) return r;
    for (const auto& [d, c] : t_) r.t_.emplace(d, c * s);
    return r;
  }

  // Drop degrees above dmax (used when two routes carry different truncations).
  LambdaPoly truncated(i64 dmax) const {
    LambdaPoly r;
    for (const auto& [d, c] : t_) {
      if (d <= dmax) r.t_.emplace(d, c);
    }
    return r;
  }

  std::string str() const;  // e.g. "2*L^4 - 18*L^8"

 private:
  std::map<i64, GaussianRational> t_;
};

}  // namespace kdon
