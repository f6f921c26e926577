#pragma once

#include <string>
#include <utility>

#include "kdon/common.hpp"

namespace kdon {

// Element of Q(i): exact complex number with rational real and imaginary parts.
struct GaussianRational {
  mpq_class re, im;

  GaussianRational() = default;
  GaussianRational(mpq_class r) : re(std::move(r)) {}
  GaussianRational(long r) : re(r) {}
  GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussianRational operator-() const { return {-re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
      re *= o.re;
      return *this;
    }
    mpq_class r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  GaussianRational inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(i)");
    mpq_class n = re * re + im * im;
    return {re / n, -im / n};
  }

  // i^k for any integer k.
  static GaussianRational i_pow(i64 k) {
    switch (((k % 4) + 4) % 4) {
      case 0: return {1};
      case 1: return {mpq_class(0), mpq_class(1)};
      case 2: return {-1};
      default: return {mpq_class(0), mpq_class(-1)};
    }
  }

  std::string str() const;
};

inline GaussianRational operator*(const mpq_class& s, GaussianRational a) {
  a.re *= s;
  a.im *= s;
  return a;
}

}  // namespace kdon
