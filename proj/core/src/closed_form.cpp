#include "kdon/closed_form.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

#include "kdon/gaussian_rational.hpp"

namespace kdon {

namespace {

// Recursive-descent evaluator over truncated power series in L.
struct Parser {
  const std::string& src;
  size_t pos = 0;
  i64 dmax;

  explicit Parser(const std::string& s, i64 d) : src(s), dmax(d) {}

  void skip() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("malformed series expression at position " + std::to_string(pos) +
                                ": " + why + " in \"" + src + "\"");
  }

  LambdaPoly mul(const LambdaPoly& a, const LambdaPoly& b) {
    LambdaPoly r;
    for (const auto& [da, ca] : a.terms())
      for (const auto& [db, cb] : b.terms())
        if (da + db <= dmax) r.add(da + db, ca * cb);
    return r;
  }

  LambdaPoly inverse(const LambdaPoly& a) {
    GaussianRational a0 = a.coeff(0);
    if (a0.is_zero()) fail("division needs a nonzero constant term");
    GaussianRational inv0 = a0.inverse();
    std::vector<GaussianRational> out(static_cast<size_t>(dmax) + 1);
    out[0] = inv0;
    for (i64 d = 1; d <= dmax; ++d) {
      GaussianRational s;
      for (const auto& [k, c] : a.terms()) {
        if (k < 1 || k > d) continue;
        s += c * out[static_cast<size_t>(d - k)];
      }
      out[static_cast<size_t>(d)] = -s * inv0;
    }
    LambdaPoly r;
    for (i64 d = 0; d <= dmax; ++d) r.set(d, out[static_cast<size_t>(d)]);
    return r;
  }

  LambdaPoly power(LambdaPoly base, i64 e) {
    if (e < 0) {
      base = inverse(base);
      e = -e;
    }
    LambdaPoly r;
    r.set(0, GaussianRational(1));
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  i64 integer() {
    skip();
    bool neg = eat('-');
    skip();
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
      fail("expected an integer");
    i64 v = 0;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
      v = v * 10 + (src[pos] - '0');
      if (v > (i64(1) << 40)) fail("integer too large");
      ++pos;
    }
    return neg ? -v : v;
  }

  LambdaPoly atom() {
    skip();
    if (pos >= src.size()) fail("unexpected end of input");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      LambdaPoly e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == 'L') {
      ++pos;
      LambdaPoly r;
      if (dmax >= 1) r.set(1, GaussianRational(1));
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      LambdaPoly r;
      r.set(0, GaussianRational(mpq_class(static_cast<long>(integer()))));
      return r;
    }
    fail("expected a number, 'L', or '('");
  }

  LambdaPoly factor() {
    LambdaPoly b = atom();
    if (eat('^')) return power(std::move(b), integer());
    return b;
  }

  LambdaPoly term() {
    LambdaPoly r = factor();
    for (;;) {
      if (eat('*'))
        r = mul(r, factor());
      else if (eat('/'))
        r = mul(r, inverse(factor()));
      else
        return r;
    }
  }

  LambdaPoly expr() {
    skip();
    bool neg = eat('-');
    LambdaPoly r = term();
    if (neg) r = r.scaled(GaussianRational(-1));
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
};

}  // namespace

LambdaPoly closed_form(const std::string& spec, i64 d_max) {
  if (d_max < 0) throw std::invalid_argument("negative truncation degree");
  Parser p(spec, d_max);
  LambdaPoly r = p.expr();
  p.skip();
  if (p.pos != spec.size()) p.fail("trailing input");
  return r;
}

}  // namespace kdon
