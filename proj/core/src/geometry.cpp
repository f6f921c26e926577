#include "kdon/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kdon {

namespace {

i64 mpq_floor_i64(const mpq_class& q) {
  mpz_class z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  if (!z.fits_slong_p()) throw std::overflow_error("enumeration bound does not fit in 64 bits");
  return z.get_si();
}

i64 mpq_ceil_i64(const mpq_class& q) {
  mpz_class z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  if (!z.fits_slong_p()) throw std::overflow_error("enumeration bound does not fit in 64 bits");
  return z.get_si();
}

i64 isqrt_i64(i64 n) {
  if (n < 0) return -1;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Box radius that certainly contains all integers x with x^2 <= q.
i64 sqrt_bound(const mpq_class& q) {
  if (q < 0) return -1;
  return isqrt_i64(mpq_floor_i64(q)) + 1;
}

std::vector<std::vector<mpq_class>> invert_gram(const Surface& s) {
  const int n = s.rank();
  std::vector<std::vector<mpq_class>> a(static_cast<size_t>(n), std::vector<mpq_class>(2 * static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = s.gram[static_cast<size_t>(i)][static_cast<size_t>(j)];
    a[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) { piv = r; break; }
    if (piv < 0) throw std::logic_error("degenerate intersection form");
    std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
    mpq_class inv = 1 / a[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (auto& x : a[static_cast<size_t>(col)]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      mpq_class f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (int j = 0; j < 2 * n; ++j)
        a[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * a[static_cast<size_t>(col)][static_cast<size_t>(j)];
    }
  }
  std::vector<std::vector<mpq_class>> inv(static_cast<size_t>(n), std::vector<mpq_class>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[static_cast<size_t>(i)][static_cast<size_t>(j)] = a[static_cast<size_t>(i)][static_cast<size_t>(n + j)];
  return inv;
}

Class unit_class(int rank, int idx, const mpq_class& v = 1) {
  Class c(static_cast<size_t>(rank), 0);
  c[static_cast<size_t>(idx)] = v;
  return c;
}

// Effective-curve test classes whose positive pairing characterizes the
// interior polarizations we support.
std::vector<Class> positivity_tests(const Surface& s) {
  const int n = s.rank();
  switch (s.kind) {
    case LatticeKind::rank1:
      return {unit_class(n, 0)};
    case LatticeKind::hyperbolic:
      return {unit_class(n, 0), unit_class(n, 1)};
    case LatticeKind::lorentz2: {
      Class f{1, -1};
      return {f, unit_class(n, 1)};
    }
    case LatticeKind::hyperbolic_e: {
      Class fe{1, 0, -1}, ge{0, 1, -1};
      return {unit_class(n, 0), unit_class(n, 1), unit_class(n, 2), fe, ge};
    }
    case LatticeKind::lorentz2_e: {
      Class line{1, -1, -1};
      return {unit_class(n, 1), unit_class(n, 2), line};
    }
  }
  throw std::logic_error("unknown lattice kind");
}

int count_exceptionals(const Surface& s) {
  int c = 0;
  for (const auto& b : s.basis)
    if (!b.empty() && b[0] == 'E') ++c;
  return c;
}

}  // namespace

Surface surface_p2() {
  Surface s;
  s.name = "P2";
  s.basis = {"H"};
  s.gram = {{1}};
  s.K = {-3};
  s.sigma = 1;
  s.kind = LatticeKind::rank1;
  return s;
}

Surface surface_p1xp1() {
  Surface s;
  s.name = "P1xP1";
  s.basis = {"F", "G"};
  s.gram = {{0, 1}, {1, 0}};
  s.K = {-2, -2};
  s.sigma = 0;
  s.kind = LatticeKind::hyperbolic;
  s.has_ruling = true;
  s.F = {1, 0};
  s.G = {0, 1};
  return s;
}

Surface surface_p2hat() {
  Surface s;
  s.name = "P2hat";
  s.basis = {"H", "E"};
  s.gram = {{1, 0}, {0, -1}};
  s.K = {-3, 1};
  s.sigma = 0;
  s.kind = LatticeKind::lorentz2;
  s.has_ruling = true;
  s.F = {1, -1};
  s.G = {mpq_class(1, 2), mpq_class(1, 2)};
  s.last_exceptional = 1;
  return s;
}

Surface blowup(const Surface& s) {
  if (s.kind == LatticeKind::rank1) return surface_p2hat();
  if (s.kind != LatticeKind::hyperbolic && s.kind != LatticeKind::lorentz2)
    throw std::invalid_argument("blowup: only surfaces of rank <= 2 can be blown up");
  Surface r = s;
  int k = count_exceptionals(s) + 1;
  r.name = s.name + "+E";
  r.basis.push_back("E" + std::to_string(k));
  for (auto& row : r.gram) row.push_back(0);
  r.gram.push_back(std::vector<i64>(r.basis.size(), 0));
  r.gram.back().back() = -1;
  r.K.push_back(1);
  r.sigma -= 1;
  r.kind = s.kind == LatticeKind::hyperbolic ? LatticeKind::hyperbolic_e : LatticeKind::lorentz2_e;
  r.F.push_back(0);
  r.G.push_back(0);
  r.last_exceptional = r.rank() - 1;
  return r;
}

Surface surface_by_name(const std::string& name) {
  std::string base = name;
  int blowups = 0;
  while (base.size() >= 2 && base.compare(base.size() - 2, 2, "+E") == 0) {
    base.resize(base.size() - 2);
    ++blowups;
  }
  Surface s;
  if (base == "P2") s = surface_p2();
  else if (base == "P1xP1") s = surface_p1xp1();
  else if (base == "P2hat") s = surface_p2hat();
  else throw std::invalid_argument("unknown surface: " + name);
  for (int i = 0; i < blowups; ++i) s = blowup(s);
  return s;
}

mpq_class pair_q(const Surface& s, const Class& a, const Class& b) {
  const size_t n = s.basis.size();
  if (a.size() != n || b.size() != n) throw std::invalid_argument("pair_q: wrong coordinate count");
  mpq_class r = 0;
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (s.gram[i][j] == 0 || b[j] == 0) continue;
      r += a[i] * s.gram[i][j] * b[j];
    }
  }
  return r;
}

i64 pair_i(const Surface& s, const IntClass& a, const IntClass& b) {
  const size_t n = s.basis.size();
  if (a.size() != n || b.size() != n) throw std::invalid_argument("pair_i: wrong coordinate count");
  i64 r = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r += a[i] * s.gram[i][j] * b[j];
  return r;
}

mpq_class pair_mixed(const Surface& s, const IntClass& a, const Class& b) {
  return pair_q(s, to_class(a), b);
}

i64 self_i(const Surface& s, const IntClass& a) { return pair_i(s, a, a); }

Class to_class(const IntClass& a) {
  Class c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = static_cast<long>(a[i]);
  return c;
}

bool is_integral(const Class& a) {
  for (const auto& x : a)
    if (x.get_den() != 1) return false;
  return true;
}

IntClass to_int_class(const Class& a) {
  if (!is_integral(a)) throw std::invalid_argument("class is not integral");
  IntClass r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].get_num().fits_slong_p()) throw std::overflow_error("class coordinate too large");
    r[i] = a[i].get_num().get_si();
  }
  return r;
}

namespace {

struct ClassParser {
  const std::string& text;
  const Surface& s;
  size_t pos = 0;
  std::vector<std::pair<std::string, Class>> names;  // longest first, so E2 wins over E

  ClassParser(const std::string& t, const Surface& surf) : text(t), s(surf) {
    for (size_t i = 0; i < s.basis.size(); ++i)
      names.emplace_back(s.basis[i], unit_class(s.rank(), static_cast<int>(i)));
    if (s.has_ruling) {
      bool have_f = false, have_g = false;
      for (const auto& b : s.basis) {
        if (b == "F") have_f = true;
        if (b == "G") have_g = true;
      }
      if (!have_f) names.emplace_back("F", s.F);
      if (!have_g) names.emplace_back("G", s.G);
    }
    std::sort(names.begin(), names.end(),
              [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) { ++pos; return true; }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("cannot parse class \"" + text + "\": " + why);
  }

  bool peek_digit() {
    skip_ws();
    return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
  }

  mpz_class integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected a number");
    return mpz_class(text.substr(start, pos - start));
  }

  std::optional<Class> name() {
    skip_ws();
    for (const auto& [n, cls] : names) {
      if (text.compare(pos, n.size(), n) == 0) {
        pos += n.size();
        return cls;
      }
    }
    return std::nullopt;
  }

  static Class scaled(Class c, const mpq_class& f) {
    for (auto& x : c) x *= f;
    return c;
  }

  static Class add(Class a, const Class& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  }

  // term := [integer] (name | group) | integer ;  group := '(' expr ')' ['/' integer]
  Class term() {
    skip_ws();
    mpq_class coef = 1;
    bool have_coef = false;
    if (peek_digit()) {
      coef = integer();
      have_coef = true;
    }
    if (eat('(')) {
      Class inner = expr();
      if (!eat(')')) fail("missing ')'");
      if (eat('/')) {
        mpz_class den = integer();
        if (den == 0) fail("division by zero");
        coef /= den;
      }
      return scaled(std::move(inner), coef);
    }
    if (auto n = name()) {
      skip_ws();
      if (pos < text.size() && text[pos] == '/')
        fail("division applies only to a parenthesized group");
      return scaled(std::move(*n), coef);
    }
    if (have_coef) {
      if (coef != 0) fail("a bare number other than 0 is not a divisor class");
      return Class(static_cast<size_t>(s.rank()), 0);
    }
    fail("expected a coefficient, class name, or '('");
  }

  Class expr() {
    skip_ws();
    int sign = 1;
    if (eat('-')) sign = -1;
    else eat('+');
    Class acc = scaled(term(), sign);
    for (;;) {
      skip_ws();
      if (eat('+')) acc = add(std::move(acc), term());
      else if (eat('-')) acc = add(std::move(acc), scaled(term(), -1));
      else break;
    }
    return acc;
  }

  Class parse() {
    Class c = expr();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return c;
  }
};

}  // namespace

Class parse_class(const std::string& expr, const Surface& s) {
  return ClassParser(expr, s).parse();
}

std::string class_str(const Surface& s, const Class& a) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    mpq_class v = a[i];
    if (first) {
      if (v < 0) { os << '-'; v = -v; }
      first = false;
    } else {
      os << (v < 0 ? '-' : '+');
      if (v < 0) v = -v;
    }
    if (v != 1) {
      if (v.get_den() != 1) os << '(' << v.get_str() << ')';
      else os << v.get_str();
    }
    os << s.basis[i];
  }
  if (first) os << '0';
  return os.str();
}

std::string class_str(const Surface& s, const IntClass& a) { return class_str(s, to_class(a)); }

PolSpec fiber_limit_chain(const Surface& s) {
  if (!s.has_ruling) throw std::invalid_argument("surface has no ruling");
  PolSpec p;
  p.chain = {s.F, s.G};
  if (s.rank() == 3 && s.last_exceptional >= 0)
    p.chain.push_back(unit_class(s.rank(), s.last_exceptional, -1));
  return p;
}

PolSpec parse_polspec(const std::string& spec, const Surface& s) {
  if (spec == "F+") return fiber_limit_chain(s);
  if (spec == "G+") {
    if (!s.has_ruling) throw std::invalid_argument("surface has no ruling");
    PolSpec p;
    p.chain = {s.G, s.F};
    if (s.rank() == 3 && s.last_exceptional >= 0)
      p.chain.push_back(unit_class(s.rank(), s.last_exceptional, -1));
    return p;
  }
  PolSpec p;
  std::string cur;
  std::istringstream in(spec);
  while (std::getline(in, cur, ','))
    if (!cur.empty()) p.chain.push_back(parse_class(cur, s));
  if (p.chain.empty()) throw std::invalid_argument("empty polarization spec");
  return p;
}

std::string polspec_str(const Surface& s, const PolSpec& p) {
  std::string out;
  for (size_t i = 0; i < p.chain.size(); ++i) {
    if (i) out += ',';
    out += class_str(s, p.chain[i]);
  }
  return out;
}

int lex_sign(const Surface& s, const IntClass& xi, const PolSpec& p) {
  for (const auto& c : p.chain) {
    mpq_class v = pair_mixed(s, xi, c);
    if (v > 0) return 1;
    if (v < 0) return -1;
  }
  return 0;
}

bool in_positive_chamber(const Surface& s, const Class& p) {
  if (pair_q(s, p, p) <= 0) return false;
  for (const auto& t : positivity_tests(s))
    if (pair_q(s, p, t) <= 0) return false;
  return true;
}

namespace {

using CandidateSink = std::set<IntClass>;

// All rank-2 base classes with 1 <= -norm <= bound, emitted padded to `rank`
// coordinates with exceptional coefficient c at index e_pad (use e_pad = -1
// for plain rank-2 surfaces).  Complete: both shapes admit finitely many.
void gen_rank2_norm(LatticeKind base, i64 bound, int rank, int e_pad, i64 c, CandidateSink& out) {
  if (bound < 1) return;
  auto emit2 = [&](i64 x, i64 y) {
    IntClass xi(static_cast<size_t>(rank), 0);
    xi[0] = x;
    xi[1] = y;
    if (e_pad >= 0) xi[static_cast<size_t>(e_pad)] = c;
    out.insert(std::move(xi));
  };
  if (base == LatticeKind::hyperbolic) {
    for (i64 a = 1; 2 * a <= bound; ++a)
      for (i64 b = 1; 2 * a * b <= bound; ++b) {
        emit2(a, -b);
        emit2(-a, b);
      }
  } else {
    for (i64 m = 1; m <= bound; ++m)
      for (i64 a = 1; a <= m; ++a) {
        if (m % a != 0) continue;
        i64 b = m / a;
        if ((a + b) % 2 != 0) continue;
        i64 x = (b - a) / 2, y = (a + b) / 2;
        emit2(x, y);
        emit2(-x, -y);
      }
  }
}

// Coordinate box from the Cauchy-Schwarz bound: every class xi with
// -xi^2 <= dmax orthogonal to some Q on the segment [P1,P2] (inside the
// positive cone) satisfies <xi,v>^2 <= dmax * (<v,Q>^2/Q^2 - v^2), and the
// dual basis vectors turn that into per-coordinate bounds.
std::vector<i64> cs_box(const Surface& s, const Class& p1, const Class& p2, i64 dmax) {
  mpq_class q11 = pair_q(s, p1, p1), q22 = pair_q(s, p2, p2), q12 = pair_q(s, p1, p2);
  if (q11 <= 0 || q22 <= 0)
    throw std::invalid_argument("wall enumeration needs polarizations of positive self-intersection");
  mpq_class qmin = std::min(q11, q22);
  mpq_class a = q11 + q22 - 2 * q12;
  if (a != 0) {
    mpq_class tstar = (q11 - q12) / a;
    if (tstar > 0 && tstar < 1) {
      mpq_class s1 = 1 - tstar;
      qmin = std::min(qmin, mpq_class(q11 * s1 * s1 + 2 * q12 * tstar * s1 + q22 * tstar * tstar));
    }
  }
  if (qmin <= 0)
    throw std::invalid_argument("polarizations do not lie in a common positive cone");
  auto dual = invert_gram(s);
  std::vector<i64> box(static_cast<size_t>(s.rank()));
  for (size_t i = 0; i < box.size(); ++i) {
    mpq_class n1 = pair_q(s, dual[i], p1);
    mpq_class n2 = pair_q(s, dual[i], p2);
    mpq_class num = std::max(mpq_class(n1 * n1), mpq_class(n2 * n2));
    box[i] = sqrt_bound(dmax * (num / qmin - dual[i][i]));
  }
  return box;
}

void gen_box(const std::vector<i64>& box, const Surface& s, i64 dmax, CandidateSink& out) {
  for (i64 b : box)
    if (b < 0) return;  // Cauchy-Schwarz already rules everything out
  const int n = s.rank();
  IntClass xi(static_cast<size_t>(n), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      i64 m = -self_i(s, xi);
      if (m >= 1 && m <= dmax) out.insert(xi);
      return;
    }
    for (i64 v = -box[static_cast<size_t>(i)]; v <= box[static_cast<size_t>(i)]; ++v) {
      xi[static_cast<size_t>(i)] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

// Candidates for a fiber-limit chain against an interior chain on a rank-3
// surface.  Emitted sets are closed under negation, so the caller may use
// either orientation of (from, to).
void gen_boundary_rank3(const Surface& s, const PolSpec& boundary, const PolSpec& interior,
                        i64 dmax, CandidateSink& out) {
  const int n = s.rank();
  const int ei = s.last_exceptional;
  if (n != 3 || ei != 2) throw std::logic_error("gen_boundary_rank3: unexpected shape");
  const LatticeKind base =
      s.kind == LatticeKind::hyperbolic_e ? LatticeKind::hyperbolic : LatticeKind::lorentz2;
  const Class& p_in = interior.chain[0];
  const Class e_cls = unit_class(n, ei);

  // (A1) base part of negative self-intersection.
  for (i64 c = -dmax; c <= dmax; ++c) {
    if (c * c > dmax - 1) continue;
    gen_rank2_norm(base, dmax - c * c, n, ei, c, out);
  }
  // (A2) pure exceptional multiples.
  for (i64 c = 1; c * c <= dmax; ++c) {
    IntClass plus(static_cast<size_t>(n), 0), minus(static_cast<size_t>(n), 0);
    plus[static_cast<size_t>(ei)] = c;
    minus[static_cast<size_t>(ei)] = -c;
    out.insert(plus);
    out.insert(minus);
  }
  // (A3) base part of positive self-intersection, compensated by the
  // exceptional coefficient; bounded through the interior side's pairings.
  mpq_class ep = pair_q(s, e_cls, p_in);
  if (base == LatticeKind::hyperbolic) {
    mpq_class f2 = pair_q(s, unit_class(n, 0), p_in);
    mpq_class g2 = pair_q(s, unit_class(n, 1), p_in);
    mpq_class denom = 4 * f2 * g2 - 2 * ep * ep;
    if (denom <= 0) throw std::invalid_argument("interior polarization fails positivity bounds");
    i64 st_max = mpq_floor_i64(dmax * ep * ep / denom);
    for (i64 a = 1; a <= st_max; ++a)
      for (i64 b = 1; a * b <= st_max; ++b) {
        i64 p = 2 * a * b;
        for (i64 c = isqrt_i64(p) + 1; c * c <= p + dmax; ++c) {
          if (c * c <= p) continue;
          for (int sa : {1, -1})
            for (i64 ce : {c, -c}) {
              IntClass xi{sa * a, sa * b, 0};
              xi[static_cast<size_t>(ei)] = ce;
              out.insert(std::move(xi));
            }
        }
      }
  } else {
    mpq_class X2 = p_in[0], Y2 = abs(p_in[1]), Z2 = abs(p_in[2]);
    mpq_class denom = (X2 - Y2) * (X2 - Y2) - Z2 * Z2;
    if (denom <= 0) throw std::invalid_argument("interior polarization fails positivity bounds");
    i64 xmax = sqrt_bound(dmax * Z2 * Z2 / denom);
    for (i64 x = 1; x <= xmax; ++x)
      for (i64 y = -(x - 1); y <= x - 1; ++y) {
        i64 p = x * x - y * y;
        for (i64 c = isqrt_i64(p) + 1; c * c <= p + dmax; ++c) {
          if (c * c <= p) continue;
          for (int sa : {1, -1})
            for (i64 ce : {c, -c}) {
              IntClass xi{sa * x, sa * y, 0};
              xi[static_cast<size_t>(ei)] = ce;
              out.insert(std::move(xi));
            }
        }
      }
  }
  // (A4) base part on an isotropic ray: both lex conditions are linear in the
  // ray multiple, pinning it to a finite interval.
  std::vector<IntClass> rays;
  if (base == LatticeKind::hyperbolic) rays = {{1, 0, 0}, {0, 1, 0}};
  else rays = {{1, 1, 0}, {1, -1, 0}};
  for (const auto& r : rays) {
    for (i64 c = -dmax; c <= dmax; ++c) {
      if (c == 0 || c * c > dmax) continue;
      i64 lo = -kInfWindow, hi = kInfWindow;
      bool empty = false;
      auto constrain = [&](const std::vector<Class>& chain, int want) {
        for (const auto& pc : chain) {
          mpq_class alpha = pair_mixed(s, r, pc);
          mpq_class beta = c * pair_q(s, e_cls, pc);
          if (alpha == 0) {
            if (beta == 0) continue;  // this element never decides
            if ((beta > 0 ? 1 : -1) != want) empty = true;
            return;  // decided independently of the ray multiple
          }
          mpq_class root = -beta / alpha;
          if ((alpha > 0) == (want > 0)) lo = std::max(lo, mpq_floor_i64(root) - 2);
          else hi = std::min(hi, mpq_ceil_i64(root) + 2);
          return;
        }
        empty = true;  // chain pairs to zero identically; no strict sign
      };
      constrain(boundary.chain, -1);
      constrain(interior.chain, +1);
      if (empty) continue;
      if (lo == -kInfWindow || hi == kInfWindow)
        throw std::logic_error("isotropic-ray scan is unbounded for these chains");
      for (i64 j = lo; j <= hi; ++j) {
        if (j == 0) continue;
        IntClass xi{j * r[0], j * r[1], c};
        IntClass neg{-xi[0], -xi[1], -xi[2]};
        out.insert(std::move(xi));
        out.insert(std::move(neg));
      }
    }
  }
}

bool parity_matches(const IntClass& xi, const IntClass& c1) {
  for (size_t i = 0; i < xi.size(); ++i)
    if (((xi[i] - c1[i]) % 2 + 2) % 2 != 0) return false;
  return true;
}

void check_dims(const Surface& s, const IntClass& v, const char* what) {
  if (v.size() != s.basis.size())
    throw std::invalid_argument(std::string(what) + ": wrong coordinate count for " + s.name);
}

void sort_walls(std::vector<Wall>& walls) {
  std::sort(walls.begin(), walls.end(), [](const Wall& a, const Wall& b) {
    if (a.minus_xi_sq != b.minus_xi_sq) return a.minus_xi_sq < b.minus_xi_sq;
    return a.xi < b.xi;
  });
}

}  // namespace

std::vector<Wall> walls_between(const Surface& s, const IntClass& c1, const PolSpec& from,
                                const PolSpec& to, const IntClass& L, i64 d_max, bool on_to) {
  check_dims(s, c1, "c1");
  check_dims(s, L, "L");
  if (from.chain.empty() || to.chain.empty()) throw std::invalid_argument("empty polarization chain");
  if (d_max < 0) throw std::invalid_argument("d_max must be nonnegative");
  std::vector<Wall> walls;
  if (s.kind == LatticeKind::rank1 || d_max == 0) return walls;

  mpq_class fps = pair_q(s, from.chain[0], from.chain[0]);
  mpq_class tps = pair_q(s, to.chain[0], to.chain[0]);

  CandidateSink cand;
  if (s.rank() == 2) {
    gen_rank2_norm(s.kind, d_max, 2, -1, 0, cand);
  } else if (fps > 0 && tps > 0) {
    gen_box(cs_box(s, from.chain[0], to.chain[0], d_max), s, d_max, cand);
  } else if (fps == 0 && tps > 0) {
    gen_boundary_rank3(s, from, to, d_max, cand);
  } else if (tps == 0 && fps > 0) {
    gen_boundary_rank3(s, to, from, d_max, cand);
  } else {
    throw std::invalid_argument("wall sums between two boundary chains are not supported");
  }

  IntClass LmK(L.size());
  for (size_t i = 0; i < L.size(); ++i) LmK[i] = L[i] - s.K[i];
  for (const auto& xi : cand) {
    if (!parity_matches(xi, c1)) continue;
    i64 m = -self_i(s, xi);
    if (m < 1 || m > d_max) continue;
    int lf = lex_sign(s, xi, from);
    int lt = lex_sign(s, xi, to);
    bool in_window = on_to ? (lt == 0 && lf < 0) : (lf < 0 && lt > 0);
    if (!in_window) continue;
    i64 N = pair_i(s, xi, LmK);
    if (m > (N < 0 ? -N : N) + 2) continue;
    walls.push_back(Wall{xi, m, N});
  }
  sort_walls(walls);
  return walls;
}

std::vector<Wall> enumerate_walls(const Surface& s, const IntClass& c1, const PolSpec& from,
                                  const PolSpec& to, const IntClass& L, i64 d_max) {
  return walls_between(s, c1, from, to, L, d_max, false);
}

std::vector<Wall> walls_on(const Surface& s, const IntClass& c1, const PolSpec& H,
                           const IntClass& L, i64 d_max, const std::optional<Class>& approach) {
  check_dims(s, c1, "c1");
  check_dims(s, L, "L");
  if (H.chain.empty()) throw std::invalid_argument("empty polarization chain");
  std::vector<Wall> walls;
  if (s.kind == LatticeKind::rank1 || d_max <= 0) return walls;
  const Class& p = H.chain[0];
  if (pair_q(s, p, p) <= 0)
    throw std::invalid_argument("walls_on needs a polarization of positive self-intersection");

  CandidateSink cand;
  if (s.rank() == 2) gen_rank2_norm(s.kind, d_max, 2, -1, 0, cand);
  else gen_box(cs_box(s, p, p, d_max), s, d_max, cand);

  IntClass LmK(L.size());
  for (size_t i = 0; i < L.size(); ++i) LmK[i] = L[i] - s.K[i];
  std::set<IntClass> seen;
  for (const auto& xi0 : cand) {
    if (!parity_matches(xi0, c1)) continue;
    i64 m = -self_i(s, xi0);
    if (m < 1 || m > d_max) continue;
    if (lex_sign(s, xi0, H) != 0) continue;
    IntClass xi = xi0;
    for (i64 v : xi) {  // canonical +-representative for dedup
      if (v == 0) continue;
      if (v < 0)
        for (auto& w : xi) w = -w;
      break;
    }
    if (!seen.insert(xi).second) continue;
    if (approach) {
      mpq_class a = pair_mixed(s, xi, *approach);
      if (a == 0)
        throw std::invalid_argument("approach direction lies on the wall of " + class_str(s, xi));
      if (a > 0)
        for (auto& w : xi) w = -w;
    }
    walls.push_back(Wall{xi, m, pair_i(s, xi, LmK)});
  }
  sort_walls(walls);
  return walls;
}

}  // namespace kdon
