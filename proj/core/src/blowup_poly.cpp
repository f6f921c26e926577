#include "kdon/blowup_poly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "kdon/bi_series.hpp"

namespace kdon {

void Poly2::add_term(const Key& k, const mpq_class& c) {
  auto it = t_.find(k);
  if (it == t_.end()) {
    if (c != 0) t_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second == 0) t_.erase(it);
}

Poly2 Poly2::term(const mpq_class& c, i64 dx, i64 dl) {
  Poly2 p;
  p.add_term({dx, dl}, c);
  return p;
}

mpq_class Poly2::coeff(i64 dx, i64 dl) const {
  auto it = t_.find({dx, dl});
  return it == t_.end() ? mpq_class(0) : it->second;
}

Poly2 Poly2::operator-() const {
  Poly2 r;
  for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
  return r;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
  Poly2 r = a;
  for (const auto& [k, c] : b.t_) r.add_term(k, c);
  return r;
}

Poly2 operator-(const Poly2& a, const Poly2& b) { return a + (-b); }

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  for (const auto& [ka, ca] : a.t_)
    for (const auto& [kb, cb] : b.t_)
      r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
  return r;
}

Poly2 Poly2::divide_exact(const Poly2& a, const Poly2& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  Poly2 q;
  Poly2 rem = a;
  for (int guard = 0; !rem.is_zero(); ++guard) {
    if (guard > 1000000) throw std::logic_error("polynomial division does not terminate");
    auto lr = rem.t_.rbegin();
    auto lb = b.t_.rbegin();
    i64 dx = lr->first.first - lb->first.first;
    i64 dl = lr->first.second - lb->first.second;
    if (dx < 0 || dl < 0)
      throw std::logic_error("polynomial division left a remainder: " + rem.str());
    mpq_class c = lr->second / lb->second;
    Poly2 t = term(c, dx, dl);
    q = q + t;
    rem = rem - t * b;
  }
  return q;
}

std::string Poly2::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    mpq_class c = it->second;
    if (first) {
      if (c < 0) {
        os << '-';
        c = -c;
      }
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    const auto& [dx, dl] = it->first;
    bool unit = c == 1 && (dx || dl);
    if (!unit) os << c.get_str();
    if (dx) {
      if (!unit) os << '*';
      os << 'x';
      if (dx > 1) os << '^' << dx;
    }
    if (dl) {
      if (dx || !unit) os << '*';
      os << 'l';
      if (dl > 1) os << '^' << dl;
    }
  }
  return os.str();
}

namespace {

// Tables of R_n and S_n for n >= 0, grown on demand.
std::mutex table_mutex;
std::vector<Poly2> r_table;
std::vector<Poly2> s_table;

void grow_tables(i64 n) {
  if (r_table.empty()) {
    Poly2 one = Poly2::term(1, 0, 0);
    Poly2 l = Poly2::term(1, 0, 1);
    Poly2 lx = Poly2::term(1, 1, 1);
    r_table = {one, one};
    s_table = {Poly2(), l, lx};
  }
  // The recursions are interlocking: R_{m+1} consumes S_m and S_{m+1}
  // consumes R_{m+1}'s predecessor, so the tables must grow in lockstep
  // (S stays one level ahead thanks to the seeded S_2).
  Poly2 l2 = Poly2::term(1, 0, 2);
  while (static_cast<i64>(r_table.size()) <= n) {
    i64 m = static_cast<i64>(r_table.size()) - 1;  // have R_0..R_m, S_0..S_{m+1}
    r_table.push_back(
        Poly2::divide_exact(r_table[m] * r_table[m] - l2 * s_table[m] * s_table[m], r_table[m - 1]));
    if (static_cast<i64>(s_table.size()) <= n) {
      i64 k = static_cast<i64>(s_table.size()) - 1;  // = m + 1, needs R_{m+1} from just above
      s_table.push_back(
          Poly2::divide_exact(s_table[k] * s_table[k] - l2 * r_table[k] * r_table[k], s_table[k - 1]));
    }
  }
}

}  // namespace

BlowupPoly blowup_poly(i64 n) {
  i64 a = n < 0 ? -n : n;
  std::lock_guard<std::mutex> lock(table_mutex);
  grow_tables(a < 2 ? 2 : a);
  return BlowupPoly{n, r_table[a], s_table[a]};
}

IdentityReport verify_blowup_identity(const ContextPtr& ctx, i64 n, i64 lambda_max) {
  IdentityReport rep;
  i64 a = n < 0 ? -n : n;
  if (a == 0) return rep;
  BlowupPoly bp = blowup_poly(a);
  const i64 D = ctx->D();
  if (lambda_max > D) lambda_max = D;

  i64 max_dx = 0;
  for (const auto& [k, c] : bp.R.terms()) max_dx = std::max(max_dx, k.first);
  for (const auto& [k, c] : bp.S.terms()) max_dx = std::max(max_dx, k.first);
  std::vector<BiSeries> mpow;
  mpow.push_back(BiSeries::monomial(GaussianRational(1), 0, 0, D));
  for (i64 k = 1; k <= max_dx; ++k) mpow.push_back(mpow.back() * ctx->M());

  auto subst = [&](const Poly2& p) {
    BiSeries acc = BiSeries::zero(D);
    for (const auto& [k, c] : p.terms())
      acc += mpow[static_cast<size_t>(k.first)].shift_lambda(k.second).scaled(GaussianRational(c));
    return acc;
  };

  auto compare = [&](const BiSeries& got, const BiSeries& want, const std::string& label) {
    for (i64 d = 0; d <= lambda_max && rep.ok; ++d) {
      const QLaurent& rg = got.row(d);
      const QLaurent& rw = want.row(d);
      if (rg.exact_zero() && rw.exact_zero()) continue;
      i64 lo = std::min(rg.stored_begin(), rw.stored_begin());
      i64 hi = std::min(std::min(rg.max_valid(), rw.max_valid()),
                        std::max(rg.stored_end(), rw.stored_end()) - 1);
      for (i64 k = lo; k <= hi; ++k) {
        if (rg.coeff(k) == rw.coeff(k)) continue;
        rep.ok = false;
        rep.detail = label + " at L^" + std::to_string(d) + " q^" + std::to_string(k) +
                     ": expected " + rw.coeff(k).str() + ", got " + rg.coeff(k).str();
        break;
      }
    }
  };

  const BiSeries& t4pow = ctx->power_of_theta4h(a * a);
  compare(subst(bp.R) * t4pow, ctx->theta_of_h(ThetaKind::tilde4, a), "R_" + std::to_string(a));
  if (rep.ok)
    compare(subst(bp.S) * t4pow, ctx->theta_of_h(ThetaKind::tilde1, a), "S_" + std::to_string(a));
  return rep;
}

}  // namespace kdon
