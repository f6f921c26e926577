#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kdon/common.hpp"

namespace kdon {

// Divisor classes in the basis of a surface: exact rational or integral
// coordinate vectors.
using Class = std::vector<mpq_class>;
using IntClass = std::vector<i64>;

// Shape of the intersection lattice; drives wall enumeration.
enum class LatticeKind {
  rank1,        // <1> (no walls)
  hyperbolic,   // U = [[0,1],[1,0]]
  lorentz2,     // <1> + <-1>
  hyperbolic_e, // U + <-1>
  lorentz2_e,   // <1> + <-1> + <-1>
};

struct Surface {
  std::string name;
  std::vector<std::string> basis;
  std::vector<std::vector<i64>> gram;
  IntClass K;  // canonical class
  int sigma = 0;
  LatticeKind kind = LatticeKind::rank1;
  bool has_ruling = false;
  Class F, G;  // ruling classes: F the fiber direction, G a section direction
  int last_exceptional = -1;  // basis index of the newest exceptional class

  int rank() const { return static_cast<int>(basis.size()); }
};

Surface surface_p2();
Surface surface_p1xp1();
Surface surface_p2hat();
Surface blowup(const Surface& s);
Surface surface_by_name(const std::string& name);

mpq_class pair_q(const Surface& s, const Class& a, const Class& b);
i64 pair_i(const Surface& s, const IntClass& a, const IntClass& b);
mpq_class pair_mixed(const Surface& s, const IntClass& a, const Class& b);
i64 self_i(const Surface& s, const IntClass& a);

Class to_class(const IntClass& a);
IntClass to_int_class(const Class& a);  // throws if any coordinate is non-integral
bool is_integral(const Class& a);

// Parse expressions like "3H-E", "2F+2G", "(H+E)/2", "0".  Basis names and
// the ruling aliases F/G are accepted; division only applies to a
// parenthesized group, so "G/2" is rejected while "(H+E)/2" is fine.
Class parse_class(const std::string& expr, const Surface& s);
std::string class_str(const Surface& s, const Class& a);
std::string class_str(const Surface& s, const IntClass& a);

// A polarization specification: a primary class plus tie-breakers, compared
// lexicographically.  The shortcuts "F+" and "G+" expand to the fiber-limit
// chains (F,G[,-E_last]) and (G,F[,-E_last]).
struct PolSpec {
  std::vector<Class> chain;
};

PolSpec parse_polspec(const std::string& spec, const Surface& s);
PolSpec fiber_limit_chain(const Surface& s);  // the "F+" chain
std::string polspec_str(const Surface& s, const PolSpec& p);
int lex_sign(const Surface& s, const IntClass& xi, const PolSpec& p);

// True when the class pairs positively with the surface's effective-curve
// test set and has positive self-intersection.
bool in_positive_chamber(const Surface& s, const Class& p);

struct Wall {
  IntClass xi;
  i64 minus_xi_sq = 0;
  i64 N = 0;  // <xi, L-K>
};

// All classes xi = c1 (mod 2) with 1 <= -xi^2 <= d_max that lie strictly
// between the two polarization chains (lex_from < 0 < lex_to) and pass the
// vanishing bound -xi^2 <= |N| + 2.
std::vector<Wall> enumerate_walls(const Surface& s, const IntClass& c1, const PolSpec& from,
                                  const PolSpec& to, const IntClass& L, i64 d_max);

// Variant keeping classes that sit on the `to` chain (lex_to == 0) while
// approaching from the `from` side (lex_from < 0); used for the on-wall
// averaging rule.
std::vector<Wall> walls_between(const Surface& s, const IntClass& c1, const PolSpec& from,
                                const PolSpec& to, const IntClass& L, i64 d_max, bool on_to);

// Classes orthogonal to every element of the chain, one representative per
// +-pair, oriented so that <xi, approach> < 0 when an approach direction is
// given (first nonzero coordinate positive otherwise).
std::vector<Wall> walls_on(const Surface& s, const IntClass& c1, const PolSpec& H,
                           const IntClass& L, i64 d_max,
                           const std::optional<Class>& approach = std::nullopt);

}  // namespace kdon
