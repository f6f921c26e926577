#pragma once

#include <vector>

#include "kdon/bi_series.hpp"
#include "kdon/geometry.hpp"
#include "kdon/lambda_poly.hpp"
#include "kdon/modular.hpp"

namespace kdon {

// One wall's polynomial contribution to a crossing sum.
struct WallContribution {
  Wall wall;
  LambdaPoly delta;
};

// q-exact strand whose q^0 part is the wall contribution: the symmetrized
// crossing term i^{<xi,K>} q^{-xi^2} (y^N -+ y^{-N}) thetatilde4(h)^{(L-K)^2}
// theta4^sigma u' h* Lambda^2, assembled from cached context blocks.
BiSeries delta_bar_series(const ContextPtr& ctx, const Surface& s, const IntClass& xi,
                          const IntClass& L);

// Wall polynomial through Lambda^d_max, computed along two routes (the
// symmetrized strand above and the average of the two one-sided crossing
// terms) which must agree exactly.
LambdaPoly delta(const ContextPtr& ctx, const Surface& s, const IntClass& xi, const IntClass& L,
                 i64 d_max);

// Sum of wall polynomials over every wall strictly between the two chains,
// plus half of each wall the `to` chain lies on.  `jobs` = 0 uses all cores.
LambdaPoly wall_sum(const ContextPtr& ctx, const Surface& s, const IntClass& c1,
                    const IntClass& L, const PolSpec& from, const PolSpec& to, i64 d_max,
                    int jobs = 0);

}  // namespace kdon
