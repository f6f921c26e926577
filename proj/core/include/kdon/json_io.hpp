#pragma once

#include <string>

#include "kdon/bi_series.hpp"
#include "kdon/geometry.hpp"
#include "kdon/invariants.hpp"
#include "kdon/lambda_poly.hpp"
#include "kdon/verify.hpp"

namespace kdon {

// Series serialization.  Rationals are always "p/q" strings; unbounded
// validity windows are clamped to 10^9 on output and widened back on input,
// so a round trip reproduces the series exactly.
std::string biseries_to_json(const BiSeries& s, int indent = 2);
BiSeries biseries_from_json(const std::string& text);

// Bare coefficient array [{"d":..,"re":"p/q","im":"p/q"},...], ascending d.
std::string lambda_poly_to_json(const LambdaPoly& p, int indent = 2);
LambdaPoly lambda_poly_from_json(const std::string& text);

// Wall contribution: {"xi": <label>, "delta": [{"d":..,"c":"p/q"},...]}.
std::string delta_to_json(const std::string& xi_label, const LambdaPoly& p, int indent = 2);

std::string genfun_to_json(const Surface& s, const GenFun& g, int indent = 2);
std::string report_to_json(const VerifyReport& r, int indent = 2);

// Plain-text renderings used by the table output mode.
std::string lambda_poly_table(const LambdaPoly& p);
std::string biseries_table(const BiSeries& s);
std::string genfun_table(const Surface& s, const GenFun& g);
std::string report_table(const VerifyReport& r);

}  // namespace kdon
