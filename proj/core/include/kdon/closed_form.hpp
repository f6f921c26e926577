#pragma once

#include <string>

#include "kdon/lambda_poly.hpp"

namespace kdon {

// Expand a rational expression in the variable L to an exact power series
// through L^d_max.  Grammar: nonnegative integers, 'L', '+', '-', '*', '/',
// parentheses, and '^' with (possibly negative) integer exponents.  Division
// requires the divisor to have a nonzero constant term.
LambdaPoly closed_form(const std::string& spec, i64 d_max);

}  // namespace kdon
