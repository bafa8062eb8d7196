#pragma once
#include <string>

#include "coxlog/ratfunc.hpp"

namespace coxlog {

// Parsers for the canonical text form emitted by the to_string methods
// ("3*x^2*y - 1/2*y^3", "sqrt(5)*x", "(x^3*y)/(x^2 - y^2)").  Accepts any
// +-*/^ expression over rationals, sqrt(<int>), and the given variables, so
// round-tripping does not depend on exact spacing.  Throws coxlog::error on
// malformed input.
RatFunc parse_ratfunc(const VarsPtr& vars, const std::string& text);
MultiPoly parse_poly(const VarsPtr& vars, const std::string& text);

}  // namespace coxlog
