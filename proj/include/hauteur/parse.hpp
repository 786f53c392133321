#pragma once

#include <string>

#include "hauteur/family.hpp"
#include "hauteur/polynomial.hpp"
#include "hauteur/rational.hpp"

namespace hauteur {

// input grammar, left associative throughout:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' integer)*
//   atom   := integer | 't' | 'z' | '(' expr ')'
// rationals are written as quotients; exponents are literal non-negative
// integers; z may not appear in P, in a denominator, or in an exponent

DynPair parse_dynpair(const std::string& f_src, const std::string& P_src);

// expression over t only
RatFunc parse_ratfunc(const std::string& src);

// constant expression
Rational parse_rational(const std::string& src);

// output re-parses to the same value under the grammar above
std::string pretty_ratfunc(const RatFunc& r);
std::string pretty_f(const DynPair& fp);

}  // namespace hauteur
