// Exact scalar arithmetic.  All computation in this project is over Z or Q;
// there is deliberately no floating point anywhere in the math paths.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace chowcalc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Int& v) { return v.str(); }

// "num" or "num/den"
std::string rat_to_string(const Rat& v);
Int int_from_string(const std::string& s);   // throws ParseError
Rat rat_from_string(const std::string& s);   // throws ParseError

Int factorial(unsigned n);
Int binomial(unsigned n, unsigned k);

}  // namespace chowcalc
