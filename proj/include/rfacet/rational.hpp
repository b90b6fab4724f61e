#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rfacet {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

// Always "p/q", including "0/1" and "1/1", so printed values compare as strings.
std::string to_fraction_string(const Rational& r);

// Accepts "p/q" or an integer "p".
Rational parse_fraction(std::string_view text);

double to_double(const Rational& r);

BigInt factorial(unsigned n);

}  // namespace rfacet
