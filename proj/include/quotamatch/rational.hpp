#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <string_view>

namespace quotamatch {

/// Exact rational; always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "12", "-0.5", "3.25", ".5" or "p/q".  Throws ValueError otherwise.
Rational parse_rational(std::string_view text);

/// Finite decimal when the denominator is of the form 2^a 5^b, "p/q"
/// otherwise.  parse_rational(to_string_exact(q)) == q for every q, and
/// canonical decimal strings round-trip byte for byte.
std::string to_string_exact(const Rational& q);

bool is_integer(const Rational& q);

}  // namespace quotamatch
