#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nsvosa {

using Rational = mpq_class;
using Integer = mpz_class;

// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view s);

// Generalized binomial coefficient C(n, k) for any integer n and k >= 0.
Integer binomial(long n, long k);

}  // namespace nsvosa
