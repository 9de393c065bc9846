#pragma once

#include <gmpxx.h>

#include <string>

namespace goh {

// Arbitrary-precision integers and rationals (GMP). Arithmetic keeps values
// canonical, but the two-argument mpq_class constructor does not: build
// fractions with make_rational.
using Integer = mpz_class;
using Rational = mpq_class;

// Canonical num/den; throws RangeError on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

// Exact value of a finite double (every finite double is a dyadic rational).
Rational rational_from_double(double value);

std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace goh
