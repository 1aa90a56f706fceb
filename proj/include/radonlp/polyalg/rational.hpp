#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace radonlp {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator (GMP canonical form).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n", "-n" or "n/d". Throws std::invalid_argument on bad input or a
/// zero denominator.
Rational parse_rational(std::string_view text);

/// Exact "num/den" form, used in every machine-readable report.
std::string to_fraction_string(const Rational& q);

/// Compact form: "3" for integers, "3/4" otherwise.
std::string to_string(const Rational& q);

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

double to_double(const Rational& q);

Rational pow(const Rational& base, unsigned exponent);

}  // namespace radonlp
