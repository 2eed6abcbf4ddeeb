#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bsat {

/// Exact rational scalar. gmp keeps it canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" with optional leading sign. Rejects decimals, exponents
/// and zero denominators with std::invalid_argument.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms. mpq_class(num, den) alone does not reduce.
Rational ratio(long num, long den);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

Integer binomial(long n, long k);

} // namespace bsat
