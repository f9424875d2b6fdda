#pragma once

// Exact rational numbers backed by GMP.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace carkit {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "n/d", "n", or a decimal literal such as "0.75" or "-1.5e-3".
/// Decimal literals are expanded exactly (0.1 becomes 1/10, not the nearest double).
/// Throws CarkitError(InvalidInput) on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "n/d" text; integers are printed without a denominator.
std::string to_string(const Rational& r);

/// Exact value of a double (every finite double is a dyadic rational).
Rational from_double(double x);

inline double to_double(const Rational& r) { return r.get_d(); }

/// Reduces every entry to lowest terms.  GMP arithmetic assumes canonical
/// operands; Rational(n, d) does not reduce.
void canonicalize(RationalVector& v);

Rational sum(const RationalVector& v);

bool is_zero_vector(const RationalVector& v);

}  // namespace carkit
