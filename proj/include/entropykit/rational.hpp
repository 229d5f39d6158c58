#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace entropykit {

/// Arbitrary-precision exact rational. Always kept canonical (reduced, positive denominator).
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// Accepts "3", "-3/4", and finite decimals such as "0.125" or "1e-6" (converted exactly).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }
double to_double(const Rational& q);

/// q^k for integer k; throws DivisionByZeroError for 0^negative.
Rational pow_int(const Rational& q, long k);

/// Exact n-th root of q >= 0 when it is rational, nullopt otherwise.
std::optional<Rational> exact_root(const Rational& q, unsigned long n);

/// Exact rational with the same value as a finite double.
Rational from_double(double x);

/// Fits in a long (used for exponents and indices).
std::optional<long> to_long(const Rational& q);

}  // namespace entropykit
