#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace grasstqft {

using Integer = mpz_class;
using Rational = mpq_class;

/// p/q in canonical form; mpq_class(p, q) alone does not cancel common factors.
inline Rational ratio(const Integer& p, const Integer& q) {
  Rational out(p, q);
  out.canonicalize();
  return out;
}

/// Parses "p" or "p/q" (optional leading '-', q > 0) into canonical form.
Rational parse_rational(std::string_view text);

/// Canonical decimal form "p/q", with "/q" omitted when q == 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer binomial(std::uint64_t n, std::uint64_t k);

/// Exact integer value of q; throws InternalError if q has a denominator.
Integer require_integer(const Rational& q, std::string_view context);

}  // namespace grasstqft
