#include "grasstqft/rational.hpp"

#include <cctype>

#include "grasstqft/errors.hpp"

namespace grasstqft {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
    throw ParseError("malformed rational '" + std::string(text) + "'", 0);
  }
  Rational q;
  q.get_num() = Integer(std::string(num));
  q.get_den() = den.empty() ? Integer(1) : Integer(std::string(den));
  if (q.get_den() == 0) throw DivisionByZero("rational with zero denominator: " + std::string(text));
  if (text.front() == '-') q.get_num() = -q.get_num();
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

Integer binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Integer require_integer(const Rational& q, std::string_view context) {
  if (q.get_den() != 1) {
    throw InternalError(std::string(context) + ": expected an integer, got " + q.get_str());
  }
  return q.get_num();
}

}  // namespace grasstqft
