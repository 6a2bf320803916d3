#pragma once

#include <cstdint>
#include <string>

#include "grasstqft/bigfloat.hpp"
#include "grasstqft/cyclotomic.hpp"
#include "grasstqft/rational.hpp"

namespace grasstqft {

/// Scalar backends for the roots-of-unity sums. Generic evaluators are
/// written once against this interface and instantiated for the exact
/// cyclotomic field and for the MPFR cross-check.

/// Exact arithmetic in Q(zeta_M).
class ExactBackend {
 public:
  using value_type = Cyclotomic;

  explicit ExactBackend(std::uint32_t order) : order_(order) {}

  std::uint32_t order() const { return order_; }
  std::string cache_key() const { return "exact:" + std::to_string(order_); }

  Cyclotomic zero() const { return Cyclotomic::zero(order_); }
  Cyclotomic one() const { return Cyclotomic::one(order_); }
  Cyclotomic from_rational(const Rational& q) const { return Cyclotomic::from_rational(order_, q); }
  /// zeta_N^e; N must divide the working order.
  Cyclotomic root(std::uint32_t n, std::int64_t e) const;
  Cyclotomic two_sin(std::int64_t m, std::uint32_t n) const { return grasstqft::two_sin(m, n, order_); }

 private:
  std::uint32_t order_;
};

/// Complex MPFR arithmetic at a fixed binary precision.
class FloatBackend {
 public:
  using value_type = BigComplex;

  explicit FloatBackend(unsigned precision);

  unsigned precision() const { return precision_; }
  std::string cache_key() const { return "float:" + std::to_string(precision_); }

  BigComplex zero() const { return BigComplex(prec()); }
  BigComplex one() const { return from_rational(Rational(1)); }
  BigComplex from_rational(const Rational& q) const { return {BigFloat(q, prec()), BigFloat(prec())}; }
  BigComplex root(std::uint32_t n, std::int64_t e) const { return BigComplex::unit_root(e, n, prec()); }
  BigComplex two_sin(std::int64_t m, std::uint32_t n) const;

 private:
  mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(precision_); }
  unsigned precision_;
};

}  // namespace grasstqft
