#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "grasstqft/bigfloat.hpp"
#include "grasstqft/rational.hpp"

namespace grasstqft {

/// Integer polynomial, coefficients from the constant term upwards.
using IntPoly = std::vector<Integer>;

/// The m-th cyclotomic polynomial, obtained by dividing x^m - 1 by the
/// product of Phi_d over the proper divisors d of m. Cached per m.
IntPoly cyclotomic_polynomial(std::uint32_t m);

/// Shared, immutable description of Q(zeta_M): the modulus Phi_M and the
/// reductions of x^j for 0 <= j < M. Instances are interned per order;
/// concurrent first use is safe and idempotent.
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> get(std::uint32_t order);

  explicit CyclotomicField(std::uint32_t order);

  std::uint32_t order() const { return order_; }
  std::size_t degree() const { return modulus_.size() - 1; }
  const IntPoly& modulus() const { return modulus_; }
  const std::vector<Integer>& power(std::uint32_t j) const { return powers_[j]; }

  /// Reduces an integer polynomial of any length modulo Phi_M in place;
  /// the result has exactly degree() coefficients.
  void reduce(std::vector<Integer>& poly) const;

 private:
  std::uint32_t order_;
  IntPoly modulus_;
  std::vector<std::size_t> support_;  // indices j < degree() with modulus_[j] != 0
  std::vector<std::vector<Integer>> powers_;
};

/// Exact element of Q(zeta_M), stored canonically modulo Phi_M as an integer
/// numerator vector over a positive common denominator (content coprime to
/// the denominator). Equal field elements have identical representations.
class Cyclotomic {
 public:
  /// Zero in Q(zeta_1) = Q.
  Cyclotomic();

  static Cyclotomic zero(std::uint32_t order);
  static Cyclotomic one(std::uint32_t order);
  static Cyclotomic from_rational(std::uint32_t order, const Rational& q);
  /// zeta_M^(e mod M).
  static Cyclotomic root_of_unity(std::uint32_t order, std::int64_t e);
  /// Canonical coefficients (length phi(M)) in the basis 1, zeta, ..., zeta^(phi-1).
  static Cyclotomic from_coeffs(std::uint32_t order, const std::vector<Rational>& coeffs);
  /// sum_j values[j] zeta^j for an arbitrary-length coefficient list (group-ring form).
  static Cyclotomic from_powers(std::uint32_t order, const std::vector<Rational>& values);

  std::uint32_t order() const { return field_->order(); }
  std::size_t degree() const { return num_.size(); }
  std::vector<Rational> coeffs() const;
  Rational coeff(std::size_t j) const;
  bool is_zero() const;
  bool is_rational() const;

  /// Re-expresses the element in Q(zeta_N) for a multiple N of the order.
  Cyclotomic lift(std::uint32_t new_order) const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& w);
  Cyclotomic& operator-=(const Cyclotomic& w);
  Cyclotomic& operator*=(const Cyclotomic& w);
  Cyclotomic& operator*=(const Rational& q);
  friend Cyclotomic operator+(Cyclotomic z, const Cyclotomic& w) { return z += w; }
  friend Cyclotomic operator-(Cyclotomic z, const Cyclotomic& w) { return z -= w; }
  friend Cyclotomic operator*(const Cyclotomic& z, const Cyclotomic& w);
  friend Cyclotomic operator*(Cyclotomic z, const Rational& q) { return z *= q; }
  friend Cyclotomic operator*(const Rational& q, Cyclotomic z) { return z *= q; }

  /// Equality after lifting both sides to the lcm of their orders.
  friend bool operator==(const Cyclotomic& z, const Cyclotomic& w);

  /// Multiplicative inverse via the extended Euclidean algorithm against Phi_M.
  Cyclotomic inverse() const;
  /// Integer power; negative exponents go through inverse().
  Cyclotomic pow(std::int64_t e) const;

  /// The constant coefficient; throws NonRationalError otherwise.
  Rational to_rational() const;

  std::string to_string() const;

 private:
  Cyclotomic(std::shared_ptr<const CyclotomicField> field, std::vector<Integer> num, Integer den);
  void normalize();
  void require_same_order(const Cyclotomic& w, const char* op) const;

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Integer> num_;
  Integer den_;
};

inline Cyclotomic root_of_unity(std::uint32_t order, std::int64_t e) {
  return Cyclotomic::root_of_unity(order, e);
}

/// |2 sin(pi m / N)| as an element of Q(zeta_M); requires 4N | M and m != 0 mod N.
Cyclotomic two_sin(std::int64_t m, std::uint32_t n, std::uint32_t order);

/// Numeric value at zeta_M = exp(2 pi i / M), computed at `precision` bits.
FloatApprox approx(const Cyclotomic& z, unsigned precision);

}  // namespace grasstqft
