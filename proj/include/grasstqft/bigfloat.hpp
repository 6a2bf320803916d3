#pragma once

#include <cstdint>
#include <string>

#include <mpfr.h>

#include "grasstqft/rational.hpp"

namespace grasstqft {

/// Owning wrapper around an mpfr_t with an explicit binary precision.
/// Binary operations produce a result at the larger operand precision.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision = 128);
  BigFloat(const Rational& q, mpfr_prec_t precision);
  BigFloat(long value, mpfr_prec_t precision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  static BigFloat pi(mpfr_prec_t precision);

  BigFloat operator-() const;
  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
  BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
  BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.value_, b.value_); }

  BigFloat abs() const;
  BigFloat sin() const;
  BigFloat cos() const;
  /// Nearest integer (ties to even).
  Integer round() const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Decimal rendering with the given number of significant digits.
  std::string to_string(int digits = 40) const;

 private:
  mpfr_t value_;
};

/// Complex number over BigFloat, used by the floating cross-check backend.
class BigComplex {
 public:
  explicit BigComplex(mpfr_prec_t precision = 128) : re_(precision), im_(precision) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}

  const BigFloat& real() const { return re_; }
  const BigFloat& imag() const { return im_; }
  mpfr_prec_t precision() const { return re_.precision(); }

  /// exp(2 pi i * num / den).
  static BigComplex unit_root(std::int64_t num, std::uint64_t den, mpfr_prec_t precision);

  BigComplex operator-() const { return {-re_, -im_}; }
  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  BigComplex& operator+=(const BigComplex& b) { return *this = *this + b; }
  BigComplex& operator-=(const BigComplex& b) { return *this = *this - b; }
  BigComplex& operator*=(const BigComplex& b) { return *this = *this * b; }

  BigComplex inverse() const;
  BigComplex pow(std::int64_t e) const;

 private:
  BigFloat re_;
  BigFloat im_;
};

/// Approximate value of an exact quantity: real part, imaginary magnitude,
/// and the mantissa precision both were computed at.
struct FloatApprox {
  BigFloat value;
  BigFloat imag_abs;
  unsigned precision = 128;
};

FloatApprox make_approx(const BigComplex& z);

}  // namespace grasstqft
