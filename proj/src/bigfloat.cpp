#include "grasstqft/bigfloat.hpp"

#include <algorithm>
#include <vector>

#include "grasstqft/errors.hpp"

namespace grasstqft {

namespace {

mpfr_prec_t joint_precision(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

BigFloat::BigFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const Rational& q, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(long value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::pi(mpfr_prec_t precision) {
  BigFloat out(precision);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::operator-() const {
  BigFloat out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat out(joint_precision(a, b));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat out(joint_precision(a, b));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat out(joint_precision(a, b));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  if (mpfr_zero_p(b.value_)) throw DivisionByZero("BigFloat division by zero");
  BigFloat out(joint_precision(a, b));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::abs() const {
  BigFloat out(precision());
  mpfr_abs(out.value_, value_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::sin() const {
  BigFloat out(precision());
  mpfr_sin(out.value_, value_, MPFR_RNDN);
  return out;
}

BigFloat BigFloat::cos() const {
  BigFloat out(precision());
  mpfr_cos(out.value_, value_, MPFR_RNDN);
  return out;
}

Integer BigFloat::round() const {
  Integer out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDN);
  return out;
}

std::string BigFloat::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return buf.data();
}

BigComplex BigComplex::unit_root(std::int64_t num, std::uint64_t den, mpfr_prec_t precision) {
  const auto d = static_cast<std::int64_t>(den);
  std::int64_t e = ((num % d) + d) % d;
  // Angle 2*pi*e/den in [0, 2pi).
  BigFloat angle = BigFloat::pi(precision) * BigFloat(ratio(2 * e, d), precision);
  BigComplex out(precision);
  mpfr_sin_cos(out.im_.get(), out.re_.get(), angle.get(), MPFR_RNDN);
  return out;
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

BigComplex BigComplex::inverse() const {
  BigFloat norm = re_ * re_ + im_ * im_;
  if (mpfr_zero_p(norm.get())) throw DivisionByZero("BigComplex inverse of zero");
  return {re_ / norm, -im_ / norm};
}

BigComplex BigComplex::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  BigComplex result({1L, precision()}, BigFloat(precision()));
  BigComplex base = *this;
  auto n = static_cast<std::uint64_t>(e);
  while (n != 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n != 0) base *= base;
  }
  return result;
}

FloatApprox make_approx(const BigComplex& z) {
  return FloatApprox{z.real(), z.imag().abs(), static_cast<unsigned>(z.precision())};
}

}  // namespace grasstqft
