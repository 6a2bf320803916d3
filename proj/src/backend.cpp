#include "grasstqft/backend.hpp"

#include "grasstqft/errors.hpp"

namespace grasstqft {

Cyclotomic ExactBackend::root(std::uint32_t n, std::int64_t e) const {
  if (n == 0 || order_ % n != 0) {
    throw OrderMismatch("zeta_" + std::to_string(n) + " does not live in Q(zeta_" + std::to_string(order_) + ")");
  }
  const auto nn = static_cast<std::int64_t>(n);
  return Cyclotomic::root_of_unity(order_, (((e % nn) + nn) % nn) * (order_ / n));
}

FloatBackend::FloatBackend(unsigned precision) : precision_(precision) {
  if (precision < 64) throw DomainError("float backend requires at least 64 bits of precision");
}

BigComplex FloatBackend::two_sin(std::int64_t m, std::uint32_t n) const {
  const auto nn = static_cast<std::int64_t>(n);
  if (((m % nn) + nn) % nn == 0) throw DomainError("two_sin: m is divisible by N");
  BigFloat angle = BigFloat::pi(prec()) * BigFloat(ratio(m, nn), prec());
  BigFloat value = (angle.sin() * BigFloat(2L, prec())).abs();
  return {value, BigFloat(prec())};
}

}  // namespace grasstqft
