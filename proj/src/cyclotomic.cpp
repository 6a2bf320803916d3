#include "grasstqft/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "grasstqft/errors.hpp"

namespace grasstqft {

namespace {

// Exact division of integer polynomials by a monic divisor.
IntPoly divide_monic(IntPoly dividend, const IntPoly& divisor) {
  const std::size_t dd = divisor.size() - 1;
  if (dividend.size() < divisor.size()) return {Integer(0)};
  IntPoly quotient(dividend.size() - dd);
  for (std::size_t i = dividend.size(); i-- > dd;) {
    Integer c = dividend[i];
    quotient[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) dividend[i - dd + j] -= c * divisor[j];
  }
  for (std::size_t j = 0; j < dd; ++j) {
    if (dividend[j] != 0) throw InternalError("cyclotomic division left a remainder");
  }
  return quotient;
}

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// (quotient, remainder) of a / b over Q; b nonzero and trimmed.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - b.size() + 1);
  const Rational& lead = b.back();
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (a[i] == 0) continue;
    Rational c = a[i] / lead;
    q[i - b.size() + 1] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

std::uint32_t lcm32(std::uint32_t a, std::uint32_t b) { return std::lcm(a, b); }

}  // namespace

IntPoly cyclotomic_polynomial(std::uint32_t m) {
  if (m == 0) throw DomainError("cyclotomic_polynomial: order must be >= 1");
  static std::mutex mu;
  static std::map<std::uint32_t, IntPoly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  IntPoly p(m + 1);
  p[0] = -1;
  p[m] = 1;
  for (std::uint32_t d = 1; d < m; ++d) {
    if (m % d == 0) p = divide_monic(std::move(p), cyclotomic_polynomial(d));
  }
  std::lock_guard lock(mu);
  cache.emplace(m, p);
  return p;
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(std::uint32_t order) {
  if (order == 0) throw DomainError("cyclotomic field order must be >= 1");
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const CyclotomicField>> fields;
  {
    std::lock_guard lock(mu);
    if (auto it = fields.find(order); it != fields.end()) return it->second;
  }
  auto field = std::make_shared<const CyclotomicField>(order);
  std::lock_guard lock(mu);
  return fields.emplace(order, std::move(field)).first->second;
}

CyclotomicField::CyclotomicField(std::uint32_t order)
    : order_(order), modulus_(cyclotomic_polynomial(order)) {
  const std::size_t deg = degree();
  for (std::size_t j = 0; j < deg; ++j) {
    if (modulus_[j] != 0) support_.push_back(j);
  }
  powers_.reserve(order);
  std::vector<Integer> current(deg);
  current[0] = 1;
  for (std::uint32_t j = 0; j < order; ++j) {
    powers_.push_back(current);
    // multiply by x: shift up, fold the overflow coefficient back via Phi.
    Integer top = current[deg - 1];
    for (std::size_t i = deg - 1; i > 0; --i) current[i] = current[i - 1];
    current[0] = 0;
    if (top != 0) {
      for (std::size_t s : support_) current[s] -= top * modulus_[s];
    }
  }
}

void CyclotomicField::reduce(std::vector<Integer>& poly) const {
  const std::size_t deg = degree();
  for (std::size_t i = poly.size(); i-- > deg;) {
    if (poly[i] == 0) continue;
    const Integer c = poly[i];
    for (std::size_t s : support_) {
      mpz_submul(poly[i - deg + s].get_mpz_t(), c.get_mpz_t(), modulus_[s].get_mpz_t());
    }
    poly[i] = 0;
  }
  poly.resize(deg);
}

Cyclotomic::Cyclotomic() : Cyclotomic(CyclotomicField::get(1), {Integer(0)}, Integer(1)) {}

Cyclotomic::Cyclotomic(std::shared_ptr<const CyclotomicField> field, std::vector<Integer> num, Integer den)
    : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void Cyclotomic::normalize() {
  if (den_ == 0) throw DivisionByZero("cyclotomic element with zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  Integer g = den_;
  bool any = false;
  for (const auto& c : num_) {
    if (c == 0) continue;
    any = true;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (!any) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

Cyclotomic Cyclotomic::zero(std::uint32_t order) {
  auto field = CyclotomicField::get(order);
  std::vector<Integer> num(field->degree());
  return Cyclotomic(std::move(field), std::move(num), Integer(1));
}

Cyclotomic Cyclotomic::one(std::uint32_t order) { return from_rational(order, Rational(1)); }

Cyclotomic Cyclotomic::from_rational(std::uint32_t order, const Rational& q) {
  auto field = CyclotomicField::get(order);
  std::vector<Integer> num(field->degree());
  num[0] = q.get_num();
  return Cyclotomic(std::move(field), std::move(num), q.get_den());
}

Cyclotomic Cyclotomic::root_of_unity(std::uint32_t order, std::int64_t e) {
  auto field = CyclotomicField::get(order);
  const auto m = static_cast<std::int64_t>(order);
  auto j = static_cast<std::uint32_t>(((e % m) + m) % m);
  std::vector<Integer> num = field->power(j);
  return Cyclotomic(std::move(field), std::move(num), Integer(1));
}

Cyclotomic Cyclotomic::from_coeffs(std::uint32_t order, const std::vector<Rational>& coeffs) {
  auto field = CyclotomicField::get(order);
  if (coeffs.size() != field->degree()) {
    throw DomainError("Cyclotomic::from_coeffs: expected " + std::to_string(field->degree()) +
                      " coefficients for order " + std::to_string(order) + ", got " +
                      std::to_string(coeffs.size()));
  }
  return from_powers(order, coeffs);
}

Cyclotomic Cyclotomic::from_powers(std::uint32_t order, const std::vector<Rational>& values) {
  auto field = CyclotomicField::get(order);
  Integer den = 1;
  for (const auto& v : values) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Integer> num(std::max(values.size(), field->degree()));
  for (std::size_t j = 0; j < values.size(); ++j) {
    num[j] = values[j].get_num() * (den / values[j].get_den());
  }
  field->reduce(num);
  return Cyclotomic(std::move(field), std::move(num), std::move(den));
}

std::vector<Rational> Cyclotomic::coeffs() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (std::size_t j = 0; j < num_.size(); ++j) out.push_back(coeff(j));
  return out;
}

Rational Cyclotomic::coeff(std::size_t j) const {
  Rational q(num_[j], den_);
  q.canonicalize();
  return q;
}

bool Cyclotomic::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const Integer& c) { return c == 0; });
}

bool Cyclotomic::is_rational() const {
  return std::all_of(num_.begin() + 1, num_.end(), [](const Integer& c) { return c == 0; });
}

Cyclotomic Cyclotomic::lift(std::uint32_t new_order) const {
  if (new_order % order() != 0) {
    throw OrderMismatch("cannot lift Q(zeta_" + std::to_string(order()) + ") into Q(zeta_" +
                        std::to_string(new_order) + ")");
  }
  if (new_order == order()) return *this;
  auto target = CyclotomicField::get(new_order);
  const std::uint32_t step = new_order / order();
  std::vector<Integer> num(target->degree());
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] == 0) continue;
    const auto& p = target->power(static_cast<std::uint32_t>(j * step));
    for (std::size_t i = 0; i < num.size(); ++i) {
      if (p[i] != 0) mpz_addmul(num[i].get_mpz_t(), num_[j].get_mpz_t(), p[i].get_mpz_t());
    }
  }
  return Cyclotomic(std::move(target), std::move(num), den_);
}

void Cyclotomic::require_same_order(const Cyclotomic& w, const char* op) const {
  if (field_ != w.field_ && order() != w.order()) {
    throw OrderMismatch(std::string("cyclotomic ") + op + ": orders " + std::to_string(order()) + " and " +
                        std::to_string(w.order()) + " differ (lift explicitly)");
  }
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.num_) c = -c;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& w) {
  require_same_order(w, "add");
  if (den_ == w.den_) {
    for (std::size_t j = 0; j < num_.size(); ++j) num_[j] += w.num_[j];
  } else {
    for (std::size_t j = 0; j < num_.size(); ++j) {
      num_[j] *= w.den_;
      mpz_addmul(num_[j].get_mpz_t(), w.num_[j].get_mpz_t(), den_.get_mpz_t());
    }
    den_ *= w.den_;
  }
  normalize();
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& w) { return *this += -w; }

Cyclotomic operator*(const Cyclotomic& z, const Cyclotomic& w) {
  z.require_same_order(w, "mul");
  const std::size_t deg = z.num_.size();
  std::vector<Integer> prod(2 * deg - 1);
  for (std::size_t i = 0; i < deg; ++i) {
    if (z.num_[i] == 0) continue;
    for (std::size_t j = 0; j < deg; ++j) {
      if (w.num_[j] == 0) continue;
      mpz_addmul(prod[i + j].get_mpz_t(), z.num_[i].get_mpz_t(), w.num_[j].get_mpz_t());
    }
  }
  z.field_->reduce(prod);
  return Cyclotomic(z.field_, std::move(prod), z.den_ * w.den_);
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& w) { return *this = *this * w; }

Cyclotomic& Cyclotomic::operator*=(const Rational& q) {
  for (auto& c : num_) c *= q.get_num();
  den_ *= q.get_den();
  normalize();
  return *this;
}

bool operator==(const Cyclotomic& z, const Cyclotomic& w) {
  if (z.order() != w.order()) {
    const std::uint32_t common = lcm32(z.order(), w.order());
    return z.lift(common) == w.lift(common);
  }
  return z.den_ == w.den_ && z.num_ == w.num_;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic element");
  QPoly a(num_.size());
  for (std::size_t j = 0; j < num_.size(); ++j) a[j] = Rational(num_[j]);
  trim(a);
  QPoly m(field_->modulus().begin(), field_->modulus().end());
  // Invariant: s_i * a == r_i (mod Phi).
  QPoly r0 = m, r1 = a;
  QPoly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, rem] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    QPoly s2 = sub(s0, mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw InternalError("cyclotomic modulus is not irreducible");
  }
  const Rational c = r1[0];
  std::vector<Rational> values(s1.size());
  for (std::size_t j = 0; j < s1.size(); ++j) values[j] = s1[j] / c;
  // The numerator vector held the element times den_; undo that scaling.
  Cyclotomic out = from_powers(order(), values);
  out *= Rational(den_);
  return out;
}

Cyclotomic Cyclotomic::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclotomic result = one(order());
  Cyclotomic base = *this;
  auto n = static_cast<std::uint64_t>(e);
  while (n != 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n != 0) base *= base;
  }
  return result;
}

Rational Cyclotomic::to_rational() const {
  if (!is_rational()) {
    throw NonRationalError("cyclotomic element of order " + std::to_string(order()) +
                               " is not rational: " + to_string(),
                           coeffs());
  }
  return coeff(0);
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] == 0) continue;
    Rational c = coeff(j);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational mag = abs(c);
    if (j == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "z" << order();
      if (j > 1) os << "^" << j;
    }
  }
  if (first) os << "0";
  return os.str();
}

Cyclotomic two_sin(std::int64_t m, std::uint32_t n, std::uint32_t order) {
  if (n == 0) throw DomainError("two_sin: N must be positive");
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t mr = ((m % nn) + nn) % nn;
  if (mr == 0) throw DomainError("two_sin: m = " + std::to_string(m) + " is divisible by N = " + std::to_string(n));
  if (order % (4 * n) != 0) {
    throw DomainError("two_sin: order " + std::to_string(order) + " is not a multiple of 4N = " +
                      std::to_string(4 * n));
  }
  // |2 sin(pi m/N)| = -i (zeta_2N^m' - zeta_2N^-m') with m' in (0, N).
  const std::int64_t step = order / (2 * n);
  Cyclotomic minus_i = Cyclotomic::root_of_unity(order, 3 * static_cast<std::int64_t>(order) / 4);
  return minus_i * (Cyclotomic::root_of_unity(order, mr * step) - Cyclotomic::root_of_unity(order, -mr * step));
}

FloatApprox approx(const Cyclotomic& z, unsigned precision) {
  if (precision < 64) throw DomainError("approx: precision must be at least 64 bits");
  const auto prec = static_cast<mpfr_prec_t>(precision);
  BigComplex sum(prec);
  const auto coeffs = z.coeffs();
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    BigComplex root = BigComplex::unit_root(static_cast<std::int64_t>(j), z.order(), prec);
    BigFloat c(coeffs[j], prec);
    sum += BigComplex(root.real() * c, root.imag() * c);
  }
  return make_approx(sum);
}

}  // namespace grasstqft
