#include "grasstqft/sympoly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

#include "grasstqft/backend.hpp"
#include "grasstqft/errors.hpp"

namespace grasstqft {

namespace {

int total(const SymPoly::Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

void require_vars(int r) {
  if (r < 0) throw DomainError("number of variables must be nonnegative");
}

// All exponent vectors of length r summing to `degree`, recursive fill.
void compositions(int r, int degree, SymPoly::Exponents& cur, int pos, const std::function<void()>& emit);

}  // namespace

bool SymPoly::GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total(a), db = total(b);
  if (da != db) return da < db;
  return a < b;
}

SymPoly SymPoly::constant(int nvars, const Rational& c) {
  SymPoly p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

SymPoly SymPoly::variable(int nvars, int index) {
  if (index < 1 || index > nvars) {
    throw DomainError("variable x" + std::to_string(index) + " out of range for " + std::to_string(nvars) + " variables");
  }
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(index - 1)] = 1;
  return monomial(std::move(e), Rational(1));
}

SymPoly SymPoly::monomial(Exponents exponents, const Rational& c) {
  SymPoly p(static_cast<int>(exponents.size()));
  p.add_term(exponents, c);
  return p;
}

int SymPoly::degree() const {
  if (terms_.empty()) return -1;
  return total(terms_.rbegin()->first);
}

bool SymPoly::is_homogeneous(int deg) const {
  for (const auto& [mono, c] : terms_) {
    if (total(mono) != deg) return false;
  }
  return true;
}

Rational SymPoly::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SymPoly::add_term(const Exponents& exponents, const Rational& c) {
  if (static_cast<int>(exponents.size()) != nvars_) throw DomainError("exponent vector has the wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void SymPoly::require_same_vars(const SymPoly& q) const {
  if (nvars_ != q.nvars_) {
    throw DomainError("polynomials in " + std::to_string(nvars_) + " and " + std::to_string(q.nvars_) +
                      " variables cannot be combined");
  }
}

SymPoly SymPoly::operator-() const {
  SymPoly out = *this;
  for (auto& [mono, c] : out.terms_) c = -c;
  return out;
}

SymPoly& SymPoly::operator+=(const SymPoly& q) {
  require_same_vars(q);
  for (const auto& [mono, c] : q.terms_) add_term(mono, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& q) {
  require_same_vars(q);
  for (const auto& [mono, c] : q.terms_) add_term(mono, -c);
  return *this;
}

SymPoly operator*(const SymPoly& p, const SymPoly& q) {
  p.require_same_vars(q);
  SymPoly out(p.nvars_);
  SymPoly::Exponents e(static_cast<std::size_t>(p.nvars_));
  for (const auto& [a, ca] : p.terms_) {
    for (const auto& [b, cb] : q.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] + b[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

SymPoly& SymPoly::operator*=(const SymPoly& q) { return *this = *this * q; }

SymPoly& SymPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coeff] : terms_) coeff *= c;
  return *this;
}

SymPoly SymPoly::pow(unsigned e) const {
  SymPoly result = constant(nvars_, Rational(1));
  SymPoly base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

std::string SymPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [mono, c] = *it;
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) os << (negative ? "-" : "");
    else os << (negative ? " - " : " + ");
    first = false;
    std::ostringstream vars;
    bool any = false;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0) continue;
      vars << (any ? "*" : "") << "x" << (i + 1);
      if (mono[i] > 1) vars << "^" << mono[i];
      any = true;
    }
    if (!any) os << mag.get_str();
    else if (mag == 1) os << vars.str();
    else os << mag.get_str() << "*" << vars.str();
  }
  return os.str();
}

namespace {

void compositions(int r, int degree, SymPoly::Exponents& cur, int pos, const std::function<void()>& emit) {
  if (pos == r - 1) {
    cur[static_cast<std::size_t>(pos)] = degree;
    emit();
    return;
  }
  for (int v = 0; v <= degree; ++v) {
    cur[static_cast<std::size_t>(pos)] = v;
    compositions(r, degree - v, cur, pos + 1, emit);
  }
}

}  // namespace

SymPoly elementary(int i, int r) {
  require_vars(r);
  if (i < 0 || i > r) throw DomainError("elementary: index " + std::to_string(i) + " out of range 0.." + std::to_string(r));
  SymPoly out(r);
  // Exponent vectors with exactly i ones, in lex order of positions.
  std::vector<int> mask(static_cast<std::size_t>(r), 0);
  std::fill(mask.end() - i, mask.end(), 1);
  do {
    out.add_term(mask, Rational(1));
  } while (std::next_permutation(mask.begin(), mask.end()));
  return out;
}

SymPoly elementary_omit(int i, int omit, int r) {
  require_vars(r);
  if (omit < 1 || omit > r) throw DomainError("elementary_omit: variable index out of range");
  if (i < 0 || i > r - 1) throw DomainError("elementary_omit: index " + std::to_string(i) + " out of range");
  SymPoly reduced = elementary(i, r - 1);
  SymPoly out(r);
  for (const auto& [mono, c] : reduced.terms()) {
    SymPoly::Exponents e(static_cast<std::size_t>(r), 0);
    for (int v = 0, src = 0; v < r; ++v) {
      if (v == omit - 1) continue;
      e[static_cast<std::size_t>(v)] = mono[static_cast<std::size_t>(src++)];
    }
    out.add_term(e, c);
  }
  return out;
}

SymPoly complete_homogeneous(int i, int r) {
  require_vars(r);
  if (i < 0) return SymPoly(r);
  if (i == 0) return SymPoly::constant(r, Rational(1));
  SymPoly out(r);
  if (r == 0) return out;
  SymPoly::Exponents cur(static_cast<std::size_t>(r), 0);
  compositions(r, i, cur, 0, [&] { out.add_term(cur, Rational(1)); });
  return out;
}

SymPoly schur_poly(const Partition& lambda, int r) {
  require_vars(r);
  if (lambda.length() > r) {
    throw DomainError("schur_poly: partition " + lambda.to_string() + " has more than " + std::to_string(r) + " rows");
  }
  const int l = lambda.length();
  std::vector<std::vector<SymPoly>> m(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      m[static_cast<std::size_t>(i)].push_back(complete_homogeneous(lambda.row(static_cast<std::size_t>(i)) - i + j, r));
    }
  }
  return determinant(m, SymPoly(r), SymPoly::constant(r, Rational(1)));
}

SymPoly differentiate(const SymPoly& p, int var) {
  if (var < 1 || var > p.nvars()) throw DomainError("differentiate: variable index out of range");
  const auto v = static_cast<std::size_t>(var - 1);
  SymPoly out(p.nvars());
  for (const auto& [mono, c] : p.terms()) {
    if (mono[v] == 0) continue;
    SymPoly::Exponents e = mono;
    --e[v];
    out.add_term(e, c * mono[v]);
  }
  return out;
}

SymPoly apply_Dl(const SymPoly& p, int l, int g, int r, int n) {
  if (l < 2 || l > r) throw DomainError("apply_Dl: l = " + std::to_string(l) + " outside 2.." + std::to_string(r));
  if (p.nvars() != r) throw DomainError("apply_Dl: polynomial must be in r variables");
  const Rational scalar = Rational(g - 1) * (r - l + 1) * (n - r + l - 1);
  SymPoly out = elementary(l - 1, r) * p * scalar;
  for (int k = 1; k <= r; ++k) {
    out += elementary_omit(l - 1, k, r) * SymPoly::variable(r, k) * differentiate(p, k);
  }
  return out;
}

Cyclotomic evaluate(const SymPoly& p, std::span<const Cyclotomic> points) {
  if (static_cast<int>(points.size()) != p.nvars()) throw DomainError("evaluate: expected one point per variable");
  std::uint32_t order = points.empty() ? 1 : points.front().order();
  for (const auto& pt : points) {
    if (pt.order() != order) throw OrderMismatch("evaluate: points live in different cyclotomic fields");
  }
  // Cached powers of each point, extended on demand.
  std::vector<std::vector<Cyclotomic>> powers(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) powers[i].push_back(Cyclotomic::one(order));
  auto power = [&](std::size_t i, int e) -> const Cyclotomic& {
    auto& table = powers[i];
    while (static_cast<int>(table.size()) <= e) table.push_back(table.back() * points[i]);
    return table[static_cast<std::size_t>(e)];
  };
  Cyclotomic out = Cyclotomic::zero(order);
  for (const auto& [mono, c] : p.terms()) {
    Cyclotomic term = Cyclotomic::from_rational(order, c);
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] != 0) term *= power(i, mono[i]);
    }
    out += term;
  }
  return out;
}

namespace {

std::uint32_t common_order(std::span<const Cyclotomic> points) {
  const std::uint32_t order = points.empty() ? 1 : points.front().order();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].order() != order) throw OrderMismatch("points live in different cyclotomic fields");
    for (std::size_t j = 0; j < i; ++j) {
      if (points[i] == points[j]) throw DomainError("Schur evaluation needs pairwise distinct points");
    }
  }
  return order;
}

}  // namespace

Cyclotomic schur_at_roots(const Partition& lambda, std::span<const Cyclotomic> points) {
  const std::uint32_t order = common_order(points);
  if (lambda.length() > static_cast<int>(points.size())) return Cyclotomic::zero(order);
  if (lambda.empty()) return Cyclotomic::one(order);
  const ExactBackend backend(order);
  const auto h = complete_homogeneous_values(points, lambda.row(0) + lambda.length() - 1, backend);
  return jacobi_trudi(lambda, h, backend.zero(), backend.one());
}

Cyclotomic schur_bialternant(const Partition& lambda, std::span<const Cyclotomic> points) {
  const std::uint32_t order = common_order(points);
  const auto r = points.size();
  if (lambda.length() > static_cast<int>(r)) return Cyclotomic::zero(order);
  std::vector<std::vector<Cyclotomic>> num(r), vdm(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const auto shift = static_cast<std::int64_t>(r - 1 - j);
      num[i].push_back(points[i].pow(lambda.row(j) + shift));
      vdm[i].push_back(points[i].pow(shift));
    }
  }
  const auto zero = Cyclotomic::zero(order), one = Cyclotomic::one(order);
  return determinant(num, zero, one) * determinant(vdm, zero, one).inverse();
}

namespace {

constexpr unsigned kMaxExponent = 4096;

class PolyParser {
 public:
  PolyParser(std::string_view text, int r) : text_(text), r_(r) {}

  SymPoly parse() {
    SymPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const { throw ParseError(message, at); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  // Digits only; no sign, no surrounding whitespace.
  Integer digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  int small_int(std::size_t at) {
    Integer v = digits();
    if (v > 1000000) fail_at("integer too large", at);
    return static_cast<int>(v.get_si());
  }

  SymPoly expr() {
    skip_ws();
    // A leading minus is accepted as a convenience: "-x1" reads as "0 - x1".
    SymPoly acc = accept('-') ? -term() : term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  SymPoly term() {
    SymPoly acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  SymPoly factor() {
    SymPoly b = base();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      Integer e = digits();
      if (e > kMaxExponent) fail_at("exponent exceeds " + std::to_string(kMaxExponent), at);
      return b.pow(static_cast<unsigned>(e.get_ui()));
    }
    return b;
  }

  SymPoly base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const std::size_t at = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SymPoly inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return SymPoly::constant(r_, Rational(digits()));
    if (c == 'x') {
      ++pos_;
      const int i = small_int(at);
      if (i < 1 || i > r_) fail_at("variable x" + std::to_string(i) + " outside x1..x" + std::to_string(r_), at);
      return SymPoly::variable(r_, i);
    }
    if (c == 'e' || c == 'a') {
      ++pos_;
      const int i = small_int(at);
      if (i > r_) fail_at(std::string(1, c) + std::to_string(i) + " exceeds the rank " + std::to_string(r_), at);
      return elementary(i, r_);
    }
    if (c == 's') {
      ++pos_;
      if (pos_ >= text_.size() || text_[pos_] != '[') fail("expected '[' after 's'");
      ++pos_;
      std::vector<int> rows;
      if (!accept(']')) {
        do {
          skip_ws();
          rows.push_back(small_int(pos_));
        } while (accept(','));
        expect(']');
      }
      try {
        Partition lambda(rows);
        if (lambda.length() > r_) fail_at("Schur index " + lambda.to_string() + " has more than r rows", at);
        return schur_poly(lambda, r_);
      } catch (const ParseError&) {
        throw;
      } catch (const DomainError& e) {
        fail_at(e.what(), at);
      }
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  int r_;
  std::size_t pos_ = 0;
};

}  // namespace

SymPoly parse_poly(std::string_view text, int r) {
  require_vars(r);
  return PolyParser(text, r).parse();
}

}  // namespace grasstqft
