#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grasstqft/cyclotomic.hpp"
#include "grasstqft/determinant.hpp"
#include "grasstqft/partition.hpp"
#include "grasstqft/rational.hpp"

namespace grasstqft {

/// Sparse polynomial over Q in the Chern-root variables x1..xr.
/// Variable indices in this API are 1-based, matching the names x1..xr.
class SymPoly {
 public:
  using Exponents = std::vector<int>;

  /// Graded lex: total degree first, then lexicographic on exponents.
  struct GradedLex {
    bool operator()(const Exponents& a, const Exponents& b) const;
  };
  using TermMap = std::map<Exponents, Rational, GradedLex>;

  explicit SymPoly(int nvars = 0) : nvars_(nvars) {}

  static SymPoly constant(int nvars, const Rational& c);
  static SymPoly variable(int nvars, int index);
  static SymPoly monomial(Exponents exponents, const Rational& c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Maximal total degree; -1 for the zero polynomial.
  int degree() const;
  /// True when every term has total degree `deg` (the zero polynomial qualifies).
  bool is_homogeneous(int deg) const;
  Rational coefficient(const Exponents& exponents) const;

  void add_term(const Exponents& exponents, const Rational& c);

  SymPoly operator-() const;
  SymPoly& operator+=(const SymPoly& q);
  SymPoly& operator-=(const SymPoly& q);
  SymPoly& operator*=(const SymPoly& q);
  SymPoly& operator*=(const Rational& c);
  friend SymPoly operator+(SymPoly p, const SymPoly& q) { return p += q; }
  friend SymPoly operator-(SymPoly p, const SymPoly& q) { return p -= q; }
  friend SymPoly operator*(const SymPoly& p, const SymPoly& q);
  friend SymPoly operator*(SymPoly p, const Rational& c) { return p *= c; }
  friend SymPoly operator*(const Rational& c, SymPoly p) { return p *= c; }
  friend bool operator==(const SymPoly& p, const SymPoly& q) = default;

  SymPoly pow(unsigned e) const;

  /// Terms in descending graded-lex order, e.g. "x1^2 + x1*x2 + x2^2".
  std::string to_string() const;

 private:
  void require_same_vars(const SymPoly& q) const;

  int nvars_;
  TermMap terms_;
};

/// sigma_i(x1..xr); sigma_0 = 1.
SymPoly elementary(int i, int r);
/// sigma_i with variable `omit` (1-based) removed; 0 <= i <= r - 1.
SymPoly elementary_omit(int i, int omit, int r);
/// h_i(x1..xr); h_0 = 1, h_i = 0 for i < 0.
SymPoly complete_homogeneous(int i, int r);
/// Schur polynomial via the Jacobi-Trudi determinant det(h_{lambda_i - i + j}).
SymPoly schur_poly(const Partition& lambda, int r);
/// Partial derivative with respect to x_var (1-based).
SymPoly differentiate(const SymPoly& p, int var);
/// (g-1)(r-l+1)(n-r+l-1) sigma_{l-1} P + sum_k sigma_{l-1;k} x_k dP/dx_k, for 2 <= l <= r.
SymPoly apply_Dl(const SymPoly& p, int l, int g, int r, int n);

/// Exact value at arbitrary points of a common cyclotomic field.
Cyclotomic evaluate(const SymPoly& p, std::span<const Cyclotomic> points);

/// Value at the points zeta_n^{exps[i]}, computed in any scalar backend by
/// accumulating coefficients per residue of the combined exponent mod n.
template <class Backend>
typename Backend::value_type evaluate_at_roots(const SymPoly& p, std::uint32_t n, std::span<const int> exps,
                                               const Backend& backend) {
  std::vector<Rational> residues(n);
  const auto nn = static_cast<std::int64_t>(n);
  for (const auto& [mono, c] : p.terms()) {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < mono.size(); ++i) e += static_cast<std::int64_t>(mono[i]) * exps[i];
    residues[static_cast<std::size_t>(((e % nn) + nn) % nn)] += c;
  }
  auto out = backend.zero();
  for (std::uint32_t j = 0; j < n; ++j) {
    if (residues[j] == 0) continue;
    out += backend.root(n, j) * backend.from_rational(residues[j]);
  }
  return out;
}

/// h_0..h_max at the given points, from power sums through Newton's identities
/// m h_m = sum_{i=1}^m p_i h_{m-i}. The division by m is a rational scaling.
template <class Backend, class V = typename Backend::value_type>
std::vector<V> complete_homogeneous_values(std::span<const V> points, int max_degree, const Backend& backend) {
  std::vector<V> power_sums;
  power_sums.reserve(static_cast<std::size_t>(max_degree) + 1);
  power_sums.push_back(backend.from_rational(Rational(static_cast<long>(points.size()))));
  std::vector<V> current(points.begin(), points.end());
  for (int j = 1; j <= max_degree; ++j) {
    V sum = backend.zero();
    for (const auto& c : current) sum += c;
    power_sums.push_back(std::move(sum));
    for (std::size_t i = 0; i < current.size(); ++i) current[i] = current[i] * points[i];
  }
  std::vector<V> h;
  h.reserve(power_sums.size());
  h.push_back(backend.one());
  for (int m = 1; m <= max_degree; ++m) {
    V acc = backend.zero();
    for (int i = 1; i <= m; ++i) acc += power_sums[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(m - i)];
    h.push_back(acc * backend.from_rational(ratio(1, m)));
  }
  return h;
}

/// Jacobi-Trudi det(h_{lambda_i - i + j}) over precomputed h values; h must
/// cover degrees up to lambda_1 + length - 1.
template <class V>
V jacobi_trudi(const Partition& lambda, const std::vector<V>& h, const V& zero, const V& one) {
  const int l = lambda.length();
  std::vector<std::vector<V>> m(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) {
    auto& row = m[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(l));
    for (int j = 0; j < l; ++j) {
      const int idx = lambda.row(static_cast<std::size_t>(i)) - i + j;
      row.push_back(idx < 0 ? zero : h.at(static_cast<std::size_t>(idx)));
    }
  }
  return determinant(m, zero, one);
}

/// s_lambda at pairwise distinct points, via power sums, Newton and Jacobi-Trudi.
Cyclotomic schur_at_roots(const Partition& lambda, std::span<const Cyclotomic> points);
/// The bialternant det(x_i^{lambda_j + r - j}) / det(x_i^{r - j}); cross-check path.
Cyclotomic schur_bialternant(const Partition& lambda, std::span<const Cyclotomic> points);

/// Parses the polynomial mini-language in r variables:
///   expr := term (('+'|'-') term)*;  term := factor ('*' factor)*;
///   factor := base ('^' uint)?;      base := atom | '(' expr ')'
/// with atoms x<i>, e<i>, a<i> (alias of e<i>), s[a,b,...] and integer literals.
SymPoly parse_poly(std::string_view text, int r);

}  // namespace grasstqft
