#include <doctest.h>

#include <algorithm>
#include <random>

#include "grasstqft/backend.hpp"
#include "grasstqft/errors.hpp"
#include "grasstqft/sympoly.hpp"
#include "lr_oracle.hpp"

using namespace grasstqft;

namespace {

Partition P(std::vector<int> rows) { return Partition(std::move(rows)); }
SymPoly X(int r, int i) { return SymPoly::variable(r, i); }
SymPoly C(int r, long c) { return SymPoly::constant(r, Rational(c)); }

std::vector<Partition> partitions_of(int n, int max_rows) {
  std::vector<Partition> out;
  for (const auto& p : enumerate_basis(max_rows, n)) {
    if (p.weight() == n) out.push_back(p);
  }
  return out;
}

// Expansion of a symmetric polynomial in Schur polynomials by peeling the
// lex-leading monomial, whose exponent is a partition.
std::map<Partition, Rational> schur_expand(SymPoly p, int r) {
  std::map<Partition, Rational> out;
  while (!p.is_zero()) {
    const auto& [mono, c] = *p.terms().rbegin();
    const Rational coeff = c;
    const Partition lead(mono);
    out[lead] = coeff;
    p -= schur_poly(lead, r) * coeff;
  }
  return out;
}

SymPoly random_poly(std::mt19937& rng, int r, int max_deg) {
  std::uniform_int_distribution<int> e(0, max_deg), c(-3, 3), nterms(1, 4);
  SymPoly p(r);
  for (int t = nterms(rng); t > 0; --t) {
    SymPoly::Exponents ex(static_cast<std::size_t>(r));
    for (auto& v : ex) v = e(rng);
    p.add_term(ex, Rational(c(rng)));
  }
  return p;
}

std::vector<Cyclotomic> root_points(std::uint32_t order, const std::vector<int>& exps) {
  std::vector<Cyclotomic> pts;
  for (int e : exps) pts.push_back(root_of_unity(order, e));
  return pts;
}

}  // namespace

TEST_CASE("elementary and complete homogeneous") {
  CHECK(elementary(1, 2) == X(2, 1) + X(2, 2));
  CHECK(elementary(2, 2) == X(2, 1) * X(2, 2));
  CHECK(elementary(0, 3) == C(3, 1));
  CHECK(elementary_omit(1, 2, 3) == X(3, 1) + X(3, 3));
  CHECK(elementary_omit(0, 1, 3) == C(3, 1));
  CHECK_THROWS_AS(elementary(3, 2), DomainError);
  CHECK_THROWS_AS(elementary_omit(3, 1, 3), DomainError);
  CHECK_THROWS_AS(elementary_omit(1, 4, 3), DomainError);
  CHECK(complete_homogeneous(2, 2) == X(2, 1).pow(2) + X(2, 1) * X(2, 2) + X(2, 2).pow(2));
  CHECK(complete_homogeneous(-1, 2).is_zero());
  // sum_i (-1)^i e_i h_{m-i} = 0 for m >= 1.
  for (int r = 1; r <= 4; ++r) {
    for (int m = 1; m <= 5; ++m) {
      SymPoly acc(r);
      for (int i = 0; i <= std::min(m, r); ++i) {
        const SymPoly t = elementary(i, r) * complete_homogeneous(m - i, r);
        if (i % 2) acc -= t;
        else acc += t;
      }
      CHECK(acc.is_zero());
    }
  }
}

TEST_CASE("schur_poly") {
  CHECK(schur_poly(P({1}), 2) == X(2, 1) + X(2, 2));
  CHECK(schur_poly(P({1, 1}), 2) == X(2, 1) * X(2, 2));
  // Bialternant oracle for r = 2: (x1^{a+1} x2^b - x2^{a+1} x1^b) / (x1 - x2)
  // expands to sum_{i=b}^{a} x1^i x2^{a+b-i}.
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; b <= a; ++b) {
      SymPoly expected(2);
      for (int i = b; i <= a; ++i) expected.add_term({i, a + b - i}, Rational(1));
      CHECK(schur_poly(P({a, b}), 2) == expected);
    }
  }
  CHECK(schur_poly(P({2}), 2) == X(2, 1).pow(2) + X(2, 1) * X(2, 2) + X(2, 2).pow(2));
  CHECK_THROWS_AS(schur_poly(P({1, 1, 1}), 2), DomainError);
  CHECK(schur_poly(P({2, 2}), 2) == elementary(2, 2).pow(2));
  CHECK(schur_poly(P({3, 3, 3}), 3) == elementary(3, 3).pow(3));
  CHECK(schur_poly(P({2, 1}), 3).degree() == 3);
  CHECK(schur_poly(P({2, 1}), 3).is_homogeneous(3));
}

TEST_CASE("Littlewood-Richardson products") {
  for (int r = 1; r <= 3; ++r) {
    for (int total = 0; total <= 6; ++total) {
      for (int a = 0; a <= total; ++a) {
        for (const auto& lam : partitions_of(a, r)) {
          for (const auto& mu : partitions_of(total - a, r)) {
            const auto expansion = schur_expand(schur_poly(lam, r) * schur_poly(mu, r), r);
            for (const auto& nu : partitions_of(total, r)) {
              const auto it = expansion.find(nu);
              const Rational got = it == expansion.end() ? Rational(0) : it->second;
              CHECK_MESSAGE(got == lr_oracle::coefficient(lam, mu, nu),
                            lam.to_string() << "*" << mu.to_string() << "->" << nu.to_string());
            }
          }
        }
      }
    }
  }
}

TEST_CASE("differentiate") {
  CHECK(differentiate(X(2, 1).pow(2) * X(2, 2), 1) == C(2, 2) * X(2, 1) * X(2, 2));
  CHECK(differentiate(X(2, 1), 2).is_zero());
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_poly(rng, 3, 3), q = random_poly(rng, 3, 3);
    for (int v = 1; v <= 3; ++v) {
      CHECK(differentiate(p * q, v) == differentiate(p, v) * q + p * differentiate(q, v));
    }
  }
}

TEST_CASE("apply_Dl") {
  CHECK(apply_Dl(C(2, 1), 2, 2, 2, 3) == C(2, 2) * (X(2, 1) + X(2, 2)));
  for (int l = 2; l <= 3; ++l) CHECK(apply_Dl(C(3, 5), l, 1, 3, 5).is_zero());
  CHECK_THROWS_AS(apply_Dl(C(2, 1), 1, 2, 2, 3), DomainError);
  CHECK_THROWS_AS(apply_Dl(C(2, 1), 3, 2, 2, 3), DomainError);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_poly(rng, 3, 3), q = random_poly(rng, 3, 3);
    const Rational a = ratio(trial - 7, 3), b(2 * trial + 1);
    for (int l = 2; l <= 3; ++l) {
      CHECK(apply_Dl(p * a + q * b, l, 2, 3, 5) == apply_Dl(p, l, 2, 3, 5) * a + apply_Dl(q, l, 2, 3, 5) * b);
    }
  }
  // Degree goes up by l - 1 on homogeneous inputs.
  for (const auto& lam : enumerate_basis(3, 2)) {
    for (int l = 2; l <= 3; ++l) {
      const auto out = apply_Dl(schur_poly(lam, 3), l, 3, 3, 5);
      if (!out.is_zero()) CHECK(out.degree() == lam.weight() + l - 1);
    }
  }
}

TEST_CASE("evaluate and schur_at_roots") {
  const std::vector<Cyclotomic> pm{Cyclotomic::one(2), Cyclotomic::from_rational(2, -1)};
  CHECK(evaluate(X(2, 1) + X(2, 2), pm).is_zero());
  const auto pts = root_points(12, {1, 4, 7});
  CHECK(evaluate(elementary(3, 3), pts) == pts[0] * pts[1] * pts[2]);
  CHECK(schur_at_roots(P({}), pts) == Cyclotomic::one(12));
  CHECK(schur_at_roots(P({1}), root_points(3, {1, 2})).to_rational() == -1);
  CHECK_THROWS_AS(schur_at_roots(P({1}), root_points(6, {1, 1})), DomainError);

  // Two independent paths, exhaustive over small orders.
  for (int r = 1; r <= 3; ++r) {
    for (std::uint32_t order : {4u, 5u, 6u, 8u, 12u, 24u}) {
      if (static_cast<int>(order) < r) continue;
      std::vector<Partition> lambdas;
      for (const auto& lam : enumerate_basis(r, 3)) lambdas.push_back(lam);
      int checked = 0;
      enumerate_tuples(static_cast<int>(order), r, TupleMode::DecreasingVectors).for_each([&](const std::vector<int>& t) {
        if (checked++ > 12) return;
        const auto points = root_points(order, t);
        for (const auto& lam : lambdas) {
          const auto fast = schur_at_roots(lam, points);
          CHECK(fast == evaluate(schur_poly(lam, r), points));
          CHECK(fast == schur_bialternant(lam, points));
        }
      });
    }
  }
}

TEST_CASE("schur homogeneity and symmetry") {
  std::mt19937 rng(11);
  const std::uint32_t order = 24;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> exps{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23};
    std::shuffle(exps.begin(), exps.end(), rng);
    exps.resize(3);
    const int shift = static_cast<int>(rng() % order);
    auto pts = root_points(order, exps);
    std::vector<int> scaled = exps;
    for (auto& e : scaled) e += shift;
    const auto spts = root_points(order, scaled);
    for (const auto& lam : enumerate_basis(3, 3)) {
      CHECK(schur_at_roots(lam, spts) == root_of_unity(order, shift).pow(lam.weight()) * schur_at_roots(lam, pts));
    }
    // Every constructor output is invariant under a transposition of variables.
    auto swapped = pts;
    std::swap(swapped[0], swapped[2]);
    for (const auto& lam : enumerate_basis(3, 2)) {
      CHECK(evaluate(schur_poly(lam, 3), pts) == evaluate(schur_poly(lam, 3), swapped));
    }
    for (int i = 0; i <= 3; ++i) CHECK(evaluate(elementary(i, 3), pts) == evaluate(elementary(i, 3), swapped));
    for (int i = 0; i <= 4; ++i)
      CHECK(evaluate(complete_homogeneous(i, 3), pts) == evaluate(complete_homogeneous(i, 3), swapped));
  }
}

TEST_CASE("generic evaluation at roots") {
  const auto p = schur_poly(P({2, 1}), 3) + elementary(3, 3).pow(2);
  const std::vector<int> exps{4, 2, 1};
  const ExactBackend exact(5);
  const auto pts = root_points(5, exps);
  CHECK(evaluate_at_roots(p, 5, exps, exact) == evaluate(p, pts));
  const auto h = complete_homogeneous_values(std::span<const Cyclotomic>(pts), 4, exact);
  for (int m = 0; m <= 4; ++m) CHECK(h[static_cast<std::size_t>(m)] == evaluate(complete_homogeneous(m, 3), pts));
}

TEST_CASE("polynomial mini-language") {
  CHECK(parse_poly("a1^5", 1) == X(1, 1).pow(5));
  CHECK(parse_poly("x1 + x2", 2) == X(2, 1) + X(2, 2));
  CHECK(parse_poly(" e2 * s[2,1] - 3*x1^2 ", 2) == elementary(2, 2) * schur_poly(P({2, 1}), 2) - C(2, 3) * X(2, 1).pow(2));
  CHECK(parse_poly("(x1+1)^2", 1) == X(1, 1).pow(2) + C(1, 2) * X(1, 1) + C(1, 1));
  CHECK(parse_poly("2^3*x1", 1) == C(1, 8) * X(1, 1));
  CHECK(parse_poly("s[]", 2) == C(2, 1));
  CHECK(parse_poly("a2", 3) == elementary(2, 3));
  CHECK(parse_poly("x1 - x1", 1).is_zero());
  CHECK(parse_poly("-x1", 1) == -X(1, 1));
  CHECK(parse_poly("x1*x2^2", 2) == X(2, 1) * X(2, 2).pow(2));

  auto offset_of = [](const char* text, int r) -> std::size_t {
    try {
      parse_poly(text, r);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  CHECK(offset_of("x1 +", 1) == 4);
  CHECK(offset_of("x3", 2) == 0);
  CHECK(offset_of("x1 $", 1) == 3);
  CHECK(offset_of("(x1", 1) == 3);
  CHECK(offset_of("s[1,2]", 2) == 0);
  CHECK(offset_of("e3", 2) == 0);
  CHECK(offset_of("x1^", 1) == 3);
}

TEST_CASE("printing") {
  CHECK(schur_poly(P({2}), 2).to_string() == "x1^2 + x1*x2 + x2^2");
  CHECK((C(2, 0) - X(2, 2) * Rational(1, 2) + C(2, 3)).to_string() == "-1/2*x2 + 3");
  CHECK(SymPoly(3).to_string() == "0");
}
