#pragma once

// Apply-then-sum evaluation of f-class integrals that shares nothing with the
// engine beyond field arithmetic: the operator is applied pointwise from the
// monomial exponents, elementary values come from explicit subset products,
// and the root tuples, J and sign are built here.

#include <cstdint>
#include <functional>
#include <vector>

#include "grasstqft/cyclotomic.hpp"
#include "grasstqft/sympoly.hpp"

namespace f_class_oracle {

using grasstqft::Cyclotomic;
using grasstqft::Rational;

// sigma_i of the given values (skip index `omit` when >= 0).
inline Cyclotomic sigma(const std::vector<Cyclotomic>& x, int i, int omit, std::uint32_t order) {
  std::vector<Cyclotomic> dp(static_cast<std::size_t>(i) + 1, Cyclotomic::zero(order));
  dp[0] = Cyclotomic::one(order);
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (static_cast<int>(v) == omit) continue;
    for (int j = i; j >= 1; --j) dp[static_cast<std::size_t>(j)] += dp[static_cast<std::size_t>(j) - 1] * x[v];
  }
  return dp[static_cast<std::size_t>(i)];
}

inline Rational integral(int g, int r, int n, long d, int l, const grasstqft::SymPoly& p) {
  const auto order = static_cast<std::uint32_t>(n);
  Cyclotomic total = Cyclotomic::zero(order);
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(chosen.size()) == r) {
      std::vector<Cyclotomic> x;
      for (int c : chosen) x.push_back(Cyclotomic::root_of_unity(order, c));
      // D_l P at x, term by term.
      const Rational scalar = Rational((g - 1) * (r - l + 1) * (n - r + l - 1));
      const Cyclotomic s_full = sigma(x, l - 1, -1, order);
      std::vector<Cyclotomic> s_omit;
      for (int v = 0; v < r; ++v) s_omit.push_back(sigma(x, l - 1, v, order));
      Cyclotomic value = Cyclotomic::zero(order);
      for (const auto& [mono, c] : p.terms()) {
        Cyclotomic m = Cyclotomic::from_rational(order, c);
        for (int v = 0; v < r; ++v)
          for (int e = 0; e < mono[static_cast<std::size_t>(v)]; ++e) m *= x[static_cast<std::size_t>(v)];
        Cyclotomic factor = s_full * Cyclotomic::from_rational(order, scalar);
        for (int v = 0; v < r; ++v) factor += s_omit[static_cast<std::size_t>(v)] * Cyclotomic::from_rational(order, Rational(mono[static_cast<std::size_t>(v)]));
        value += m * factor;
      }
      Cyclotomic j = Cyclotomic::from_rational(order, Rational(1));
      for (int v = 0; v < r; ++v) j *= Cyclotomic::from_rational(order, Rational(n)) * x[static_cast<std::size_t>(v)].inverse();
      for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b) {
          const Cyclotomic diff = x[static_cast<std::size_t>(a)] - x[static_cast<std::size_t>(b)];
          j *= (diff * diff).inverse();
        }
      Cyclotomic jp = Cyclotomic::one(order);
      for (int i = 0; i < g - 1; ++i) jp *= j;
      for (int i = 0; i > g - 1; --i) jp *= j.inverse();
      total += value * jp;
      return;
    }
    for (int c = start; c < n; ++c) {
      chosen.push_back(c);
      rec(c + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  const long sign_exp = static_cast<long>(g - 1) * r * (r - 1) / 2 + d * (r - 1);
  const Rational u = (sign_exp % 2 + 2) % 2 == 0 ? Rational(1) : Rational(-1);
  return total.to_rational() * u / Rational(n);
}

}  // namespace f_class_oracle
