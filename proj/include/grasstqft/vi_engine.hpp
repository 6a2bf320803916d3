#pragma once

#include <cstdint>
#include <span>

#include "grasstqft/bigfloat.hpp"
#include "grasstqft/cyclotomic.hpp"
#include "grasstqft/partition.hpp"
#include "grasstqft/rational.hpp"
#include "grasstqft/sympoly.hpp"

namespace grasstqft {

/// Rank r >= 1 and level k >= 0 of the theory; n = r + k.
struct TheoryParams {
  int r = 1;
  int k = 0;

  TheoryParams() = default;
  /// Throws DomainError unless r >= 1 and k >= 0.
  TheoryParams(int r, int k);

  int n() const { return r + k; }
  /// Working order M = 4 r n: contains i, every half-angle sine with
  /// denominator n, and the phases with denominator r n.
  std::uint32_t order() const { return static_cast<std::uint32_t>(4 * r * (r + k)); }
  /// The level-rank dual theory (k, r).
  TheoryParams dual() const { return {k, r}; }

  friend bool operator==(const TheoryParams&, const TheoryParams&) = default;
};

/// A top intersection on the Quot scheme of rank-r subsheaves of O^n of degree d
/// over a genus-g curve; the integrand is written in the Chern roots.
struct QuotIntegral {
  int g = 0;
  std::int64_t d = 0;
  int r = 1;
  int n = 1;
  SymPoly integrand{1};
};

struct ExecOptions {
  unsigned workers = 1;
};

/// (-1)^{(g-1) C(r,2) + d (r-1)}.
int vi_sign(int g, int r, std::int64_t d);

/// Expected dimension e = n d - r (n - r)(g - 1).
std::int64_t expected_dimension(int g, int r, int n, std::int64_t d);

/// J(points)^{g-1}, J = n^r prod x_i^{-1} prod_{i<j} (x_i - x_j)^{-2}, for r
/// distinct n-th roots of unity given in a common cyclotomic field.
Cyclotomic j_power(std::span<const Cyclotomic> points, int n, int g);

/// u * sum over r-subsets of n-th roots of R(x) J^{g-1}(x).
/// DimensionMismatch unless the integrand is homogeneous of degree e;
/// OutOfRegime if e < 0.
Rational vi_integral(const QuotIntegral& q, const ExecOptions& opts = {});

/// (u/n) * sum of (D_l P)(x) J^{g-1}(x); requires deg P + l - 1 = e.
Rational f_class_integral(int g, int r, int n, std::int64_t d, int l, const SymPoly& p, const ExecOptions& opts = {});

/// Integral of prod_j s_{parts_j} * a_r^t at degree d, evaluated with cached
/// Schur values. DimensionMismatch unless |parts| + r t = e.
Rational schur_product_integral(int g, int r, int n, std::int64_t d, const Multipartition& parts, std::int64_t t,
                                const ExecOptions& opts = {});

/// Sum over splittings S, T of {1..n}, |S| = r, of prod |2 sin pi (s-t)/n|^{g-1}.
Integer verlinde_closed(int g, int r, int k, const ExecOptions& opts = {});

/// Integral of a_r^t with t = (d/r) n - k (g-1); d must be divisible by r.
Integer verlinde_via_quot(int g, int r, int k, std::int64_t d, const ExecOptions& opts = {});

/// Integral of a_{parts} a_r^t, where `parts` is the integrand multipartition
/// (already starred by the caller). Checks the selection rule and the
/// dimension equation |parts| + r t = n d - r k (g-1).
Rational open_intersection(int g, int r, int k, std::int64_t d, const Multipartition& parts, std::int64_t t,
                           const ExecOptions& opts = {});

/// The stack-side roots-of-unity sum over 0 <= n_r < ... < n_1 < n with the
/// phase exp(2 pi i (d/r - |parts|/(r n)) sum n_i), evaluated in Q(zeta_{4rn}).
Cyclotomic parabolic_stack(int g, int r, int k, std::int64_t d, const Multipartition& parts,
                           const ExecOptions& opts = {});

/// (n/r)^g * parabolic_stack as an exact integer. SelectionRuleViolation when
/// |parts| is not congruent to k d mod r.
Integer parabolic_verlinde(int g, int r, int k, std::int64_t d, const Multipartition& parts,
                           const ExecOptions& opts = {});

/// Floating cross-check variants; same preconditions, MPFR arithmetic at
/// `precision` bits.
FloatApprox vi_integral_float(const QuotIntegral& q, unsigned precision, const ExecOptions& opts = {});
FloatApprox schur_product_integral_float(int g, int r, int n, std::int64_t d, const Multipartition& parts,
                                         std::int64_t t, unsigned precision, const ExecOptions& opts = {});
FloatApprox verlinde_closed_float(int g, int r, int k, unsigned precision, const ExecOptions& opts = {});
FloatApprox verlinde_via_quot_float(int g, int r, int k, std::int64_t d, unsigned precision,
                                    const ExecOptions& opts = {});
FloatApprox open_intersection_float(int g, int r, int k, std::int64_t d, const Multipartition& parts,
                                    std::int64_t t, unsigned precision, const ExecOptions& opts = {});
FloatApprox parabolic_verlinde_float(int g, int r, int k, std::int64_t d, const Multipartition& parts,
                                     unsigned precision, const ExecOptions& opts = {});

/// Running total of root tuples visited by the summation engine in this process.
std::uint64_t tuples_enumerated();

}  // namespace grasstqft
