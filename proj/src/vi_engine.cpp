#include "grasstqft/vi_engine.hpp"

#include <atomic>

#include "grasstqft/backend.hpp"
#include "grasstqft/detail/parallel.hpp"
#include "grasstqft/detail/tuple_cache.hpp"
#include "grasstqft/errors.hpp"

namespace grasstqft {

namespace {

std::atomic<std::uint64_t> g_tuples{0};

template <class B>
using Value = typename B::value_type;

void require_ranks(int r, int n) {
  if (r < 1 || n < r) {
    throw DomainError("need 1 <= r <= n, got r = " + std::to_string(r) + ", n = " + std::to_string(n));
  }
}

void require_genus(int g) {
  if (g < 0) throw DomainError("genus must be nonnegative, got " + std::to_string(g));
}

Rational int_power(const Rational& base, std::int64_t e) {
  Rational out(1), b = base;
  if (e < 0) {
    if (b == 0) throw DivisionByZero("zero to a negative power");
    b = 1 / b;
    e = -e;
  }
  for (; e != 0; e >>= 1) {
    if (e & 1) out *= b;
    if (e > 1) b *= b;
  }
  return out;
}

std::int64_t check_top_degree(int g, int r, int n, std::int64_t d) {
  const std::int64_t e = expected_dimension(g, r, n, d);
  if (e < 0) {
    throw OutOfRegime("expected dimension " + std::to_string(e) + " is negative (g = " + std::to_string(g) +
                      ", r = " + std::to_string(r) + ", n = " + std::to_string(n) + ", d = " + std::to_string(d) + ")");
  }
  return e;
}

// u * sum over tuples of f(entry) * J^{g-1}(entry)
template <class B, class F>
Value<B> signed_root_sum(const B& backend, int g, int r, int n, std::int64_t d, F&& f, const ExecOptions& opts) {
  const auto cache = detail::tuple_cache(backend, n, r);
  g_tuples += cache->size();
  Value<B> sum = detail::chunked_sum(
      cache->size(), backend.zero(),
      [&](std::uint64_t i) {
        const auto& e = cache->at(i);
        return f(*cache, e) * cache->j_power(e, g);
      },
      opts.workers);
  return sum * backend.from_rational(Rational(vi_sign(g, r, d)));
}

template <class B>
Value<B> vi_integral_in(const B& backend, const QuotIntegral& q, const ExecOptions& opts) {
  require_genus(q.g);
  require_ranks(q.r, q.n);
  if (q.integrand.nvars() != q.r) throw DomainError("integrand must be a polynomial in r variables");
  const std::int64_t e = check_top_degree(q.g, q.r, q.n, q.d);
  if (!q.integrand.is_homogeneous(static_cast<int>(e))) {
    throw DimensionMismatch("integrand of degree " + std::to_string(q.integrand.degree()) +
                            " does not match the expected dimension " + std::to_string(e));
  }
  return signed_root_sum(
      backend, q.g, q.r, q.n, q.d,
      [&](const auto&, const auto& entry) {
        return evaluate_at_roots(q.integrand, static_cast<std::uint32_t>(q.n), std::span<const int>(entry.exps), backend);
      },
      opts);
}

template <class B>
Value<B> schur_product_in(const B& backend, int g, int r, int n, std::int64_t d, const Multipartition& parts,
                          std::int64_t t, const ExecOptions& opts) {
  require_genus(g);
  require_ranks(r, n);
  const std::int64_t e = check_top_degree(g, r, n, d);
  if (t < 0) throw OutOfRegime("negative power of a_r: t = " + std::to_string(t));
  const std::int64_t degree = weight(parts) + static_cast<std::int64_t>(r) * t;
  if (degree != e) {
    throw DimensionMismatch("integrand degree " + std::to_string(degree) + " differs from the expected dimension " +
                            std::to_string(e));
  }
  for (const auto& p : parts) {
    if (p.length() > r) return backend.zero();
  }
  return signed_root_sum(
      backend, g, r, n, d,
      [&](const auto& cache, const auto& entry) { return cache.schur_product(entry, parts) * cache.top_power(entry, t); },
      opts);
}

template <class B>
Value<B> verlinde_closed_in(const B& backend, int g, int r, int k, const ExecOptions& opts) {
  require_genus(g);
  const TheoryParams theory(r, k);
  const int n = theory.n();
  std::vector<Value<B>> sines;  // sines[m] = |2 sin(pi m / n)|, 0 < m < n
  sines.push_back(backend.zero());
  for (int m = 1; m < n; ++m) sines.push_back(backend.two_sin(m, static_cast<std::uint32_t>(n)));
  const TupleEnumerator en(n, r, TupleMode::Subsets);
  g_tuples += en.size();
  return detail::chunked_sum(
      en.size(), backend.zero(),
      [&](std::uint64_t i) {
        const auto subset = en.at(i);
        std::vector<bool> in_s(static_cast<std::size_t>(n) + 1, false);
        for (int s : subset) in_s[static_cast<std::size_t>(s)] = true;
        Value<B> prod = backend.one();
        for (int s : subset) {
          for (int t = 1; t <= n; ++t) {
            if (!in_s[static_cast<std::size_t>(t)]) prod *= sines[static_cast<std::size_t>(s > t ? s - t : t - s)];
          }
        }
        return prod.pow(g - 1);
      },
      opts.workers);
}

std::int64_t quot_t(int g, int r, int k, std::int64_t d) {
  if (d % r != 0) {
    throw DomainError("degree d = " + std::to_string(d) + " must be divisible by r = " + std::to_string(r));
  }
  const std::int64_t t = (d / r) * (r + k) - static_cast<std::int64_t>(k) * (g - 1);
  if (t < 0) throw OutOfRegime("t = " + std::to_string(t) + " is negative; the top intersection is not defined");
  return t;
}

QuotIntegral quot_integral(int g, int r, int k, std::int64_t d) {
  const std::int64_t t = quot_t(g, r, k, d);
  return {g, d, r, r + k, SymPoly::monomial(SymPoly::Exponents(static_cast<std::size_t>(r), static_cast<int>(t)), Rational(1))};
}

void check_selection_rule(int r, int k, std::int64_t d, const Multipartition& parts) {
  const std::int64_t residue = ((weight(parts) - static_cast<std::int64_t>(k) * d) % r + r) % r;
  if (residue != 0) {
    throw SelectionRuleViolation("selection rule fails: k d + |parts*| = " +
                                 std::to_string(static_cast<std::int64_t>(k) * d + static_cast<std::int64_t>(parts.size()) * r * k - weight(parts)) +
                                 " is not divisible by r = " + std::to_string(r));
  }
}

void check_open(int g, int r, int k, std::int64_t d, const Multipartition& parts, std::int64_t t) {
  require_genus(g);
  const TheoryParams theory(r, k);
  require_in_box(parts, r, k);
  check_selection_rule(r, k, d, parts);
  if (t < 0) throw OutOfRegime("t = " + std::to_string(t) + " is negative");
  const std::int64_t lhs = weight(parts) + static_cast<std::int64_t>(r) * t;
  const std::int64_t rhs = static_cast<std::int64_t>(theory.n()) * d - static_cast<std::int64_t>(r) * k * (g - 1);
  if (lhs != rhs) {
    throw DimensionMismatch("dimension equation fails: |parts| + r t = " + std::to_string(lhs) + " but n d - r k (g-1) = " +
                            std::to_string(rhs));
  }
}

Rational stack_prefactor(int g, int r, int n, std::int64_t d) {
  const Rational sign((d * (r - 1)) % 2 == 0 ? 1 : -1);
  return sign * int_power(Rational(n), static_cast<std::int64_t>(r) * (g - 1)) * int_power(ratio(r, n), g);
}

template <class B>
Value<B> parabolic_stack_in(const B& backend, int g, int r, int k, std::int64_t d, const Multipartition& parts,
                            const ExecOptions& opts) {
  require_genus(g);
  const TheoryParams theory(r, k);
  require_in_box(parts, r, k);
  const int n = theory.n();
  const auto rn = static_cast<std::uint32_t>(r * n);
  const std::int64_t phase_step = d * n - weight(parts);
  const auto cache = detail::tuple_cache(backend, n, r);
  g_tuples += cache->size();
  Value<B> sum = detail::chunked_sum(
      cache->size(), backend.zero(),
      [&](std::uint64_t i) {
        const auto& e = cache->at(i);
        // (2 sin pi m / n)^2 = 2 - zeta_n^m - zeta_n^{-m}
        Value<B> sines = backend.one();
        for (std::size_t a = 0; a < e.exps.size(); ++a) {
          for (std::size_t b = a + 1; b < e.exps.size(); ++b) {
            const int m = e.exps[a] - e.exps[b];
            sines *= backend.from_rational(Rational(2)) - backend.root(static_cast<std::uint32_t>(n), m) -
                     backend.root(static_cast<std::uint32_t>(n), -m);
          }
        }
        return backend.root(rn, phase_step * e.exp_sum) * cache->schur_product(e, parts) * sines.pow(-(g - 1));
      },
      opts.workers);
  return sum * backend.from_rational(stack_prefactor(g, r, n, d));
}

template <class B>
Value<B> parabolic_verlinde_in(const B& backend, int g, int r, int k, std::int64_t d, const Multipartition& parts,
                               const ExecOptions& opts) {
  check_selection_rule(r, k, d, parts);
  return parabolic_stack_in(backend, g, r, k, d, parts, opts) *
         backend.from_rational(int_power(ratio(r + k, r), g));
}

FloatBackend float_backend(unsigned precision) {
  if (precision < 64) throw DomainError("floating precision must be at least 64 bits");
  return FloatBackend(precision);
}

}  // namespace

TheoryParams::TheoryParams(int r_, int k_) : r(r_), k(k_) {
  if (r < 1 || k < 0) {
    throw DomainError("theory needs r >= 1 and k >= 0, got r = " + std::to_string(r) + ", k = " + std::to_string(k));
  }
}

int vi_sign(int g, int r, std::int64_t d) {
  const std::int64_t c2 = static_cast<std::int64_t>(r) * (r - 1) / 2;
  const std::int64_t e = static_cast<std::int64_t>(g - 1) * c2 + d * (r - 1);
  return (e % 2 == 0) ? 1 : -1;
}

std::int64_t expected_dimension(int g, int r, int n, std::int64_t d) {
  return static_cast<std::int64_t>(n) * d - static_cast<std::int64_t>(r) * (n - r) * (g - 1);
}

Cyclotomic j_power(std::span<const Cyclotomic> points, int n, int g) {
  require_genus(g);
  if (points.empty() || n < 1) throw DomainError("j_power needs at least one point and n >= 1");
  const std::uint32_t order = points.front().order();
  const auto r = static_cast<long>(points.size());
  Integer nr;
  mpz_ui_pow_ui(nr.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  Cyclotomic j = Cyclotomic::from_rational(order, Rational(nr));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].order() != order) throw OrderMismatch("j_power: points live in different cyclotomic fields");
    if (points[i].pow(n) != Cyclotomic::one(order)) throw DomainError("j_power: points must be n-th roots of unity");
    j *= points[i].pow(n - 1);  // x^{-1} = x^{n-1}
    for (std::size_t k = i + 1; k < points.size(); ++k) {
      const Cyclotomic diff = points[i] - points[k];
      if (diff.is_zero()) throw DomainError("j_power: repeated point");
      j *= (diff * diff).inverse();
    }
  }
  return j.pow(g - 1);
}

Rational vi_integral(const QuotIntegral& q, const ExecOptions& opts) {
  require_ranks(q.r, q.n);
  return vi_integral_in(ExactBackend(static_cast<std::uint32_t>(q.n)), q, opts).to_rational();
}

Rational f_class_integral(int g, int r, int n, std::int64_t d, int l, const SymPoly& p, const ExecOptions& opts) {
  require_genus(g);
  require_ranks(r, n);
  if (l < 2 || l > r) throw DomainError("f-class index l = " + std::to_string(l) + " outside 2.." + std::to_string(r));
  if (p.nvars() != r) throw DomainError("integrand must be a polynomial in r variables");
  const std::int64_t e = check_top_degree(g, r, n, d);
  if (!p.is_homogeneous(static_cast<int>(e - l + 1))) {
    throw DimensionMismatch("deg P + l - 1 must equal the expected dimension " + std::to_string(e));
  }
  const SymPoly dp = apply_Dl(p, l, g, r, n);
  const ExactBackend backend(static_cast<std::uint32_t>(n));
  const Cyclotomic sum = signed_root_sum(
      backend, g, r, n, d,
      [&](const auto&, const auto& entry) {
        return evaluate_at_roots(dp, static_cast<std::uint32_t>(n), std::span<const int>(entry.exps), backend);
      },
      opts);
  return sum.to_rational() / n;
}

Rational schur_product_integral(int g, int r, int n, std::int64_t d, const Multipartition& parts, std::int64_t t,
                                const ExecOptions& opts) {
  require_ranks(r, n);
  return schur_product_in(ExactBackend(static_cast<std::uint32_t>(n)), g, r, n, d, parts, t, opts).to_rational();
}

Integer verlinde_closed(int g, int r, int k, const ExecOptions& opts) {
  const TheoryParams theory(r, k);
  const Rational v = verlinde_closed_in(ExactBackend(theory.order()), g, r, k, opts).to_rational();
  return require_integer(v, "verlinde_closed");
}

Integer verlinde_via_quot(int g, int r, int k, std::int64_t d, const ExecOptions& opts) {
  const TheoryParams theory(r, k);
  return require_integer(vi_integral(quot_integral(g, r, k, d), opts), "verlinde_via_quot");
}

Rational open_intersection(int g, int r, int k, std::int64_t d, const Multipartition& parts, std::int64_t t,
                           const ExecOptions& opts) {
  check_open(g, r, k, d, parts, t);
  return schur_product_integral(g, r, r + k, d, parts, t, opts);
}

Cyclotomic parabolic_stack(int g, int r, int k, std::int64_t d, const Multipartition& parts, const ExecOptions& opts) {
  const TheoryParams theory(r, k);
  return parabolic_stack_in(ExactBackend(theory.order()), g, r, k, d, parts, opts);
}

Integer parabolic_verlinde(int g, int r, int k, std::int64_t d, const Multipartition& parts, const ExecOptions& opts) {
  const TheoryParams theory(r, k);
  const Cyclotomic v = parabolic_verlinde_in(ExactBackend(theory.order()), g, r, k, d, parts, opts);
  Rational q;
  try {
    q = v.to_rational();
  } catch (const NonRationalError&) {
    throw InternalError("parabolic_verlinde: stack sum is not rational (consistency failure)");
  }
  return require_integer(q, "parabolic_verlinde");
}

FloatApprox vi_integral_float(const QuotIntegral& q, unsigned precision, const ExecOptions& opts) {
  return make_approx(vi_integral_in(float_backend(precision), q, opts));
}

FloatApprox schur_product_integral_float(int g, int r, int n, std::int64_t d, const Multipartition& parts,
                                         std::int64_t t, unsigned precision, const ExecOptions& opts) {
  return make_approx(schur_product_in(float_backend(precision), g, r, n, d, parts, t, opts));
}

FloatApprox verlinde_closed_float(int g, int r, int k, unsigned precision, const ExecOptions& opts) {
  return make_approx(verlinde_closed_in(float_backend(precision), g, r, k, opts));
}

FloatApprox verlinde_via_quot_float(int g, int r, int k, std::int64_t d, unsigned precision, const ExecOptions& opts) {
  const TheoryParams theory(r, k);
  return vi_integral_float(quot_integral(g, r, k, d), precision, opts);
}

FloatApprox open_intersection_float(int g, int r, int k, std::int64_t d, const Multipartition& parts, std::int64_t t,
                                    unsigned precision, const ExecOptions& opts) {
  check_open(g, r, k, d, parts, t);
  return schur_product_integral_float(g, r, r + k, d, parts, t, precision, opts);
}

FloatApprox parabolic_verlinde_float(int g, int r, int k, std::int64_t d, const Multipartition& parts,
                                     unsigned precision, const ExecOptions& opts) {
  return make_approx(parabolic_verlinde_in(float_backend(precision), g, r, k, d, parts, opts));
}

std::uint64_t tuples_enumerated() { return g_tuples.load(); }

}  // namespace grasstqft
