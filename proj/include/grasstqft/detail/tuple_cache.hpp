#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "grasstqft/errors.hpp"
#include "grasstqft/partition.hpp"
#include "grasstqft/sympoly.hpp"

namespace grasstqft::detail {

/// Per-tuple data for the sums over r distinct n-th roots of unity in one
/// scalar backend. Points and their product are fixed at construction; J,
/// its powers, complete homogeneous values and Schur values are filled on
/// first use. Fills are idempotent and guarded per tuple, so concurrent
/// readers see either nothing or the final value. Once the entry budget is
/// spent, further values are recomputed on every request instead of stored.
template <class Backend>
class TupleCache {
 public:
  using V = typename Backend::value_type;

  struct Entry {
    std::vector<int> exps;  // n > exps[0] > ... > exps[r-1] >= 0
    std::vector<V> points;  // zeta_n^{exps[i]}
    std::int64_t exp_sum = 0;

    mutable std::mutex mu;
    mutable std::map<int, V> j_powers;  // keyed by the exponent g - 1
    mutable std::vector<V> h;
    mutable std::map<Partition, V> schur;
  };

  TupleCache(Backend backend, int n, int r, std::size_t budget)
      : backend_(std::move(backend)), n_(n), r_(r), budget_(budget) {
    TupleEnumerator en(n, r, TupleMode::DecreasingVectors);
    entries_.reserve(en.size());
    en.for_each([&](const std::vector<int>& exps) {
      auto e = std::make_unique<Entry>();
      e->exps = exps;
      for (int x : exps) {
        e->points.push_back(backend_.root(static_cast<std::uint32_t>(n), x));
        e->exp_sum += x;
      }
      entries_.push_back(std::move(e));
    });
  }

  const Backend& backend() const { return backend_; }
  int n() const { return n_; }
  int r() const { return r_; }
  std::size_t size() const { return entries_.size(); }
  const Entry& at(std::size_t i) const { return *entries_[i]; }
  std::size_t stored() const { return stored_.load(); }

  /// J(x)^{g-1} with J = n^r prod x_i^{-1} prod_{i<j} (x_i - x_j)^{-2}.
  V j_power(const Entry& e, int g) const {
    const int p = g - 1;
    if (p == 0) return backend_.one();
    {
      std::lock_guard lock(e.mu);
      if (auto it = e.j_powers.find(p); it != e.j_powers.end()) return it->second;
    }
    V j = j_value(e);
    V value = p == 1 ? j : j.pow(p);
    std::lock_guard lock(e.mu);
    if (p != 1 && !e.j_powers.count(1)) remember(e.j_powers, 1, std::move(j));
    return remember(e.j_powers, p, std::move(value));
  }

  /// Product of the points raised to t, i.e. e_r(x)^t.
  V top_power(const Entry& e, std::int64_t t) const { return backend_.root(static_cast<std::uint32_t>(n_), e.exp_sum * t); }

  V schur(const Entry& e, const Partition& lambda) const {
    if (lambda.empty()) return backend_.one();
    if (lambda.length() > r_) return backend_.zero();
    const int need = lambda.row(0) + lambda.length() - 1;
    std::lock_guard lock(e.mu);
    if (auto it = e.schur.find(lambda); it != e.schur.end()) return it->second;
    if (static_cast<int>(e.h.size()) <= need) {
      e.h = complete_homogeneous_values(std::span<const V>(e.points), std::max(need, n_), backend_);
    }
    V value = jacobi_trudi(lambda, e.h, backend_.zero(), backend_.one());
    return remember(e.schur, lambda, std::move(value));
  }

  V schur_product(const Entry& e, const Multipartition& parts) const {
    V acc = backend_.one();
    for (const auto& p : parts) acc *= schur(e, p);
    return acc;
  }

 private:
  V j_value(const Entry& e) const {
    V delta = backend_.one();
    for (std::size_t i = 0; i < e.points.size(); ++i) {
      for (std::size_t j = i + 1; j < e.points.size(); ++j) {
        const V diff = e.points[i] - e.points[j];
        delta *= diff * diff;
      }
    }
    Integer nr;
    mpz_ui_pow_ui(nr.get_mpz_t(), static_cast<unsigned long>(n_), static_cast<unsigned long>(r_));
    return backend_.from_rational(Rational(nr)) * backend_.root(static_cast<std::uint32_t>(n_), -e.exp_sum) *
           delta.inverse();
  }

  template <class Map, class Key>
  V remember(Map& map, const Key& key, V value) const {
    if (stored_.load() >= budget_) return value;
    stored_.fetch_add(1);
    return map.emplace(key, std::move(value)).first->second;
  }

  Backend backend_;
  int n_;
  int r_;
  std::size_t budget_;
  mutable std::atomic<std::size_t> stored_{0};
  std::vector<std::unique_ptr<Entry>> entries_;
};

/// Process-wide registry of tuple caches keyed by (n, r, backend).
/// Creation is idempotent: concurrent first requests agree on one instance.
template <class Backend>
std::shared_ptr<const TupleCache<Backend>> tuple_cache(const Backend& backend, int n, int r,
                                                       std::size_t budget = 1U << 20) {
  static std::shared_mutex mu;
  static std::map<std::string, std::shared_ptr<const TupleCache<Backend>>> caches;
  const std::string key = std::to_string(n) + ":" + std::to_string(r) + ":" + backend.cache_key();
  {
    std::shared_lock lock(mu);
    if (auto it = caches.find(key); it != caches.end()) return it->second;
  }
  auto fresh = std::make_shared<const TupleCache<Backend>>(backend, n, r, budget);
  std::unique_lock lock(mu);
  return caches.try_emplace(key, std::move(fresh)).first->second;
}

}  // namespace grasstqft::detail
