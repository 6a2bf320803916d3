#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace grasstqft::detail {

/// Fixed so that the partition of work, and hence floating-point rounding,
/// never depends on the number of workers.
inline constexpr std::uint64_t kChunkSize = 16;

/// Sum of term(i) over 0 <= i < count. Chunks are claimed dynamically by up
/// to `workers` threads, each summing its chunk left to right; partials are
/// then combined in chunk order. The result is bit-identical for any worker
/// count, including the inline single-thread path.
template <class V, class Term>
V chunked_sum(std::uint64_t count, const V& zero, Term&& term, unsigned workers) {
  const std::uint64_t chunks = (count + kChunkSize - 1) / kChunkSize;
  std::vector<std::optional<V>> partial(chunks);
  auto run_chunk = [&](std::uint64_t c) {
    V acc = zero;
    const std::uint64_t end = std::min(count, (c + 1) * kChunkSize);
    for (std::uint64_t i = c * kChunkSize; i < end; ++i) acc += term(i);
    partial[c] = std::move(acc);
  };

  const auto threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1U, workers), chunks));
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
        try {
          run_chunk(c);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = chunks;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  V total = zero;
  for (auto& p : partial) total += *p;
  return total;
}

/// Applies f(i) for 0 <= i < count across workers; results land in index order.
template <class R, class F>
std::vector<R> parallel_map(std::uint64_t count, F&& f, unsigned workers) {
  std::vector<std::optional<R>> slots(count);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::uint64_t i; (i = next.fetch_add(1)) < count;) {
      try {
        slots[i] = f(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  const auto threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1U, workers), count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace grasstqft::detail
