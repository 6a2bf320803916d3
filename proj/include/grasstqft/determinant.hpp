#pragma once

#include <cstddef>
#include <vector>

namespace grasstqft {

/// Division-free determinant by Laplace expansion along rows, memoized over
/// column subsets: O(n 2^n) ring operations. Works over any commutative ring
/// element type with +, -, *; `one` and `zero` fix the ring identity elements.
template <class T>
T determinant(const std::vector<std::vector<T>>& m, const T& zero, const T& one) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  // minors[S] = det of rows 0..|S|-1 restricted to column set S.
  std::vector<T> minors(std::size_t{1} << n, zero);
  std::vector<bool> ready(minors.size(), false);
  minors[0] = one;
  ready[0] = true;
  for (std::size_t mask = 1; mask < minors.size(); ++mask) {
    const auto rows = static_cast<std::size_t>(__builtin_popcountll(mask));
    const std::size_t row = rows - 1;
    T acc = zero;
    bool any = false;
    std::size_t above = 0;  // columns of S strictly greater than j, counted from the top
    for (std::size_t j = n; j-- > 0;) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const std::size_t rest = mask & ~(std::size_t{1} << j);
      if (ready[rest]) {
        T term = m[row][j] * minors[rest];
        if (above % 2 == 0) acc += term;
        else acc -= term;
        any = true;
      }
      ++above;
    }
    if (any) {
      minors[mask] = std::move(acc);
      ready[mask] = true;
    }
  }
  return minors.back();
}

}  // namespace grasstqft
