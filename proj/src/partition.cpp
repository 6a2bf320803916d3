#include "grasstqft/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "grasstqft/errors.hpp"
#include "grasstqft/rational.hpp"

namespace grasstqft {

Partition::Partition(std::vector<int> rows) : rows_(std::move(rows)) {
  while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] < 0 || (i > 0 && rows_[i] > rows_[i - 1])) {
      throw DomainError("rows are not a weakly decreasing sequence of nonnegative integers");
    }
  }
}

int Partition::weight() const { return std::accumulate(rows_.begin(), rows_.end(), 0); }

bool Partition::fits(int r, int k) const { return length() <= r && row(0) <= k; }

std::string Partition::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_.size(); ++i) os << (i ? "," : "") << rows_[i];
  os << "]";
  return os.str();
}

int weight(const Multipartition& parts) {
  int total = 0;
  for (const auto& p : parts) total += p.weight();
  return total;
}

std::vector<Partition> enumerate_basis(int r, int k) {
  if (r < 1 || k < 0) throw DomainError("enumerate_basis requires r >= 1 and k >= 0");
  std::vector<Partition> out;
  std::vector<int> rows(static_cast<std::size_t>(r), 0);
  // Depth-first over row vectors k >= rows[0] >= ... >= rows[r-1] >= 0.
  auto recurse = [&](auto&& self, int i, int cap) -> void {
    if (i == r) {
      out.emplace_back(rows);
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      rows[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, v);
    }
    rows[static_cast<std::size_t>(i)] = 0;
  };
  recurse(recurse, 0, k);
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    return a < b;
  });
  return out;
}

Partition star(const Partition& lambda, int r, int k) {
  if (!lambda.fits(r, k)) {
    throw DomainError("partition " + lambda.to_string() + " is not in P_{" + std::to_string(r) + "," +
                      std::to_string(k) + "}");
  }
  std::vector<int> rows(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) rows[static_cast<std::size_t>(i)] = k - lambda.row(static_cast<std::size_t>(r - 1 - i));
  return Partition(std::move(rows));
}

Multipartition star(const Multipartition& parts, int r, int k) {
  Multipartition out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(star(p, r, k));
  return out;
}

Partition transpose(const Partition& lambda) {
  std::vector<int> cols(static_cast<std::size_t>(lambda.row(0)), 0);
  for (int len : lambda.rows()) {
    for (int c = 0; c < len; ++c) ++cols[static_cast<std::size_t>(c)];
  }
  return Partition(std::move(cols));
}

Multipartition transpose(const Multipartition& parts) {
  Multipartition out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(transpose(p));
  return out;
}

void require_in_box(const Multipartition& parts, int r, int k) {
  for (const auto& p : parts) {
    if (!p.fits(r, k)) {
      throw DomainError("partition " + p.to_string() + " is not in P_{" + std::to_string(r) + "," +
                        std::to_string(k) + "}");
    }
  }
}

TupleEnumerator::TupleEnumerator(int n, int r, TupleMode mode) : n_(n), r_(r), mode_(mode) {
  if (r < 0 || r > n) throw DomainError("enumerate_tuples requires 0 <= r <= n");
  size_ = binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r)).get_ui();
}

std::vector<int> TupleEnumerator::combination_at(std::uint64_t index) const {
  if (index >= size_) throw DomainError("tuple rank out of range");
  // Lexicographic unranking of increasing combinations of {0, ..., n-1}.
  std::vector<int> combo;
  combo.reserve(static_cast<std::size_t>(r_));
  int next = 0;
  for (int slot = 0; slot < r_; ++slot) {
    for (int v = next;; ++v) {
      const std::uint64_t block =
          binomial(static_cast<std::uint64_t>(n_ - v - 1), static_cast<std::uint64_t>(r_ - slot - 1)).get_ui();
      if (index < block) {
        combo.push_back(v);
        next = v + 1;
        break;
      }
      index -= block;
    }
  }
  return combo;
}

void TupleEnumerator::advance(std::vector<int>& combo) const {
  int i = r_ - 1;
  while (i >= 0 && combo[static_cast<std::size_t>(i)] == n_ - r_ + i) --i;
  if (i < 0) return;
  ++combo[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < r_; ++j) combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
}

std::vector<int> TupleEnumerator::present(const std::vector<int>& combo) const {
  std::vector<int> out = combo;
  if (mode_ == TupleMode::Subsets) {
    for (auto& v : out) ++v;
  } else {
    std::reverse(out.begin(), out.end());
  }
  return out;
}

std::vector<int> TupleEnumerator::at(std::uint64_t index) const { return present(combination_at(index)); }

std::vector<TupleEnumerator::Chunk> TupleEnumerator::split(std::uint64_t chunk_size) const {
  if (chunk_size == 0) throw DomainError("chunk size must be positive");
  std::vector<Chunk> out;
  for (std::uint64_t b = 0; b < size_; b += chunk_size) out.push_back({b, std::min(size_, b + chunk_size)});
  return out;
}

std::vector<Multipartition> cartesian_power(const std::vector<Partition>& basis, int t) {
  std::vector<Multipartition> out{Multipartition{}};
  for (int step = 0; step < t; ++step) {
    std::vector<Multipartition> next;
    next.reserve(out.size() * basis.size());
    for (const auto& prefix : out) {
      for (const auto& p : basis) {
        Multipartition m = prefix;
        m.push_back(p);
        next.push_back(std::move(m));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace grasstqft
