#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace grasstqft {

/// Young diagram stored as weakly decreasing row lengths with trailing zeros
/// trimmed. The bounding box (r rows, k columns) is supplied by callers, so the
/// same diagram can be read in P_{r,k} and in P_{k,r}.
class Partition {
 public:
  Partition() = default;
  /// Throws DomainError unless rows are nonnegative and weakly decreasing.
  explicit Partition(std::vector<int> rows);

  const std::vector<int>& rows() const { return rows_; }
  /// Row i (0-based), zero past the last nonzero row.
  int row(std::size_t i) const { return i < rows_.size() ? rows_[i] : 0; }
  int length() const { return static_cast<int>(rows_.size()); }
  int weight() const;
  bool empty() const { return rows_.empty(); }
  bool fits(int r, int k) const;

  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) { return a.rows_ <=> b.rows_; }

 private:
  std::vector<int> rows_;
};

/// Labeled tuple of partitions (one per marked point or boundary circle).
using Multipartition = std::vector<Partition>;

int weight(const Multipartition& parts);

/// P_{r,k} in graded-lex order: by weight, then lexicographically by rows.
/// The result has C(r+k, r) elements.
std::vector<Partition> enumerate_basis(int r, int k);

/// Complement-reversal (k - lambda_r, ..., k - lambda_1) inside the r x k box.
Partition star(const Partition& lambda, int r, int k);
Multipartition star(const Multipartition& parts, int r, int k);

/// Row/column flip; maps P_{r,k} onto P_{k,r}.
Partition transpose(const Partition& lambda);
Multipartition transpose(const Multipartition& parts);

/// Throws DomainError naming the offending part if it does not lie in P_{r,k}.
void require_in_box(const Multipartition& parts, int r, int k);

enum class TupleMode {
  Subsets,            ///< increasing subsets of {1, ..., n}
  DecreasingVectors,  ///< integer vectors n > v_1 > ... > v_r >= 0
};

/// Deterministic enumeration of the C(n, r) r-element choices from n items.
/// Items are addressed by rank, so the range can be cut into contiguous
/// chunks and consumed by independent workers.
class TupleEnumerator {
 public:
  TupleEnumerator(int n, int r, TupleMode mode);

  int n() const { return n_; }
  int r() const { return r_; }
  TupleMode mode() const { return mode_; }
  std::uint64_t size() const { return size_; }

  /// The tuple with the given rank, 0 <= index < size().
  std::vector<int> at(std::uint64_t index) const;

  /// Visits tuples with ranks in [begin, end) in order.
  template <class F>
  void for_each(std::uint64_t begin, std::uint64_t end, F&& visit) const {
    if (begin >= end) return;
    std::vector<int> combo = combination_at(begin);
    for (std::uint64_t i = begin;; ++i) {
      visit(present(combo));
      if (i + 1 == end) break;
      advance(combo);
    }
  }

  template <class F>
  void for_each(F&& visit) const {
    for_each(0, size_, std::forward<F>(visit));
  }

  struct Chunk {
    std::uint64_t begin;
    std::uint64_t end;
  };
  /// Contiguous ranges of at most chunk_size ranks covering [0, size()).
  std::vector<Chunk> split(std::uint64_t chunk_size) const;

 private:
  std::vector<int> combination_at(std::uint64_t index) const;
  void advance(std::vector<int>& combo) const;
  std::vector<int> present(const std::vector<int>& combo) const;

  int n_;
  int r_;
  TupleMode mode_;
  std::uint64_t size_;
};

inline TupleEnumerator enumerate_tuples(int n, int r, TupleMode mode) { return TupleEnumerator(n, r, mode); }

/// All t-fold tuples of basis elements, first component most significant.
std::vector<Multipartition> cartesian_power(const std::vector<Partition>& basis, int t);

}  // namespace grasstqft
