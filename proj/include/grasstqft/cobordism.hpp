#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "grasstqft/tqft.hpp"

namespace grasstqft {

struct CobordismExpr;
using CobordismPtr = std::shared_ptr<const CobordismExpr>;

namespace cob {
/// W(g; s -> t): connected genus-g surface with s incoming and t outgoing circles.
struct Atom {
  int g, s, t;
};
/// id^n: n parallel cylinders.
struct Identity {
  int n;
};
/// lhs first, then rhs.
struct Compose {
  CobordismPtr lhs, rhs;
};
/// Disjoint union; lhs circles come first.
struct Tensor {
  CobordismPtr lhs, rhs;
};
}  // namespace cob

struct CobordismExpr {
  std::variant<cob::Atom, cob::Identity, cob::Compose, cob::Tensor> node;
};

bool operator==(const CobordismExpr& a, const CobordismExpr& b);

/// expr := term ('.' term)*;  term := factor ('*' factor)*;
/// factor := atom | '(' expr ')';  atom := 'W(' int ';' int '->' int ')' | 'id' | 'id^' uint
CobordismPtr parse_cobordism(std::string_view text);

/// Canonical text; parse_cobordism(print_cobordism(e)) rebuilds the same tree.
std::string print_cobordism(const CobordismExpr& e);

/// (inputs, outputs); TypeError on a composition whose circle counts disagree.
std::pair<int, int> boundary_type(const CobordismExpr& e);

/// Dense matrix over Q, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
  /// Kronecker product, first factor most significant.
  friend RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b);

  json to_json() const;
  /// One row per line, entries as quoted decimal strings.
  std::string to_csv() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// Matrix of F(e): shape N^t x N^s with N = C(r+k, r); rows indexed by output
/// multipartitions, columns by inputs, in the graded-lex basis order with the
/// first circle most significant. Full-matrix evaluation is limited to
/// r + k <= 5 and s + t <= 4 on every subexpression (OutOfRegime otherwise).
RationalMatrix evaluate_cobordism(const CobordismExpr& e, const TheoryParams& theory, const ExecOptions& opts = {});

/// A connected piece of a normalized cobordism.
struct SurfaceComponent {
  int genus = 0;
  std::vector<int> inputs;   // positions among the expression's input circles
  std::vector<int> outputs;  // positions among its output circles
};

/// Glues the expression into connected surfaces (union-find over pieces,
/// Euler characteristic for the genus). Components come in order of first
/// boundary circle; closed components follow.
std::vector<SurfaceComponent> surface_components(const CobordismExpr& e);

/// The equivalent tensor product of single atoms; DomainError if the
/// components cannot be written as an ordered disjoint union.
CobordismPtr normalize_cobordism(const CobordismExpr& e);

/// evaluate(e) against evaluate(normalize(e)).
ReportEntry direct_vs_composed(const CobordismExpr& e, const TheoryParams& theory, const ExecOptions& opts = {});

}  // namespace grasstqft
