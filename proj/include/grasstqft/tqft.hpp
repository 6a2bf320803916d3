#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "grasstqft/json_io.hpp"
#include "grasstqft/vi_engine.hpp"

namespace grasstqft {

/// F(g) with labeled inputs and outputs, in the theory (r, k).
struct MatrixElementQuery {
  int g = 0;
  Multipartition inputs;
  Multipartition outputs;
  TheoryParams theory;
};

/// A matrix element together with the bookkeeping that produced it.
struct MatrixElementTrace {
  Integer value;
  /// Quot degree d = (|in| - |out|)/n + r (g + u); empty when not an integer.
  std::optional<std::int64_t> d;
  /// Power of a_r in the integrand, r (g + u) + k.
  std::int64_t t = 0;
  /// "integral", "non-integral degree" or "negative degree".
  std::string reason;
};

/// F(g)_in^out: the integral of a_in a_{out*} a_r^{r(g+u)+k}, u = #outputs,
/// at the unique degree making it top-dimensional; 0 if no such degree.
Integer matrix_element(const MatrixElementQuery& q, const ExecOptions& opts = {});
MatrixElementTrace matrix_element_explain(const MatrixElementQuery& q, const ExecOptions& opts = {});
FloatApprox matrix_element_float(const MatrixElementQuery& q, unsigned precision, const ExecOptions& opts = {});

/// One line of a verification report; lhs/rhs carry exact values.
struct ReportEntry {
  std::string check;
  std::string instance;
  bool pass = true;
  std::string lhs;
  std::string rhs;
};
using Report = std::vector<ReportEntry>;

json to_json(const ReportEntry& e);
json to_json(const Report& report);
bool all_pass(const Report& report);

/// Genus-0 data of the theory: metric G_{ab} = F(0)_{a,b} and structure
/// constants N_{ab}^c = F(0)_{a,b}^c over the graded-lex basis of P_{r,k}.
class FusionTable {
 public:
  static FusionTable build(const TheoryParams& theory, const ExecOptions& opts = {});

  const TheoryParams& theory() const { return theory_; }
  const std::vector<Partition>& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }
  std::size_t index_of(const Partition& p) const;

  const Integer& metric(std::size_t a, std::size_t b) const { return metric_[a * size() + b]; }
  const Integer& constant(std::size_t a, std::size_t b, std::size_t c) const {
    return constants_[(a * size() + b) * size() + c];
  }
  /// Copy with one structure constant replaced (fault injection in tests).
  FusionTable with_constant(std::size_t a, std::size_t b, std::size_t c, const Integer& value) const;

  /// SHA-256 over the canonical JSON of theory, basis, metric and constants.
  std::string content_hash() const;

  json to_json() const;
  /// Rejects a stored hash that does not match the content. Unless `trusted`,
  /// the loaded table must also pass verify_frobenius.
  static FusionTable from_json(const json& j, bool trusted = false);

  void save(const std::filesystem::path& file) const;
  static FusionTable load(const std::filesystem::path& file, bool trusted = false);

 private:
  json content_json() const;

  TheoryParams theory_;
  std::vector<Partition> basis_;
  std::vector<Integer> metric_;
  std::vector<Integer> constants_;
};

/// <dir>/fusion-r<r>-k<k>.json
std::filesystem::path fusion_cache_path(const std::filesystem::path& dir, const TheoryParams& theory);

/// Loads the cached table when present and valid, otherwise builds it and
/// (re)writes the cache file. `rebuilt` reports which path was taken.
FusionTable cached_fusion_table(const std::filesystem::path& dir, const TheoryParams& theory, const ExecOptions& opts,
                                bool* rebuilt = nullptr);

/// Commutativity, associativity, unit, Frobenius compatibility, metric
/// symmetry and nondegeneracy, and nonnegativity of the constants.
Report verify_frobenius(const FusionTable& table);

/// sum over mu in P^t of F(g1)_in^mu F(g2)_mu^out  vs  F(g1+g2+t-1)_in^out; 1 <= t <= 3.
ReportEntry verify_gluing(int g1, int g2, const Multipartition& in, const Multipartition& out, int t,
                          const TheoryParams& theory, const ExecOptions& opts = {});

/// F(g)_in^out vs sum_rho F(g-1)_{in,rho}^{out,rho}; g >= 1.
ReportEntry verify_handle(int g, const Multipartition& in, const Multipartition& out, const TheoryParams& theory,
                          const ExecOptions& opts = {});

/// F(g1+g2)_{in1,in2}^{out1,out2} vs sum_rho F(g1)_{in1,rho}^{out1} F(g2)_{in2}^{out2,rho}.
ReportEntry verify_degeneration_split(int g1, int g2, const Multipartition& in1, const Multipartition& in2,
                                      const Multipartition& out1, const Multipartition& out2,
                                      const TheoryParams& theory, const ExecOptions& opts = {});

/// F(g)_in^out in (r, k) vs the transposed query in (k, r); needs k >= 1.
ReportEntry level_rank_check(const MatrixElementQuery& q, const ExecOptions& opts = {});

/// N_{ab}^c computed with the a_r^{r+k} factor at degree d versus without it
/// at degree d - r (taken as 0 when that degree is negative), for all triples.
Report verify_structure_constant_forms(const TheoryParams& theory, const ExecOptions& opts = {});

}  // namespace grasstqft
