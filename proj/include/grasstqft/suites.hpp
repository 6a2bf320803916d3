#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grasstqft/tqft.hpp"

namespace grasstqft {

/// Bounds shared by the verification suites.
struct SuiteBounds {
  int gmax = 2;
  /// Total weight of all labels in one sampled instance.
  int max_weight = 4;
  /// Labels per side in sampled instances (each label may be the empty partition).
  int max_labels = 2;
  unsigned precision = 128;
};

/// Multipartitions built from P_{r,k} with at most `max_labels` labels (in
/// nondecreasing basis order) and total weight at most `max_weight`.
std::vector<Multipartition> sample_labels(const TheoryParams& theory, int max_labels, int max_weight);

/// A valid instance of the open Quot integral: the selection rule holds and
/// the dimension equation has a nonnegative integral solution t.
struct OpenInstance {
  int g = 0;
  std::int64_t d = 0;
  Multipartition parts;
  std::int64_t t = 0;
};

/// For each g <= gmax and each sampled integrand, the two smallest degrees d
/// with a valid instance (the second one is d + r).
std::vector<OpenInstance> open_instances(const TheoryParams& theory, const SuiteBounds& bounds);

Report suite_frobenius(const TheoryParams& theory, const ExecOptions& opts = {});
Report suite_gluing(const TheoryParams& theory, const SuiteBounds& bounds, const ExecOptions& opts = {});
Report suite_degeneration(const TheoryParams& theory, const SuiteBounds& bounds, const ExecOptions& opts = {});
Report suite_levelrank(const TheoryParams& theory, const SuiteBounds& bounds, const ExecOptions& opts = {});
/// open_intersection against parabolic_verlinde on open_instances.
Report suite_open_parabolic(const TheoryParams& theory, const SuiteBounds& bounds, const ExecOptions& opts = {});
/// Float backend at bounds.precision, rounded, against the exact backend.
Report suite_backends(const TheoryParams& theory, const SuiteBounds& bounds, const ExecOptions& opts = {});

/// Dispatch by name; DomainError for an unknown suite.
Report run_suite(const std::string& name, const TheoryParams& theory, const SuiteBounds& bounds,
                 const ExecOptions& opts = {});
const std::vector<std::string>& suite_names();

}  // namespace grasstqft
