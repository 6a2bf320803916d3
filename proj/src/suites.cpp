#include "grasstqft/suites.hpp"

#include <functional>
#include <sstream>

#include "grasstqft/cobordism.hpp"
#include "grasstqft/errors.hpp"

namespace grasstqft {

namespace {

std::string describe(const Multipartition& m) { return to_json(m).dump(); }

std::string head(const TheoryParams& theory, int g) {
  return "r=" + std::to_string(theory.r) + " k=" + std::to_string(theory.k) + " g=" + std::to_string(g);
}

ReportEntry entry(std::string check, std::string instance, const Integer& lhs, const Integer& rhs) {
  return {std::move(check), std::move(instance), lhs == rhs, to_string(lhs), to_string(rhs)};
}

ReportEntry rounded(std::string check, std::string instance, const FloatApprox& approx, const Integer& exact) {
  const Integer value = approx.value.round();
  return {std::move(check), std::move(instance), value == exact, approx.value.to_string(30), to_string(exact)};
}

}  // namespace

std::vector<Multipartition> sample_labels(const TheoryParams& theory, int max_labels, int max_weight) {
  const auto basis = enumerate_basis(theory.r, theory.k);
  std::vector<Multipartition> out{{}};
  std::function<void(Multipartition&, std::size_t, int)> grow = [&](Multipartition& cur, std::size_t from, int w) {
    if (static_cast<int>(cur.size()) == max_labels) return;
    for (std::size_t i = from; i < basis.size(); ++i) {
      if (w + basis[i].weight() > max_weight) continue;
      cur.push_back(basis[i]);
      out.push_back(cur);
      grow(cur, i, w + basis[i].weight());
      cur.pop_back();
    }
  };
  Multipartition cur;
  grow(cur, 0, 0);
  return out;
}

std::vector<OpenInstance> open_instances(const TheoryParams& theory, const SuiteBounds& bounds) {
  const int r = theory.r, k = theory.k, n = theory.n();
  std::vector<OpenInstance> out;
  for (int g = 0; g <= bounds.gmax; ++g) {
    for (const auto& parts : sample_labels(theory, bounds.max_labels, bounds.max_weight)) {
      const std::int64_t w = weight(parts);
      int found = 0;
      for (std::int64_t d = 0; found < 2 && d <= 4 * r + bounds.max_weight + r * (g + 1); ++d) {
        const std::int64_t rhs = n * d - static_cast<std::int64_t>(r) * k * (g - 1) - w;
        if (rhs < 0 || rhs % r != 0) continue;
        out.push_back({g, d, parts, rhs / r});
        ++found;
      }
    }
  }
  return out;
}

Report suite_frobenius(const TheoryParams& theory, const ExecOptions& opts) {
  Report report = verify_frobenius(FusionTable::build(theory, opts));
  for (auto& e : verify_structure_constant_forms(theory, opts)) report.push_back(std::move(e));
  return report;
}

Report suite_gluing(const TheoryParams& theory, const SuiteBounds& bounds, const ExecOptions& opts) {
  Report report;
  const auto labels = sample_labels(theory, 1, bounds.max_weight);
  for (int t = 1; t <= 2; ++t)
    for (int g1 = 0; g1 <= bounds.gmax; ++g1)
      for (int g2 = 0; g2 <= bounds.gmax; ++g2) {
        if (g1 + g2 + t - 1 > bounds.gmax + 1) continue;
        for (const auto& in : labels)
          for (const auto& out : labels) {
            if (weight(in) + weight(out) > bounds.max_weight) continue;
            report.push_back(verify_gluing(g1, g2, in, out, t, theory, opts));
          }
      }
  if (theory.n() <= 5) {
    for (const char* text : {"W(0;1->2) . W(0;2->1)", "W(1;1->1) . W(1;1->1)", "W(0;0->1) * id . W(0;2->1)",
                             "W(0;2->1) . W(0;1->2)", "W(0;0->2) . W(0;2->0)"}) {
      report.push_back(direct_vs_composed(*parse_cobordism(text), theory, opts));
    }
  }
  return report;
}

Report suite_degeneration(const TheoryParams& theory, const SuiteBounds& bounds, const ExecOptions& opts) {
  Report report;
  const auto labels = sample_labels(theory, bounds.max_labels, bounds.max_weight);
  for (int g = 1; g <= bounds.gmax; ++g)
    for (const auto& in : labels)
      for (const auto& out : labels) {
        if (weight(in) + weight(out) > bounds.max_weight) continue;
        report.push_back(verify_handle(g, in, out, theory, opts));
      }
  const auto singles = sample_labels(theory, 1, bounds.max_weight);
  for (int g1 = 0; g1 <= bounds.gmax; ++g1)
    for (int g2 = 0; g1 + g2 <= bounds.gmax; ++g2)
      for (const auto& in1 : singles)
        for (const auto& in2 : singles)
          for (const auto& out1 : singles) {
            if (weight(in1) + weight(in2) + weight(out1) > bounds.max_weight) continue;
            report.push_back(verify_degeneration_split(g1, g2, in1, in2, out1, {}, theory, opts));
          }
  return report;
}

Report suite_levelrank(const TheoryParams& theory, const SuiteBounds& bounds, const ExecOptions& opts) {
  if (theory.k < 1) throw DomainError("level-rank duality needs k >= 1");
  Report report;
  for (int g = 0; g <= bounds.gmax; ++g) {
    const Integer a = verlinde_closed(g, theory.r, theory.k, opts), b = verlinde_closed(g, theory.k, theory.r, opts);
    report.push_back(entry("level-rank-closed", head(theory, g), a, b));
  }
  const auto labels = sample_labels(theory, bounds.max_labels, bounds.max_weight);
  for (int g = 0; g <= bounds.gmax; ++g)
    for (const auto& in : labels)
      for (const auto& out : labels) {
        if (weight(in) + weight(out) > bounds.max_weight) continue;
        report.push_back(level_rank_check({g, in, out, theory}, opts));
      }
  return report;
}

Report suite_open_parabolic(const TheoryParams& theory, const SuiteBounds& bounds, const ExecOptions& opts) {
  Report report;
  for (const auto& inst : open_instances(theory, bounds)) {
    const Rational open = open_intersection(inst.g, theory.r, theory.k, inst.d, inst.parts, inst.t, opts);
    const Integer stack = parabolic_verlinde(inst.g, theory.r, theory.k, inst.d, inst.parts, opts);
    std::ostringstream os;
    os << head(theory, inst.g) << " d=" << inst.d << " t=" << inst.t << " parts=" << describe(inst.parts);
    report.push_back({"open-vs-parabolic", os.str(), open == Rational(stack), to_string(open), to_string(stack)});
  }
  return report;
}

Report suite_backends(const TheoryParams& theory, const SuiteBounds& bounds, const ExecOptions& opts) {
  Report report;
  const unsigned prec = bounds.precision;
  const int r = theory.r, k = theory.k;
  for (int g = 0; g <= bounds.gmax; ++g) {
    report.push_back(rounded("float-closed", head(theory, g), verlinde_closed_float(g, r, k, prec, opts),
                             verlinde_closed(g, r, k, opts)));
    for (int j = 0; j <= 2; ++j) {
      const std::int64_t d = static_cast<std::int64_t>(r) * (g + j);
      report.push_back(rounded("float-via-quot", head(theory, g) + " d=" + std::to_string(d),
                               verlinde_via_quot_float(g, r, k, d, prec, opts), verlinde_via_quot(g, r, k, d, opts)));
    }
  }
  for (const auto& inst : open_instances(theory, bounds)) {
    std::ostringstream os;
    os << head(theory, inst.g) << " d=" << inst.d << " parts=" << describe(inst.parts);
    const Integer exact = parabolic_verlinde(inst.g, r, k, inst.d, inst.parts, opts);
    report.push_back(rounded("float-open", os.str(),
                             open_intersection_float(inst.g, r, k, inst.d, inst.parts, inst.t, prec, opts), exact));
    report.push_back(rounded("float-parabolic", os.str(),
                             parabolic_verlinde_float(inst.g, r, k, inst.d, inst.parts, prec, opts), exact));
  }
  return report;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"frobenius", "gluing", "degeneration", "levelrank", "appendix", "backends"};
  return names;
}

Report run_suite(const std::string& name, const TheoryParams& theory, const SuiteBounds& bounds,
                 const ExecOptions& opts) {
  if (name == "frobenius") return suite_frobenius(theory, opts);
  if (name == "gluing") return suite_gluing(theory, bounds, opts);
  if (name == "degeneration") return suite_degeneration(theory, bounds, opts);
  if (name == "levelrank") return suite_levelrank(theory, bounds, opts);
  if (name == "appendix") return suite_open_parabolic(theory, bounds, opts);
  if (name == "backends") return suite_backends(theory, bounds, opts);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace grasstqft
