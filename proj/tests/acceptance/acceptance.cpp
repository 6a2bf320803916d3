// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "f_class_oracle.hpp"
#include "grasstqft/cobordism.hpp"
#include "grasstqft/errors.hpp"
#include "grasstqft/suites.hpp"
#include "grasstqft/tqft.hpp"
#include "grasstqft/vi_engine.hpp"
#include "lr_oracle.hpp"

using namespace grasstqft;

namespace {

struct Tally {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& witness) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(witness);
    if (!ok && failures.size() >= 5) failures.back() = witness + " (and more)";
  }
  template <class A, class B>
  void equal(const A& a, const B& b, const std::string& where) {
    std::ostringstream os;
    os << where << ": " << a << " != " << b;
    expect(a == b, os.str());
  }
};

Integer ipow(long base, unsigned e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

Integer choose(long n, long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

std::string show(const Multipartition& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? "," : "") << "(";
    for (int j = 0; j < m[i].length(); ++j) os << (j ? "," : "") << m[i].row(static_cast<std::size_t>(j));
    os << ")";
  }
  return os.str() + "]";
}

std::string tag(int g, int r, int k) {
  return "g=" + std::to_string(g) + " r=" + std::to_string(r) + " k=" + std::to_string(k);
}

// Every theory with r >= 1, k >= 0 and r + k <= nmax.
std::vector<TheoryParams> theories(int nmax, int kmin = 0) {
  std::vector<TheoryParams> out;
  for (int n = 1; n <= nmax; ++n)
    for (int r = 1; r <= n; ++r)
      if (n - r >= kmin) out.emplace_back(r, n - r);
  return out;
}

// Multisets of nonempty partitions in the box with total weight <= wmax; empty
// labels contribute a_empty = 1 to an integrand, so they are left out.
std::vector<Multipartition> integrands(const TheoryParams& th, int wmax) {
  std::vector<Partition> nonempty;
  for (const auto& p : enumerate_basis(th.r, th.k))
    if (p.weight() > 0) nonempty.push_back(p);
  std::vector<Multipartition> out{{}};
  Multipartition cur;
  std::function<void(std::size_t, int)> grow = [&](std::size_t from, int w) {
    for (std::size_t i = from; i < nonempty.size(); ++i) {
      if (w + nonempty[i].weight() > wmax) continue;
      cur.push_back(nonempty[i]);
      out.push_back(cur);
      grow(i, w + nonempty[i].weight());
      cur.pop_back();
    }
  };
  grow(0, 0);
  return out;
}

// Instances recorded by criteria 1-5 for the float comparison of criterion 10.
struct FloatCase {
  std::string where;
  std::function<FloatApprox(unsigned)> approx;
  Integer exact;
};

class Gate {
 public:
  explicit Gate(ExecOptions opts) : opts_(opts) {}

  void run(int id, const std::string& title, const std::function<void(Tally&)>& body) {
    Tally tally;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(tally);
    } catch (const std::exception& e) {
      tally.expect(false, std::string("exception: ") + e.what());
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    const bool ok = tally.failures.empty() && tally.checks > 0;
    if (!ok) ++failed_;
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << title << " (" << tally.checks
              << " checks, " << ms << " ms)\n";
    for (const auto& f : tally.failures) std::cout << "    witness: " << f << "\n";
    if (tally.checks == 0) std::cout << "    no checks ran\n";
    std::cout.flush();
  }

  int failed() const { return failed_; }
  const ExecOptions& opts() const { return opts_; }
  std::vector<FloatCase>& float_cases() { return float_cases_; }

 private:
  ExecOptions opts_;
  int failed_ = 0;
  std::vector<FloatCase> float_cases_;
};

void rank_one(Gate& gate, Tally& t) {
  for (int k = 0; k <= 6; ++k)
    for (int g = 0; g <= 5; ++g) {
      const Integer v = verlinde_closed(g, 1, k, gate.opts());
      t.equal(v, ipow(k + 1, static_cast<unsigned>(g)), tag(g, 1, k));
      gate.float_cases().push_back({"closed " + tag(g, 1, k),
                                    [=, &gate](unsigned p) { return verlinde_closed_float(g, 1, k, p, gate.opts()); }, v});
    }
}

void genus_one(Gate& gate, Tally& t) {
  for (const auto& th : theories(8)) {
    const Integer v = verlinde_closed(1, th.r, th.k, gate.opts());
    t.equal(v, choose(th.n(), th.r), tag(1, th.r, th.k));
    gate.float_cases().push_back(
        {"closed " + tag(1, th.r, th.k), [=, &gate](unsigned p) { return verlinde_closed_float(1, th.r, th.k, p, gate.opts()); }, v});
  }
}

void via_quot(Gate& gate, Tally& t) {
  for (const auto& th : theories(6))
    for (int g = 0; g <= 3; ++g) {
      const Integer closed = verlinde_closed(g, th.r, th.k, gate.opts());
      for (int j = 0; j <= 2; ++j) {
        const std::int64_t d = static_cast<std::int64_t>(th.r) * (g + j);
        const Integer q = verlinde_via_quot(g, th.r, th.k, d, gate.opts());
        t.equal(q, closed, tag(g, th.r, th.k) + " d=" + std::to_string(d));
        gate.float_cases().push_back({"via-quot " + tag(g, th.r, th.k) + " d=" + std::to_string(d),
                                      [=, &gate](unsigned p) { return verlinde_via_quot_float(g, th.r, th.k, d, p, gate.opts()); },
                                      q});
      }
    }
}

void open_vs_parabolic(Gate& gate, Tally& t) {
  for (const auto& th : theories(5))
    for (int g = 0; g <= 2; ++g)
      for (const auto& parts : integrands(th, 4)) {
        const std::int64_t w = weight(parts);
        // Two consecutive valid degrees per integrand (they differ by r). k d = |parts|
        // mod r may have no solution at all; residues repeat with period r.
        int found = 0;
        std::int64_t limit = -1;
        for (std::int64_t d = 0; found < 2 && (limit < 0 || d <= limit); ++d) {
          if (limit < 0 && th.n() * d - static_cast<std::int64_t>(th.r) * th.k * (g - 1) - w >= 0) limit = d + 2 * th.r;
          const std::int64_t rhs = th.n() * d - static_cast<std::int64_t>(th.r) * th.k * (g - 1) - w;
          if (rhs < 0 || rhs % th.r != 0) continue;
          // The selection rule is exactly the integrality of t here.
          if (((w - static_cast<std::int64_t>(th.k) * d) % th.r + th.r) % th.r != 0) {
            t.expect(false, "selection rule disagrees with integrality at " + tag(g, th.r, th.k));
          }
          ++found;
          const std::int64_t top = rhs / th.r;
          const Rational open = open_intersection(g, th.r, th.k, d, parts, top, gate.opts());
          const Integer stack = parabolic_verlinde(g, th.r, th.k, d, parts, gate.opts());
          const std::string where = tag(g, th.r, th.k) + " d=" + std::to_string(d) + " parts=" + show(parts);
          t.equal(open, Rational(stack), where);
          gate.float_cases().push_back(
              {"open " + where,
               [=, &gate](unsigned p) { return open_intersection_float(g, th.r, th.k, d, parts, top, p, gate.opts()); },
               stack});
          gate.float_cases().push_back(
              {"parabolic " + where,
               [=, &gate](unsigned p) { return parabolic_verlinde_float(g, th.r, th.k, d, parts, p, gate.opts()); },
               stack});
        }
      }
}

void level_rank(Gate& gate, Tally& t) {
  for (const auto& th : theories(6, 1)) {
    for (int g = 0; g <= 3; ++g) {
      t.equal(verlinde_closed(g, th.r, th.k, gate.opts()), verlinde_closed(g, th.k, th.r, gate.opts()),
              "closed " + tag(g, th.r, th.k));
    }
    // Open elements: every choice of up to two labels per side, total weight <= 3.
    const auto labels = sample_labels(th, 2, 3);
    for (int g = 0; g <= 3; ++g)
      for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = 0; b < labels.size(); ++b) {
          if (weight(labels[a]) + weight(labels[b]) > 3) continue;
          const MatrixElementQuery q{g, labels[a], labels[b], th};
          const ReportEntry e = level_rank_check(q, gate.opts());
          t.expect(e.pass, e.instance + ": " + e.lhs + " != " + e.rhs);
          const Integer exact = matrix_element(q, gate.opts());
          if (exact != 0) {
            gate.float_cases().push_back(
                {"element " + e.instance, [=, &gate](unsigned p) { return matrix_element_float(q, p, gate.opts()); }, exact});
          }
        }
  }
}

void fusion_lr(Gate& gate, Tally& t) {
  for (const auto& th : theories(6)) {
    const FusionTable table = FusionTable::build(th, gate.opts());
    const auto& basis = table.basis();
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t c = 0; c < basis.size(); ++c) {
          if (basis[c].weight() != basis[a].weight() + basis[b].weight()) continue;
          const long lr = lr_oracle::coefficient(basis[a], basis[b], basis[c]);
          t.equal(table.constant(a, b, c), Integer(lr),
                  "r=" + std::to_string(th.r) + " k=" + std::to_string(th.k) + " N" + show({basis[a], basis[b]}) + "^" +
                      show({basis[c]}));
        }
  }
  const FusionTable p1 = FusionTable::build(TheoryParams(1, 1), gate.opts());
  const std::size_t one = p1.index_of(Partition({1})), empty = p1.index_of(Partition());
  t.equal(p1.constant(one, one, empty), Integer(1), "N_{(1),(1)}^{empty} on the projective line");
}

void frobenius(Gate& gate, Tally& t) {
  for (const auto& th : theories(6)) {
    for (const auto& e : verify_frobenius(FusionTable::build(th, gate.opts()))) {
      t.expect(e.pass, e.check + " " + e.instance + ": " + e.lhs + " vs " + e.rhs);
    }
  }
}

void functoriality(Gate& gate, Tally& t) {
  auto record = [&](const ReportEntry& e) { t.expect(e.pass, e.check + " " + e.instance + ": " + e.lhs + " != " + e.rhs); };
  for (const auto& th : theories(4)) {
    const auto labels = sample_labels(th, 1, 4);
    for (int tt = 1; tt <= 2; ++tt)
      for (int g1 = 0; g1 <= 2; ++g1)
        for (int g2 = 0; g2 <= 2; ++g2)
          for (const auto& in : labels)
            for (const auto& out : labels) {
              if (weight(in) + weight(out) > 4) continue;
              record(verify_gluing(g1, g2, in, out, tt, th, gate.opts()));
            }
  }
  for (const auto& th : theories(5)) {
    // Every pair of label lists with at most two labels a side and total weight <= 4.
    const auto labels = sample_labels(th, 2, 4);
    for (int g = 1; g <= 3; ++g)
      for (const auto& in : labels)
        for (const auto& out : labels) {
          if (weight(in) + weight(out) > 4) continue;
          record(verify_handle(g, in, out, th, gate.opts()));
        }
    const auto singles = sample_labels(th, 1, 4);
    for (int g1 = 0; g1 <= 2; ++g1)
      for (int g2 = 0; g2 <= 2; ++g2)
        for (const auto& in1 : singles)
          for (const auto& in2 : singles)
            for (const auto& out2 : singles) {
              if (weight(in1) + weight(in2) + weight(out2) > 4) continue;
              record(verify_degeneration_split(g1, g2, in1, in2, {}, out2, th, gate.opts()));
            }
    for (const char* text : {"W(0;1->2) . W(0;2->1)", "W(0;2->1) . W(0;1->2)", "W(0;1->2) . W(0;2->2) . W(0;2->1)",
                             "W(1;1->1) . W(1;1->1)", "W(0;0->1) * id . W(0;2->1)"}) {
      record(direct_vs_composed(*parse_cobordism(text), th, gate.opts()));
    }
  }
}

void p5_family(Gate& gate, Tally& t) {
  const SymPoly a1 = SymPoly::variable(1, 1);
  t.equal(vi_integral({0, 1, 1, 3, a1.pow(5)}, gate.opts()), Rational(1), "n=3 d=1 a1^5");
  for (int n = 1; n <= 4; ++n)
    for (int d = 0; d <= 3; ++d) {
      t.equal(vi_integral({0, d, 1, n, a1.pow(n * (d + 1) - 1)}, gate.opts()), Rational(1),
              "n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
}

void backends(Gate& gate, Tally& t) {
  for (const auto& c : gate.float_cases()) {
    const FloatApprox a = c.approx(128);
    t.expect(a.value.round() == c.exact, c.where + ": " + a.value.to_string(40) + " vs " + to_string(c.exact));
  }
}

void f_class(Gate& gate, Tally& t) {
  const int r = 2, n = 3, g = 2;
  const SymPoly x1 = SymPoly::variable(r, 1), x2 = SymPoly::variable(r, 2);
  const SymPoly e1 = x1 + x2, e2 = x1 * x2;
  // deg P + l - 1 = e = 3d - 2 for (r, n, g) = (2, 3, 2), l = 2.
  std::vector<std::pair<int, std::vector<SymPoly>>> by_degree{
      {1, {SymPoly::constant(r, Rational(1))}},
      {2, {e1.pow(3), e1 * e2, schur_poly(Partition({3}), r), schur_poly(Partition({2, 1}), r) * Rational(4)}},
      {3, {e1.pow(6), e2.pow(2) * e1.pow(2) - e1.pow(6), schur_poly(Partition({4, 2}), r), e2.pow(3)}},
  };
  for (const auto& [d, polys] : by_degree) {
    for (const auto& p : polys) {
      t.equal(f_class_integral(g, r, n, d, 2, p, gate.opts()), f_class_oracle::integral(g, r, n, d, 2, p),
              "oracle d=" + std::to_string(d) + " P=" + p.to_string());
    }
    for (std::size_t i = 0; i + 1 < polys.size(); ++i) {
      const Rational a = ratio(7, 3), b = ratio(-5, 2);
      const SymPoly combo = polys[i] * a + polys[i + 1] * b;
      t.equal(f_class_integral(g, r, n, d, 2, combo, gate.opts()),
              a * f_class_integral(g, r, n, d, 2, polys[i], gate.opts()) +
                  b * f_class_integral(g, r, n, d, 2, polys[i + 1], gate.opts()),
              "linearity d=" + std::to_string(d));
    }
  }
  // Genus one, constant input. D_l kills constants when g = 1, so the root sum
  // vanishes in every degree. A nonzero constant is never of top degree there
  // (n d = l - 1 has no solution with l <= r <= n), so the engine's entry point
  // is exercised on the zero constant, the one that meets the degree condition.
  for (int rr = 2; rr <= 4; ++rr)
    for (int nn = rr; nn <= 6; ++nn)
      for (int l = 2; l <= rr; ++l) {
        const std::string where = "g=1 r=" + std::to_string(rr) + " n=" + std::to_string(nn) + " l=" + std::to_string(l);
        const SymPoly c = SymPoly::constant(rr, Rational(5));
        t.expect(apply_Dl(c, l, 1, rr, nn) == SymPoly(rr), "D_l(constant) != 0 at " + where);
        for (int d = 0; d <= 2; ++d) {
          t.equal(f_class_oracle::integral(1, rr, nn, d, l, c), Rational(0), "root sum " + where);
          if (nn * d >= l - 1) {
            t.equal(f_class_integral(1, rr, nn, d, l, SymPoly(rr), gate.opts()), Rational(0), "engine " + where);
          }
        }
        bool rejected = false;
        try {
          f_class_integral(1, rr, nn, 1, l, c, gate.opts());
        } catch (const DimensionMismatch&) {
          rejected = true;
        }
        t.expect(rejected, "nonzero constant accepted off top degree at " + where);
      }
}

}  // namespace

int main() {
  const unsigned hw = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  Gate gate(ExecOptions{hw});
  gate.run(1, "rank one: V_g = (k+1)^g for g <= 5, k <= 6", [&](Tally& t) { rank_one(gate, t); });
  gate.run(2, "genus one: V_1 = C(r+k, r) for r+k <= 8", [&](Tally& t) { genus_one(gate, t); });
  gate.run(3, "Quot route equals the closed formula, d in {rg, rg+r, rg+2r}", [&](Tally& t) { via_quot(gate, t); });
  gate.run(4, "open intersection equals parabolic Verlinde (g <= 2, r+k <= 5, weight <= 4)",
           [&](Tally& t) { open_vs_parabolic(gate, t); });
  gate.run(5, "level-rank duality, closed and sampled open (g <= 3, r+k <= 6)", [&](Tally& t) { level_rank(gate, t); });
  gate.run(6, "degree-0 fusion constants equal Littlewood-Richardson (r+k <= 6)", [&](Tally& t) { fusion_lr(gate, t); });
  gate.run(7, "Frobenius algebra axioms (r+k <= 6)", [&](Tally& t) { frobenius(gate, t); });
  gate.run(8, "gluing, handle and splitting degenerations, cobordism identities", [&](Tally& t) { functoriality(gate, t); });
  gate.run(9, "projective space family a1^{n(d+1)-1} = 1", [&](Tally& t) { p5_family(gate, t); });
  gate.run(10, "128-bit float backend rounds to the exact value on criteria 1-5", [&](Tally& t) { backends(gate, t); });
  gate.run(11, "f-class linearity, genus-one vanishing and oracle agreement", [&](Tally& t) { f_class(gate, t); });
  std::cout << (gate.failed() == 0 ? "all criteria passed" : std::to_string(gate.failed()) + " criteria failed") << "\n";
  return gate.failed() == 0 ? 0 : 1;
}
