#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "grasstqft/errors.hpp"
#include "grasstqft/tqft.hpp"
#include "lr_oracle.hpp"

using namespace grasstqft;

namespace {

Partition P(std::vector<int> rows) { return Partition(std::move(rows)); }

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("grasstqft-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("matrix elements") {
  const TheoryParams t21(2, 1), t12(1, 2);
  CHECK(matrix_element({1, {}, {}, t21}) == 3);
  CHECK(matrix_element({2, {}, {}, t21}) == 9);
  for (int g = 0; g <= 3; ++g) {
    CHECK(matrix_element({g, {P({1})}, {}, t12}) == 0);
    CHECK(matrix_element({g, {}, {}, t21}) == verlinde_closed(g, 2, 1));
  }
  const auto trace = matrix_element_explain({1, {P({1})}, {}, t12});
  CHECK(trace.reason == "non-integral degree");
  CHECK_FALSE(trace.d.has_value());
  const auto closed = matrix_element_explain({2, {}, {}, t21});
  REQUIRE(closed.d.has_value());
  CHECK(*closed.d == 4);
  CHECK(closed.t == 5);
  CHECK_THROWS_AS(matrix_element({1, {P({2})}, {}, t21}), DomainError);

  // Permutation invariance within inputs and within outputs.
  const TheoryParams t22(2, 2);
  const Multipartition in{P({1}), P({2, 1}), P({1, 1})};
  Multipartition perm = in;
  std::sort(perm.begin(), perm.end());
  do {
    CHECK(matrix_element({1, perm, {P({2})}, t22}) == matrix_element({1, in, {P({2})}, t22}));
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(matrix_element({0, {P({1})}, {P({1}), P({2})}, t22}) == matrix_element({0, {P({1})}, {P({2}), P({1})}, t22}));

  // Empty multipartition versus one empty part: different u, different numbers.
  CHECK(matrix_element({1, {}, {P({})}, t21}) == 3);
  CHECK(matrix_element({0, {P({})}, {}, t21}) == 1);
  CHECK(matrix_element_float({2, {}, {}, t21}, 128).value.round() == 9);
}

TEST_CASE("fusion table of the projective line") {
  const auto t = FusionTable::build(TheoryParams(1, 1));
  REQUIRE(t.size() == 2);
  CHECK(t.metric(0, 0) == 1);
  CHECK(t.metric(0, 1) == 0);
  CHECK(t.metric(1, 0) == 0);
  CHECK(t.metric(1, 1) == 1);
  CHECK(t.constant(1, 1, 0) == 1);
  CHECK(t.constant(1, 1, 1) == 0);
  CHECK(all_pass(verify_frobenius(t)));
}

TEST_CASE("degree-0 constants are Littlewood-Richardson coefficients") {
  for (int r = 1; r <= 3; ++r) {
    for (int k = 1; r + k <= 5; ++k) {
      const auto t = FusionTable::build(TheoryParams(r, k));
      const auto& B = t.basis();
      for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b)
          for (std::size_t c = 0; c < t.size(); ++c)
            if (B[c].weight() == B[a].weight() + B[b].weight())
              CHECK(t.constant(a, b, c) == lr_oracle::coefficient(B[a], B[b], B[c]));
    }
  }
}

TEST_CASE("Frobenius axioms and fault injection") {
  const auto t = FusionTable::build(TheoryParams(2, 2), {4});
  const auto report = verify_frobenius(t);
  for (const auto& e : report) CHECK_MESSAGE(e.pass, e.check << " " << e.instance);
  const auto bad = t.with_constant(1, 1, 2, t.constant(1, 1, 2) + 1);
  const auto bad_report = verify_frobenius(bad);
  const auto it = std::find_if(bad_report.begin(), bad_report.end(), [](const auto& e) { return e.check == "associativity"; });
  REQUIRE(it != bad_report.end());
  CHECK_FALSE(it->pass);
  CHECK(it->instance.find('(') != std::string::npos);
  CHECK(it->lhs != it->rhs);
  CHECK(to_json(bad_report).dump().find("\"fail\"") != std::string::npos);
}

TEST_CASE("fusion table persistence") {
  const TheoryParams theory(2, 1);
  const auto t = FusionTable::build(theory);
  const json j = t.to_json();
  CHECK(j.at("hash").get<std::string>().size() == 64);
  CHECK(j.at("metric")[0][0].is_string());
  const auto back = FusionTable::from_json(j);
  CHECK(back.to_json() == j);

  json tampered = j;
  tampered["metric"][0][0] = "7";
  CHECK_THROWS_AS(FusionTable::from_json(tampered), DomainError);

  // A tampered table with a recomputed hash still fails re-verification.
  const auto broken = t.with_constant(1, 1, 2, t.constant(1, 1, 2) + 1);
  CHECK_THROWS_AS(FusionTable::from_json(broken.to_json()), DomainError);
  CHECK_NOTHROW(FusionTable::from_json(broken.to_json(), true));

  const auto dir = scratch_dir("cache");
  bool rebuilt = false;
  cached_fusion_table(dir, theory, {}, &rebuilt);
  CHECK(rebuilt);
  CHECK(std::filesystem::exists(dir / "fusion-r2-k1.json"));
  const auto again = cached_fusion_table(dir, theory, {}, &rebuilt);
  CHECK_FALSE(rebuilt);
  CHECK(again.content_hash() == t.content_hash());
  {
    std::ofstream out(dir / "fusion-r2-k1.json");
    out << tampered.dump();
  }
  cached_fusion_table(dir, theory, {}, &rebuilt);
  CHECK(rebuilt);
  std::filesystem::remove_all(dir);
}

TEST_CASE("gluing") {
  const TheoryParams t21(2, 1);
  const auto e = verify_gluing(1, 1, {}, {}, 1, t21);
  CHECK(e.pass);
  CHECK(e.lhs == "9");
  for (const auto& rho : enumerate_basis(2, 1)) {
    for (const auto& lam : enumerate_basis(2, 1)) {
      CHECK(verify_gluing(1, 0, {lam}, {rho}, 1, t21).pass);
      CHECK(verify_gluing(0, 0, {lam}, {rho}, 1, t21).pass);
    }
  }
  CHECK(verify_gluing(0, 0, {P({1})}, {P({1})}, 2, t21).pass);
  CHECK(verify_gluing(1, 1, {P({1})}, {}, 2, TheoryParams(1, 2)).pass);
  CHECK_THROWS_AS(verify_gluing(0, 0, {}, {}, 4, t21), OutOfRegime);
  CHECK_THROWS_AS(verify_gluing(0, 0, {}, {}, 0, t21), DomainError);
}

TEST_CASE("degeneration") {
  const TheoryParams t21(2, 1), t12(1, 2);
  for (const auto& lam : enumerate_basis(2, 1)) {
    CHECK(verify_handle(2, {lam}, {}, t21).pass);
    CHECK(verify_handle(1, {lam}, {lam}, t21).pass);
  }
  CHECK(verify_degeneration_split(1, 1, {}, {}, {}, {}, t21).pass);
  CHECK(verify_degeneration_split(1, 1, {}, {}, {}, {}, t21).lhs == "9");
  CHECK(verify_degeneration_split(2, 0, {P({1})}, {}, {}, {}, t21).pass);
  CHECK(verify_degeneration_split(1, 1, {P({1})}, {P({1})}, {}, {}, t12).pass);
  CHECK_THROWS_AS(verify_handle(0, {}, {}, t21), DomainError);
}

TEST_CASE("level-rank") {
  for (int g = 0; g <= 3; ++g) CHECK(level_rank_check({g, {}, {}, TheoryParams(2, 3)}).pass);
  CHECK(level_rank_check({1, {P({2, 1})}, {}, TheoryParams(2, 3)}).pass);
  CHECK(level_rank_check({1, {P({2, 1}), P({1})}, {P({1, 1})}, TheoryParams(2, 2)}).pass);
  CHECK_THROWS_AS(level_rank_check({1, {}, {}, TheoryParams(2, 0)}), DomainError);
}

TEST_CASE("structure constants with and without the top-class factor") {
  for (auto [r, k] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 3}, {3, 1}, {2, 3}}) {
    const auto report = verify_structure_constant_forms(TheoryParams(r, k));
    for (const auto& e : report) CHECK_MESSAGE(e.pass, e.instance << ": " << e.lhs << " vs " << e.rhs);
  }
}
