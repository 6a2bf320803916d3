#include <doctest.h>

#include <set>

#include "grasstqft/errors.hpp"
#include "grasstqft/suites.hpp"

using namespace grasstqft;

TEST_CASE("label sampling") {
  const TheoryParams th(1, 2);  // basis: [], [1], [2]
  const auto one = sample_labels(th, 1, 4);
  CHECK(one.size() == 4);  // no label, then each basis element alone
  const auto two = sample_labels(th, 2, 2);
  // {}, {e}, {[1]}, {[2]}, {e,e}, {e,[1]}, {e,[2]}, {[1],[1]}
  CHECK(two.size() == 8);
  std::set<Multipartition> distinct(two.begin(), two.end());
  CHECK(distinct.size() == two.size());
  for (const auto& m : two) CHECK(weight(m) <= 2);
}

TEST_CASE("open instances solve the dimension equation") {
  const TheoryParams th(2, 2);
  SuiteBounds b;
  b.gmax = 1;
  const auto all = open_instances(th, b);
  REQUIRE_FALSE(all.empty());
  for (const auto& inst : all) {
    CHECK(inst.t >= 0);
    CHECK(weight(inst.parts) + th.r * inst.t == th.n() * inst.d - th.r * th.k * (inst.g - 1));
  }
}

TEST_CASE("suites pass on a small theory") {
  SuiteBounds b;
  b.gmax = 1;
  b.max_weight = 3;
  for (const auto& name : suite_names()) {
    const Report report = run_suite(name, TheoryParams(2, 1), b);
    CHECK_FALSE(report.empty());
    CHECK_MESSAGE(all_pass(report), name);
  }
  CHECK_THROWS_AS(run_suite("unknown", TheoryParams(1, 1), b), DomainError);
  CHECK_THROWS_AS(run_suite("levelrank", TheoryParams(1, 0), b), DomainError);
}
