#include <catch2/catch_amalgamated.hpp>

#include "k4ring/relation_oracle.hpp"
#include "support/battery.hpp"
#include "support/rings.hpp"

using namespace k4ring;
using namespace k4ring::testing;

TEST_CASE("relation instance counts") {
  VerificationReport rp = verify_relations(rp4());
  CHECK(rp.ok());
  REQUIRE(rp.find("1") != nullptr);
  CHECK(rp.find("1")->instances == 2);
  CHECK(rp.find("2")->instances == 4);
  CHECK(rp.find("3")->instances == 2);
  CHECK(rp.find("6")->instances == 4);

  VerificationReport cp = verify_relations(cp2(), 2);
  CHECK(cp.ok());
  CHECK(cp.find("7")->instances == 25);
  CHECK(cp.find("3")->instances == 5);
  CHECK(verify_relations(cp2(), 3).find("7")->instances == 49);
  CHECK(cp.find("nonexistent") == nullptr);
}

TEST_CASE("every relation and axiom is reported") {
  VerificationReport report = verify_relations(s4());
  for (const char* id : {"1", "2", "3", "4", "5", "6", "7", "add_unit", "mul_unit", "add_inverse", "add_commutative",
                         "mul_commutative", "add_associative", "mul_associative", "distributive"}) {
    INFO(id);
    REQUIRE(report.find(id) != nullptr);
    CHECK(report.find(id)->instances > 0);
    CHECK(report.find(id)->failures == 0);
  }
  CHECK_THROWS_AS(verify_relations(s4(), 0), std::invalid_argument);
}

TEST_CASE("relations hold across the battery") {
  for (const auto& [name, r] : finite_battery()) {
    INFO(name);
    VerificationReport report = verify_relations(r);
    CHECK(report.total_failures() == 0);
  }
}

TEST_CASE("relations hold on torsion-free and mixed rings") {
  CohomologyRing indefinite =
      make_ring(FgGroup::free(2), FgGroup::free(1), {{{0, 0}, {2}}, {{0, 1}, {1}}, {{1, 1}, {-3}}});
  CohomologyRing mixed = make_ring(FgGroup(1, {2}), FgGroup(1, {2}), {{{0, 0}, {1, 0}}, {{1, 1}, {0, 1}}});
  for (const CohomologyRing& r : {cp2(), s4(), indefinite, mixed}) CHECK(verify_relations(r, 2).ok());
}

TEST_CASE("counterexamples are capped") {
  VerificationReport a, b;
  a.checks.push_back({"x", "", 3, 2, {}});
  b.checks.push_back({"y", "", 4, 1, {}});
  a.merge(b);
  CHECK(a.total_failures() == 3);
  CHECK_FALSE(a.ok());
  CHECK(kMaxCounterexamples == 10);
}

TEST_CASE("formal quotient examples") {
  FormalQuotient q(rp4());
  CHECK(q.symbol_count() == 5);
  CHECK(q.full_structure() == GroupStructureReport{1, {4}});
  CHECK(q.reduced_structure() == GroupStructureReport{0, {4}});
  CHECK(oracle_reduced_group(z4_twisted()) == GroupStructureReport{0, {2, 8}});
  CHECK(oracle_reduced_group(z2_untwisted()) == GroupStructureReport{0, {2, 2}});
  // Unit symbol and l_0 are the same class.
  CHECK(q.classify(q.unit_vector(q.unit_symbol())) == q.classify(q.unit_vector(q.line_symbol({0}))));
}

TEST_CASE("oracle agrees with the engine on small rings") {
  for (const CohomologyRing& r : {point(), rp4(), z2_untwisted(), z4_twisted()}) {
    OracleComparison c = oracle_compare(r);
    CHECK(c.checks > 0);
    CHECK(c.ok());
    CHECK(c.engine == c.oracle);
  }
}

TEST_CASE("oracle agrees on orders {1, 2, 4} with trivial cup") {
  std::size_t rings = 0;
  for (Int a : {1, 2, 4})
    for (Int b : {1, 2, 4})
      for (const FgGroup& h2 : finite_groups_of_order(a))
        for (const FgGroup& h4 : finite_groups_of_order(b)) {
          if (h2.generator_count() > 1 || h4.generator_count() > 1) continue;
          CohomologyRing r = CohomologyRing::create({h2, h4, CupForm(h2.generator_count(), h4.generator_count())});
          OracleComparison c = oracle_compare(r);
          INFO(h2.describe() << " / " << h4.describe());
          CHECK(c.ok());
          ++rings;
        }
  CHECK(rings == 9);
}

TEST_CASE("oracle agrees across the battery") {
  for (const auto& [name, r] : finite_battery()) {
    INFO(name);
    OracleComparison c = oracle_compare(r);
    CHECK(c.engine == c.oracle);
    CHECK(c.failure_count == 0);
  }
}
