#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "k4ring/cohomology.hpp"
#include "support/rings.hpp"

using namespace k4ring;
using namespace k4ring::testing;

namespace {

bool has_violation(const ValidationReport& r, Violation::Kind kind) {
  for (const auto& v : r.violations)
    if (v.kind == kind) return true;
  return false;
}

}  // namespace

TEST_CASE("validate_ring accepts the real projective 4-space data") {
  CupForm cup(1, 1);
  cup.set(0, 0, {1});
  CHECK(validate_ring({FgGroup::cyclic(2), FgGroup::cyclic(2), cup}).ok());
}

TEST_CASE("validate_ring rejects an order-2 class squaring to an infinite-order class") {
  CupForm cup(1, 1);
  cup.set(0, 0, {1});
  ValidationReport report = validate_ring({FgGroup::cyclic(2), FgGroup::free(1), cup});
  REQUIRE_FALSE(report.ok());
  CHECK(has_violation(report, Violation::Kind::TorsionIncompatible));
  CHECK(report.violations.front().i == 0);
  CHECK(report.violations.front().j == 0);
  CHECK_THROWS_AS(CohomologyRing::create({FgGroup::cyclic(2), FgGroup::free(1), cup}), ValidationError);
}

TEST_CASE("validate_ring rejects asymmetric tables") {
  CupForm cup(2, 1);
  cup.set_ordered(0, 1, {1});
  cup.set_ordered(1, 0, {2});
  ValidationReport report = validate_ring({FgGroup::free(2), FgGroup::free(1), cup});
  REQUIRE_FALSE(report.ok());
  CHECK(has_violation(report, Violation::Kind::Asymmetric));
  CHECK(report.violations.front().i == 0);
  CHECK(report.violations.front().j == 1);
}

TEST_CASE("validate_ring reports shape and non-canonical entries") {
  CHECK(has_violation(validate_ring({FgGroup::free(2), FgGroup::free(1), CupForm(1, 1)}), Violation::Kind::Shape));
  CupForm cup(1, 1);
  cup.set(0, 0, {3});
  CHECK(has_violation(validate_ring({FgGroup::free(1), FgGroup::cyclic(2), cup}), Violation::Kind::NonCanonical));
}

TEST_CASE("torsion compatibility uses the order of each H2 generator") {
  // Z/4 generator with square 2y in Z/8: 4 * 2y = 8y = 0, fine.
  CupForm ok(1, 1);
  ok.set(0, 0, {2});
  CHECK(validate_ring({FgGroup::cyclic(4), FgGroup::cyclic(8), ok}).ok());
  // Square y in Z/8: 4y != 0.
  CupForm bad(1, 1);
  bad.set(0, 0, {1});
  CHECK(has_violation(validate_ring({FgGroup::cyclic(4), FgGroup::cyclic(8), bad}), Violation::Kind::TorsionIncompatible));
  // Mixed pair: free e_1, order-2 e_2, e_1 e_2 must be 2-torsion.
  CupForm mixed(2, 1);
  mixed.set(0, 1, {1});
  CHECK_FALSE(validate_ring({FgGroup(1, {2}), FgGroup::free(1), mixed}).ok());
  CHECK(validate_ring({FgGroup(1, {2}), FgGroup(0, {2}), mixed}).ok());
}

TEST_CASE("cup examples") {
  CohomologyRing rp = rp4();
  CHECK(cup(rp, {1}, {1}) == GroupElement{1});
  CHECK(cup_square(rp, {1}) == GroupElement{1});
  CHECK(cup(rp, {0}, {1}) == GroupElement{0});
  CHECK(cup_square(rp, {0}) == GroupElement{0});

  CohomologyRing cp = cp2();
  CHECK(cup(cp, {2}, {3}) == GroupElement{6});
  CHECK(cup_square(cp, {2}) == GroupElement{4});
  CHECK_THROWS_AS(cup(cp, {1, 0}, {1}), DimensionError);
}

TEST_CASE("cup matches brute-force summation over generator pairs") {
  // H2 = Z^2 + Z/2, H4 = Z + Z/2.
  FgGroup h2(2, {2});
  FgGroup h4(1, {2});
  CupForm form(3, 2);
  form.set(0, 0, {3, 1});
  form.set(0, 1, {-2, 0});
  form.set(1, 1, {5, 1});
  form.set(0, 2, {0, 1});
  form.set(2, 2, {0, 1});
  CohomologyRing r = CohomologyRing::create({h2, h4, form});

  auto brute = [&](const GroupElement& a, const GroupElement& b) {
    GroupElement acc = zero_element(h4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (Int k = 0; k < checked_abs(a[i] * b[j]); ++k) {
          GroupElement e = form.entry(i, j);
          if (a[i] * b[j] < 0) e = negate_element(h4, e);
          acc = add_elements(h4, acc, e);
        }
    return acc;
  };

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Int> c(-4, 4);
  for (int trial = 0; trial < 300; ++trial) {
    GroupElement a = canonical(h2, {c(rng), c(rng), c(rng)});
    GroupElement b = canonical(h2, {c(rng), c(rng), c(rng)});
    GroupElement a2 = canonical(h2, {c(rng), c(rng), c(rng)});
    Int n = c(rng) * 2;
    CHECK(cup(r, a, b) == brute(a, b));
    CHECK(cup(r, a, b) == cup(r, b, a));
    CHECK(cup(r, add_elements(h2, a, a2), b) == add_elements(h4, cup(r, a, b), cup(r, a2, b)));
    CHECK(cup(r, scale_element(h2, n, a), b) == scale_element(h4, n, cup(r, a, b)));
  }
  // Well-defined over torsion: 2 e_3 = 0 pairs to zero.
  for (const auto& b : bounded_elements(h2, 2)) CHECK(is_zero(cup(r, {0, 0, 2}, b)));
}

TEST_CASE("cup is bilinear and symmetric exhaustively on a finite ring") {
  FgGroup h2(0, {2, 4});
  FgGroup h4(0, {2, 4});
  CupForm form(2, 2);
  form.set(0, 0, {1, 2});
  form.set(0, 1, {1, 0});
  form.set(1, 1, {0, 3});
  CohomologyRing r = CohomologyRing::create({h2, h4, form});
  for (const auto& a : enumerate_elements(h2))
    for (const auto& b : enumerate_elements(h2)) {
      CHECK(cup(r, a, b) == cup(r, b, a));
      for (const auto& a2 : enumerate_elements(h2))
        CHECK(cup(r, add_elements(h2, a, a2), b) == add_elements(h4, cup(r, a, b), cup(r, a2, b)));
      for (Int n = -8; n <= 8; ++n) CHECK(cup(r, scale_element(h2, n, a), b) == scale_element(h4, n, cup(r, a, b)));
    }
}

TEST_CASE("ring identity survives copies but not reconstruction") {
  CohomologyRing a = rp4();
  CohomologyRing b = a;
  CohomologyRing c = rp4();
  CHECK(a.id() == b.id());
  CHECK(a.id() != c.id());
  CHECK(a == c);
}
