#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "k4ring/dsl.hpp"
#include "support/battery.hpp"
#include "support/fixtures.hpp"
#include "support/rings.hpp"

using namespace k4ring;
using namespace k4ring::testing;

namespace {

KClass cls(const CohomologyRing& r, Int rank, GroupElement c1, GroupElement c2) {
  return make_class(r, rank, std::move(c1), std::move(c2));
}

void require_parse_error(std::string_view text, std::size_t line, std::size_t column) {
  INFO(text);
  try {
    parse_ring(text);
    FAIL("parsed without error");
  } catch (const ParseError& e) {
    INFO(e.what());
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

void require_expr_error(const CohomologyRing& r, std::string_view text, std::size_t line, std::size_t column) {
  INFO(text);
  try {
    eval_expr(r, text);
    FAIL("evaluated without error");
  } catch (const ParseError& e) {
    INFO(e.what());
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_CASE("parse ring examples") {
  CohomologyRing rp = parse_ring("format 1\nH2 free 0 torsion 2\nH4 free 0 torsion 2\ncup 1 1 = 1\n");
  CHECK(rp == rp4());
  CHECK(parse_ring("H2 free 1\nH4 free 1\ncup 1 1 = 1") == cp2());
  CHECK(parse_ring("# sphere\n\nH2 free 0   # nothing\nH4 free 1\n") == s4());
  CHECK(parse_ring("H2 free 0 torsion\nH4 free 0\n") == point());
  CHECK(parse_ring("H2 free 0\r\nH4 free 1\r\n") == s4());
  // Entries are reduced, and a repeated pair must agree after reduction.
  CHECK(parse_ring("H2 free 0 torsion 4\nH4 free 0 torsion 4\ncup 1 1 = 5\ncup 1 1 = -3\n") == z4_twisted());
  // (i, j) fills (j, i).
  CohomologyRing h = parse_ring("H2 free 2\nH4 free 1\ncup 2 1 = 1\n");
  CHECK(h.cup_form().entry(0, 1) == GroupElement{1});
  CHECK(h.cup_form().entry(1, 0) == GroupElement{1});
}

TEST_CASE("ring text errors carry positions") {
  require_parse_error("H3 free 1\n", 1, 1);
  require_parse_error("H2 free 1\nH4 free 1\ncup 1 2 = 1\n", 3, 7);
  require_parse_error("H2 free 2\nH4 free 1\ncup 1 2 = 1\ncup 2 1 = 2\n", 4, 1);
  require_parse_error("H2 free 0 torsion 2\nH4 free 1\ncup 1 1 = 1\n", 3, 1);
  require_parse_error("H2 free 1\nH4 free 1\ncup 1 1 1\n", 3, 9);
  require_parse_error("H2 free -1\nH4 free 1\n", 1, 9);
  require_parse_error("H2\nH4 free 1\n", 1, 3);
  require_parse_error("H2 free 1 torsoin 2\nH4 free 1\n", 1, 11);
  require_parse_error("H2 free 1\nH4 free 1\ncup 1 1 = 1\nH4 free 2\n", 4, 1);
  CHECK_THROWS_WITH(parse_ring("H2 free 2\nH4 free 1\ncup 1 2 = 1\ncup 2 1 = 2\n"),
                    Catch::Matchers::ContainsSubstring("cup table must be symmetric"));
  CHECK_THROWS_WITH(parse_ring("H3 free 1\n"), Catch::Matchers::StartsWith("line 1, column 1:"));
}

TEST_CASE("generator limit") {
  std::string ok = "H2 free 64\nH4 free 0\n";
  CHECK(parse_ring(ok).h2().generator_count() == 64);
  require_parse_error("H2 free 60 torsion 2 2 2 2 2\nH4 free 0\n", 1, 1);
}

TEST_CASE("malformed fixtures are rejected at the recorded position") {
  auto files = ring_files(malformed_dir());
  REQUIRE(files.size() >= 10);
  for (const auto& path : files) {
    std::string text = read_file(path);
    ExpectedPosition pos = expected_position(text);
    INFO(path.filename().string());
    REQUIRE(pos.line > 0);
    require_parse_error(text, pos.line, pos.column);
  }
}

TEST_CASE("sample ring files parse") {
  auto files = ring_files(sample_rings_dir());
  REQUIRE(files.size() >= 5);
  for (const auto& path : files) {
    INFO(path.filename().string());
    CHECK_NOTHROW(parse_ring(read_file(path)));
  }
  CHECK(parse_ring(read_file(sample_rings_dir() / "rp4.ring")) == rp4());
  CHECK(parse_ring(read_file(sample_rings_dir() / "z4_twisted.ring")) == z4_twisted());
}

TEST_CASE("serialization") {
  CHECK(serialize_ring(rp4()) == "format 1\nH2 free 0 torsion 2\nH4 free 0 torsion 2\ncup 1 1 = 1\n");
  CHECK(serialize_ring(s4()) == "format 1\nH2 free 0\nH4 free 1\n");
  CHECK(serialize_ring(parse_ring("H2 free 2\nH4 free 1\ncup 2 1 = 1\n")) ==
        "format 1\nH2 free 2\nH4 free 1\ncup 1 2 = 1\n");
}

TEST_CASE("round trip on the battery") {
  for (const auto& [name, r] : finite_battery()) {
    INFO(name);
    std::string text = serialize_ring(r);
    CohomologyRing back = parse_ring(text);
    CHECK(back == r);
    CHECK(serialize_ring(back) == text);
  }
  for (const auto& path : ring_files(sample_rings_dir())) {
    CohomologyRing r = parse_ring(read_file(path));
    CHECK(parse_ring(serialize_ring(r)) == r);
  }
}

TEST_CASE("expression values") {
  CohomologyRing rp = rp4();
  CHECK(eval_expr(rp, "L([1]) - 1") == cls(rp, 0, {1}, {0}));
  CHECK(eval_expr(rp, "(L([1]) - 1)^2 + 2*(L([1]) - 1)") == k_zero(rp));
  CHECK(eval_expr(rp, "4 * (L([1]) - 1)") == k_zero(rp));
  CHECK(eval_expr(rp, "V([1])") == rank2_class(rp, {1}));
  CHECK(eval_expr(rp, "L([-1])") == line_class(rp, {1}));
  CHECK(eval_expr(rp, "L([ 3 ])") == line_class(rp, {1}));

  CohomologyRing cp = cp2();
  CHECK(eval_expr(cp, "(L([1]) - 1)^3") == k_zero(cp));
  CHECK(eval_expr(cp, "(L([1]) - 1)^2") == cls(cp, 0, {0}, {-1}));
  CHECK(eval_expr(cp, "L([2]) * L([-5])") == line_class(cp, {-3}));

  CohomologyRing s = s4();
  CHECK(eval_expr(s, "V([1]) * V([1])") == cls(s, 4, {}, {4}));
  CHECK(eval_expr(s, "(V([1]) - 2)*(V([1]) - 2)") == k_zero(s));
  CHECK(eval_expr(s, "L([])") == k_one(s));
}

TEST_CASE("expression precedence and associativity") {
  CohomologyRing p = point();
  auto value = [&](std::string_view text) { return eval_expr(p, text).rank; };
  CHECK(value("1 + 2 * 3") == 7);
  CHECK(value("(1 + 2) * 3") == 9);
  CHECK(value("2 - 3 - 4") == -5);
  CHECK(value("-2^2") == -4);
  CHECK(value("(-2)^2") == 4);
  CHECK(value("2 * 3^2") == 18);
  CHECK(value("- - 3") == 3);
  CHECK(value("2^0") == 1);
  CHECK(value("  7\n") == 7);
}

TEST_CASE("expression errors carry positions") {
  CohomologyRing rp = rp4();
  require_expr_error(rp, "", 1, 1);
  require_expr_error(rp, "L([1, 0])", 1, 3);
  require_expr_error(rp, "2^3^4", 1, 4);
  require_expr_error(rp, "(1", 1, 3);
  require_expr_error(rp, "1 +", 1, 4);
  require_expr_error(rp, "L[1]", 1, 2);
  require_expr_error(rp, "2^-1", 1, 3);
  require_expr_error(rp, "1 +\n  x", 2, 3);
  require_expr_error(rp, "1 2", 1, 3);
  require_expr_error(rp, "99999999999999999999", 1, 1);
  require_expr_error(rp, std::string(500, '(') + "1" + std::string(500, ')'), 1, 201);
  require_expr_error(rp, std::string(500, '-') + "1", 1, 201);
  CHECK_THROWS_AS(eval_expr(rp, "V([1]) * L([1]) * 9223372036854775807"), OverflowError);
}

TEST_CASE("random input never escapes as anything but the documented errors") {
  std::mt19937_64 rng(0x5eed);
  const std::string expr_alphabet = "LV([]),-+*^0123456789 \n";
  const std::string ring_alphabet = "H24 freetorsioncup=#-0123456789 \n";
  CohomologyRing r = parse_ring("H2 free 1 torsion 2\nH4 free 1 torsion 2\ncup 1 1 = 1 0\ncup 2 2 = 0 1\n");
  auto random_text = [&](const std::string& alphabet, std::size_t max_len) {
    std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    return s;
  };
  std::size_t accepted = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    std::string text = random_text(expr_alphabet, 24);
    try {
      eval_expr(r, text);
      ++accepted;
    } catch (const ParseError&) {
    } catch (const OverflowError&) {
    }
  }
  CHECK(accepted > 0);
  const std::vector<std::string> pieces{"H2 ", "H4 ", "free ", "torsion ", "cup ", "= ", "1 ", "2 ", "0 ", "-1 ", "\n", "# "};
  for (int trial = 0; trial < 20000; ++trial) {
    std::string text;
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, 30)(rng);
    for (std::size_t i = 0; i < n; ++i) text += pieces[std::uniform_int_distribution<std::size_t>(0, pieces.size() - 1)(rng)];
    if (trial % 2) text = random_text(ring_alphabet, 40);
    try {
      parse_ring(text);
    } catch (const ParseError&) {
    }
  }
}
