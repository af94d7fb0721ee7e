#pragma once

// Text formats.
//
// Ring files are line oriented; '#' starts a comment:
//
//   format 1                       (optional, first statement only)
//   H2 free <a> torsion <n1> ...   (torsion list may be empty or omitted)
//   H4 free <b> torsion <m1> ...
//   cup <i> <j> = <c1> ... <cq>    (1-based H2 generator indices; the
//                                   coordinates of e_i e_j over the H4
//                                   generators, free ones first)
//
// Omitted cup pairs are zero, (i, j) also sets (j, i), and two declarations
// of the same pair must agree after reduction.
//
// Expressions:
//
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' integer)?
//   primary := integer | 'L' '(' vec ')' | 'V' '(' vec ')' | '(' expr ')'
//   vec     := '[' (['-'] integer (',' ['-'] integer)*)? ']'

#include <cctype>
#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k4ring/cohomology.hpp"
#include "k4ring/errors.hpp"
#include "k4ring/k_ring.hpp"

namespace k4ring {

namespace detail {

struct Token {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

inline std::optional<Int> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (start == s.size()) return std::nullopt;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  if (s[0] == '+') s.remove_prefix(1);
  Int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline bool looks_like_int(std::string_view s) {
  std::size_t start = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

inline Int expect_int(const Token& t, const char* what) {
  if (!looks_like_int(t.text)) throw ParseError(t.line, t.column, std::string("expected ") + what + ", got '" + t.text + "'");
  auto v = parse_int(t.text);
  if (!v) throw ParseError(t.line, t.column, "integer '" + t.text + "' is out of the 64-bit range");
  return *v;
}

// Splits one line into whitespace separated tokens, dropping comments.
// '=' is always its own token.
inline std::vector<Token> tokenize_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '=') {
      out.push_back({"=", line_no, i + 1});
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#' && line[i] != '=') ++i;
    out.push_back({std::string(line.substr(start, i - start)), line_no, start + 1});
  }
  return out;
}

inline constexpr std::size_t kMaxGenerators = 64;

struct GroupDecl {
  FgGroup group;
  std::size_t line = 0;
};

inline GroupDecl parse_group_decl(const std::vector<Token>& toks) {
  const Token& head = toks[0];
  if (toks.size() < 3 || toks[1].text != "free") {
    const Token& at = toks.size() > 1 ? toks[1] : head;
    throw ParseError(at.line, toks.size() > 1 ? at.column : at.column + at.text.size(),
                     "expected '" + head.text + " free <rank> [torsion <orders>...]'");
  }
  Int free = expect_int(toks[2], "free rank");
  if (free < 0) throw ParseError(toks[2].line, toks[2].column, "free rank must be non-negative");
  std::vector<Int> torsion;
  if (toks.size() > 3) {
    if (toks[3].text != "torsion") throw ParseError(toks[3].line, toks[3].column, "expected 'torsion', got '" + toks[3].text + "'");
    for (std::size_t k = 4; k < toks.size(); ++k) {
      Int n = expect_int(toks[k], "torsion order");
      if (n < 2) throw ParseError(toks[k].line, toks[k].column, "torsion order must be at least 2");
      torsion.push_back(n);
    }
  }
  if (static_cast<std::size_t>(free) + torsion.size() > kMaxGenerators)
    throw ParseError(head.line, head.column, head.text + " has more than " + std::to_string(kMaxGenerators) + " generators");
  return {FgGroup(static_cast<std::size_t>(free), std::move(torsion)), head.line};
}

struct CupDecl {
  GroupElement value;
  Token at;
};

}  // namespace detail

/// Parses and validates a ring description. Every failure is a ParseError
/// carrying the offending line and column.
inline CohomologyRing parse_ring(std::string_view text) {
  std::optional<detail::GroupDecl> h2, h4;
  std::map<std::pair<std::size_t, std::size_t>, detail::CupDecl> cups;
  bool seen_statement = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl + 1;
    ++line_no;

    std::vector<detail::Token> toks = detail::tokenize_line(line, line_no);
    if (toks.empty()) continue;
    const detail::Token& head = toks[0];

    if (head.text == "format") {
      if (seen_statement) throw ParseError(head.line, head.column, "'format' must be the first statement");
      if (toks.size() != 2) throw ParseError(head.line, head.column, "expected 'format 1'");
      if (toks[1].text != "1") throw ParseError(toks[1].line, toks[1].column, "unsupported format version '" + toks[1].text + "'");
    } else if (head.text == "H2" || head.text == "H4") {
      auto& slot = head.text == "H2" ? h2 : h4;
      if (slot) throw ParseError(head.line, head.column, head.text + " declared twice (first on line " + std::to_string(slot->line) + ")");
      if (!cups.empty()) throw ParseError(head.line, head.column, head.text + " must be declared before any cup entry");
      slot = detail::parse_group_decl(toks);
    } else if (head.text == "cup") {
      if (!h2 || !h4) throw ParseError(head.line, head.column, "cup entry before both H2 and H4 are declared");
      if (toks.size() < 4 || toks[3].text != "=") {
        const detail::Token& at = toks.size() > 3 ? toks[3] : toks.back();
        throw ParseError(at.line, at.column, "expected 'cup <i> <j> = <coordinates>'");
      }
      const std::size_t p = h2->group.generator_count();
      std::size_t idx[2];
      for (int k = 0; k < 2; ++k) {
        const detail::Token& t = toks[1 + k];
        Int v = detail::expect_int(t, "generator index");
        if (v < 1 || static_cast<std::size_t>(v) > p)
          throw ParseError(t.line, t.column, "unknown H2 generator " + t.text + " (H2 has " + std::to_string(p) + " generators)");
        idx[k] = static_cast<std::size_t>(v - 1);
      }
      const std::size_t q = h4->group.generator_count();
      if (toks.size() - 4 != q) {
        const detail::Token& at = toks.size() > 4 ? toks[4] : toks[3];
        throw ParseError(at.line, at.column,
                         "expected " + std::to_string(q) + " H4 coordinates, got " + std::to_string(toks.size() - 4));
      }
      std::vector<Int> coords;
      for (std::size_t k = 4; k < toks.size(); ++k) coords.push_back(detail::expect_int(toks[k], "coordinate"));
      GroupElement value = canonical(h4->group, GroupElement(std::move(coords)));
      auto key = std::minmax(idx[0], idx[1]);
      auto it = cups.find(key);
      if (it != cups.end()) {
        if (it->second.value != value)
          throw ParseError(head.line, head.column,
                           "cup " + std::to_string(idx[0] + 1) + " " + std::to_string(idx[1] + 1) +
                               " conflicts with the entry on line " + std::to_string(it->second.at.line) +
                               " (cup table must be symmetric)");
      } else {
        cups.emplace(key, detail::CupDecl{std::move(value), head});
      }
    } else {
      throw ParseError(head.line, head.column, "unknown statement '" + head.text + "'");
    }
    seen_statement = true;
  }
  if (!h2) throw ParseError(line_no, 1, "missing H2 declaration");
  if (!h4) throw ParseError(line_no, 1, "missing H4 declaration");

  RingPresentation data{h2->group, h4->group,
                        CupForm(h2->group.generator_count(), h4->group.generator_count())};
  for (const auto& [key, decl] : cups) data.cup.set(key.first, key.second, decl.value);

  ValidationReport report = validate_ring(data);
  if (!report.ok()) {
    const Violation& v = report.violations.front();
    auto it = cups.find(std::minmax(v.i, v.j));
    std::size_t line = it != cups.end() ? it->second.at.line : h2->line;
    std::size_t column = it != cups.end() ? it->second.at.column : 1;
    throw ParseError(line, column, v.message);
  }
  return CohomologyRing::create(std::move(data));
}

/// Canonical text. parse_ring(serialize_ring(r)) == r.
inline std::string serialize_ring(const CohomologyRing& r) {
  auto group_line = [](const char* name, const FgGroup& g) {
    std::string s = std::string(name) + " free " + std::to_string(g.free_rank());
    if (!g.torsion_orders().empty()) {
      s += " torsion";
      for (Int n : g.torsion_orders()) s += " " + std::to_string(n);
    }
    return s + "\n";
  };
  std::string out = "format 1\n";
  out += group_line("H2", r.h2());
  out += group_line("H4", r.h4());
  const std::size_t p = r.h2().generator_count();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      const GroupElement& e = r.cup_form().entry(i, j);
      if (is_zero(e)) continue;
      out += "cup " + std::to_string(i + 1) + " " + std::to_string(j + 1) + " =";
      for (Int c : e.coeffs) out += " " + std::to_string(c);
      out += "\n";
    }
  return out;
}

namespace detail {

class ExpressionParser {
 public:
  ExpressionParser(const CohomologyRing& r, std::string_view text) : ring_(r), text_(text) {}

  KClass parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    KClass value = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return value;
  }

 private:
  static constexpr int kMaxDepth = 200;

  KClass expr() {
    KClass acc = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        acc = k_add(ring_, acc, term());
      } else if (accept('-')) {
        acc = k_sub(ring_, acc, term());
      } else {
        return acc;
      }
    }
  }

  KClass term() {
    KClass acc = factor();
    for (;;) {
      skip_space();
      if (!accept('*')) return acc;
      acc = k_mul(ring_, acc, factor());
    }
  }

  KClass factor() {
    skip_space();
    if (!at_end() && peek() == '-') {
      DepthGuard guard(*this);
      ++pos_;
      return k_neg(ring_, factor());
    }
    return power();
  }

  KClass power() {
    KClass base = primary();
    skip_space();
    if (!accept('^')) return base;
    skip_space();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be a non-negative integer literal");
    Int n = integer();
    skip_space();
    if (!at_end() && peek() == '^') fail_at(pos_, "chained '^' needs parentheses");
    return k_pow(ring_, base, n);
  }

  KClass primary() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return k_integer(ring_, integer());
    if (c == '(') {
      DepthGuard guard(*this);
      ++pos_;
      KClass inner = expr();
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'L' || c == 'V') {
      ++pos_;
      skip_space();
      if (!accept('(')) fail(std::string("expected '(' after ") + c);
      skip_space();
      const FgGroup& g = c == 'L' ? ring_.h2() : ring_.h4();
      GroupElement e = vector(g, c == 'L' ? "H2" : "H4");
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return c == 'L' ? line_class(ring_, e) : rank2_class(ring_, e);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  GroupElement vector(const FgGroup& g, const char* name) {
    std::size_t open = pos_;
    if (!accept('[')) fail("expected '['");
    std::vector<Int> coeffs;
    skip_space();
    if (!accept(']')) {
      for (;;) {
        skip_space();
        bool neg = accept('-');
        skip_space();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer coordinate");
        Int v = integer();
        coeffs.push_back(neg ? checked_neg(v) : v);
        skip_space();
        if (accept(']')) break;
        if (!accept(',')) fail("expected ',' or ']'");
      }
    }
    if (coeffs.size() != g.generator_count())
      fail_at(open, std::string(name) + " has " + std::to_string(g.generator_count()) + " generators but " +
                        std::to_string(coeffs.size()) + " coordinates were given");
    return canonical(g, GroupElement(std::move(coeffs)));
  }

  Int integer() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    auto v = parse_int(text_.substr(start, pos_ - start));
    if (!v) fail_at(start, "integer literal out of the 64-bit range");
    return *v;
  }

  struct DepthGuard {
    explicit DepthGuard(ExpressionParser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) parser.fail("expression nested too deeply");
    }
    ~DepthGuard() { --parser.depth_; }
    ExpressionParser& parser;
  };

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool accept(char c) {
    if (!at_end() && peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
  [[noreturn]] void fail_at(std::size_t offset, const std::string& msg) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, msg);
  }

  const CohomologyRing& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace detail

/// Parses and evaluates a K-class expression over r.
inline KClass eval_expr(const CohomologyRing& r, std::string_view text) {
  return detail::ExpressionParser(r, text).parse();
}

}  // namespace k4ring
