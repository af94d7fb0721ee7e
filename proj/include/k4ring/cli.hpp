#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "k4ring/dsl.hpp"
#include "k4ring/group_structure.hpp"
#include "k4ring/k_ring.hpp"
#include "k4ring/relation_oracle.hpp"

namespace k4ring::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kVerifyFailed = 3 };

inline constexpr std::size_t kDefaultTableCap = 64;

namespace detail {

using nlohmann::json;

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Source text plus the name used in diagnostics.
struct Source {
  std::string name;
  std::string text;
};

inline Source read_source(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return {"<stdin>", buf.str()};
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageFailure("cannot open ring file '" + path + "'");
  buf << f.rdbuf();
  return {path, buf.str()};
}

inline json group_json(const GroupStructureReport& g) {
  return json{{"free_rank", g.free_rank}, {"invariant_factors", g.invariant_factors}};
}

inline json class_json(const KClass& a) { return json::array({a.rank, a.c1.coeffs, a.c2.coeffs}); }

// Subscript for [L_x] and [V_y]: a bare integer for cyclic groups, the
// coordinate list otherwise, "0" for the trivial group.
inline std::string subscript(const GroupElement& e) {
  if (e.size() == 0) return "0";
  if (e.size() == 1) return std::to_string(e[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + "]";
}

inline std::string decomposition_text(const Decomposition& d) {
  return std::to_string(d.n) + "·1 + [L_" + subscript(d.x) + "] + [V_" + subscript(d.y) + "]";
}

inline std::string pad_right(const std::string& s, std::size_t width) {
  // Width in code points so that '·' and '⊕' line up.
  std::size_t cps = 0;
  for (unsigned char c : s) cps += (c & 0xC0) != 0x80 ? 1 : 0;
  return cps >= width ? s : s + std::string(width - cps, ' ');
}

inline std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

inline int cmd_structure(const CohomologyRing& r, bool as_json, std::ostream& out) {
  GroupStructureReport full = full_k_structure(r);
  GroupStructureReport reduced = reduced_k_structure(r);
  if (as_json) {
    out << json{{"full", group_json(full)}, {"reduced", group_json(reduced)}}.dump(2) << "\n";
  } else {
    out << "K0 = " << to_string(full) << "; reduced = " << to_string(reduced) << "\n";
  }
  return kOk;
}

inline int cmd_eval(const CohomologyRing& r, const std::string& expr, bool as_json, std::ostream& out) {
  KClass a = eval_expr(r, expr);
  Decomposition d = decompose(r, a);
  if (as_json) {
    out << json{{"class", class_json(a)},
                {"decomposition", {{"n", d.n}, {"x", d.x.coeffs}, {"y", d.y.coeffs}}}}
               .dump(2)
        << "\n";
  } else {
    out << to_string(a) << "  = " << decomposition_text(d) << "\n";
  }
  return kOk;
}

inline int cmd_verify(const CohomologyRing& r, Int bound, bool as_json, std::ostream& out) {
  VerificationReport report = verify_relations(r, bound);
  std::optional<OracleComparison> oracle;
  if (r.is_finite()) oracle = oracle_compare(r);
  const bool ok = report.ok() && (!oracle || oracle->ok());

  if (as_json) {
    json checks = json::array();
    for (const auto& c : report.checks) {
      json ces = json::array();
      for (const auto& ce : c.counterexamples) ces.push_back({{"inputs", ce.inputs}, {"lhs", ce.lhs}, {"rhs", ce.rhs}});
      checks.push_back({{"id", c.id},
                        {"statement", c.description},
                        {"instances", c.instances},
                        {"failures", c.failures},
                        {"counterexamples", ces}});
    }
    json o = nullptr;
    if (oracle) {
      o = {{"engine", group_json(oracle->engine)},
           {"oracle", group_json(oracle->oracle)},
           {"checks", oracle->checks},
           {"failures", oracle->failure_count},
           {"messages", oracle->failures}};
    }
    out << json{{"bound", bound}, {"checks", checks}, {"oracle", o}, {"ok", ok}}.dump(2) << "\n";
    return ok ? kOk : kVerifyFailed;
  }

  out << pad_right("check", 18) << pad_left("instances", 10) << pad_left("failures", 10) << "  statement\n";
  for (const auto& c : report.checks) {
    out << pad_right(c.id, 18) << pad_left(std::to_string(c.instances), 10) << pad_left(std::to_string(c.failures), 10)
        << "  " << c.description << "\n";
    for (const auto& ce : c.counterexamples)
      out << "    at " << ce.inputs << ": " << ce.lhs << " != " << ce.rhs << "\n";
  }
  if (oracle) {
    out << "oracle: engine " << to_string(oracle->engine) << ", quotient " << to_string(oracle->oracle) << ", "
        << oracle->checks << " checks, " << oracle->failure_count << " failures\n";
    for (const auto& m : oracle->failures) out << "    " << m << "\n";
  } else {
    out << "oracle: skipped (infinite group, bound " << bound << ")\n";
  }
  out << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kVerifyFailed;
}

inline int cmd_table(const CohomologyRing& r, std::size_t cap, bool as_json, std::ostream& out) {
  if (!r.is_finite()) throw UsageFailure("table needs finite H2 and H4");
  const auto n2 = static_cast<std::size_t>(r.h2().cardinality());
  const auto n4 = static_cast<std::size_t>(r.h4().cardinality());
  const std::size_t count = 2 * n2 * n4;
  if (count > cap)
    throw UsageFailure("table would have " + std::to_string(count) + " elements (cap " + std::to_string(cap) +
                       "); raise it with --cap");
  std::vector<KClass> elems;
  for (Int rank : {0, 1})
    for (const auto& x : enumerate_elements(r.h2()))
      for (const auto& y : enumerate_elements(r.h4())) elems.push_back(make_class(r, rank, x, y));

  std::vector<std::vector<KClass>> sum(count), prod(count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      sum[i].push_back(k_add(r, elems[i], elems[j]));
      prod[i].push_back(k_mul(r, elems[i], elems[j]));
    }

  if (as_json) {
    json e = json::array(), add = json::array(), mul = json::array();
    for (const auto& a : elems) e.push_back(class_json(a));
    for (std::size_t i = 0; i < count; ++i) {
      json ra = json::array(), rm = json::array();
      for (std::size_t j = 0; j < count; ++j) {
        ra.push_back(class_json(sum[i][j]));
        rm.push_back(class_json(prod[i][j]));
      }
      add.push_back(ra);
      mul.push_back(rm);
    }
    out << json{{"elements", e}, {"add", add}, {"mul", mul}}.dump() << "\n";
    return kOk;
  }

  out << "elements:\n";
  for (std::size_t i = 0; i < count; ++i) out << "  e" << i << " = " << to_string(elems[i]) << "\n";
  auto grid = [&](const char* title, const std::vector<std::vector<KClass>>& cells) {
    std::size_t width = 0;
    for (const auto& row : cells)
      for (const auto& c : row) width = std::max(width, to_string(c).size());
    const std::size_t label = std::to_string(count).size() + 1;
    width = std::max(width, label);
    out << title << ":\n" << std::string(label + 2, ' ');
    for (std::size_t j = 0; j < count; ++j) out << " " << pad_right("e" + std::to_string(j), width);
    out << "\n";
    for (std::size_t i = 0; i < count; ++i) {
      out << "  " << pad_right("e" + std::to_string(i), label);
      for (std::size_t j = 0; j < count; ++j) out << " " << pad_right(to_string(cells[i][j]), width);
      out << "\n";
    }
  };
  grid("addition", sum);
  grid("multiplication", prod);
  return kOk;
}

inline int cmd_fmt(const CohomologyRing& r, bool as_json, std::ostream& out) {
  std::string text = serialize_ring(r);
  if (as_json) {
    out << json{{"text", text}}.dump(2) << "\n";
  } else {
    out << text;
  }
  return kOk;
}

}  // namespace detail

/// Runs the command line tool. args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact K^0 of 4-dimensional CW complexes from their even cohomology ring", "k4ring"};
  app.require_subcommand(1);

  std::string ring_path, expr;
  bool as_json = false;
  Int bound = kDefaultBound;
  std::size_t cap = kDefaultTableCap;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("ringfile", ring_path, "Ring description file, or - for standard input")->required();
    sub->add_flag("--json", as_json, "Structured output");
  };
  CLI::App* structure = app.add_subcommand("structure", "Group structure of K0 and reduced K0");
  add_common(structure);
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a K-class expression");
  add_common(eval);
  eval->add_option("expr", expr, "Expression over L([..]), V([..]), integers, + - * ^")->required();
  CLI::App* verify = app.add_subcommand("verify", "Check the defining relations and ring axioms");
  add_common(verify);
  verify->add_option("--bound", bound, "Coordinate bound for free generators")->check(CLI::PositiveNumber);
  CLI::App* table = app.add_subcommand("table", "Addition and multiplication tables of rank 0 and 1 classes");
  add_common(table);
  table->add_option("--cap", cap, "Maximum number of elements");
  CLI::App* fmt = app.add_subcommand("fmt", "Print the ring in canonical form");
  add_common(fmt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  std::string source_name = "<input>";
  try {
    detail::Source src = detail::read_source(ring_path, in);
    source_name = src.name;
    CohomologyRing ring = parse_ring(src.text);
    if (structure->parsed()) return detail::cmd_structure(ring, as_json, out);
    if (eval->parsed()) {
      source_name = "<expr>";
      return detail::cmd_eval(ring, expr, as_json, out);
    }
    if (verify->parsed()) return detail::cmd_verify(ring, bound, as_json, out);
    if (table->parsed()) return detail::cmd_table(ring, cap, as_json, out);
    if (fmt->parsed()) return detail::cmd_fmt(ring, as_json, out);
  } catch (const ParseError& e) {
    err << source_name << ":" << e.line() << ":" << e.column() << ": error: " << e.message() << "\n";
    return kInput;
  } catch (const detail::UsageFailure& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const OverflowError& e) {
    err << source_name << ": error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}

}  // namespace k4ring::cli
