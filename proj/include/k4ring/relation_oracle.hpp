#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "k4ring/group_structure.hpp"
#include "k4ring/k_ring.hpp"
#include "k4ring/smith.hpp"

namespace k4ring {

struct Counterexample {
  std::string inputs;
  std::string lhs;
  std::string rhs;
};

struct RelationCheck {
  std::string id;
  std::string description;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::vector<Counterexample> counterexamples;  // at most kMaxCounterexamples
};

inline constexpr std::size_t kMaxCounterexamples = 10;
inline constexpr Int kDefaultBound = 2;

struct VerificationReport {
  std::vector<RelationCheck> checks;

  std::size_t total_failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.failures;
    return n;
  }
  bool ok() const { return total_failures() == 0; }

  const RelationCheck* find(const std::string& id) const {
    for (const auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }

  /// Sums instance and failure counts of checks with matching ids.
  void merge(const VerificationReport& other) {
    for (const auto& c : other.checks) {
      auto it = std::find_if(checks.begin(), checks.end(), [&](const RelationCheck& x) { return x.id == c.id; });
      if (it == checks.end()) {
        checks.push_back(c);
        continue;
      }
      it->instances += c.instances;
      it->failures += c.failures;
      for (const auto& ce : c.counterexamples)
        if (it->counterexamples.size() < kMaxCounterexamples) it->counterexamples.push_back(ce);
    }
  }
};

namespace detail {

class CheckRecorder {
 public:
  CheckRecorder(std::string id, std::string description) {
    check_.id = std::move(id);
    check_.description = std::move(description);
  }

  void record(const KClass& lhs, const KClass& rhs, const std::function<std::string()>& inputs) {
    ++check_.instances;
    if (lhs == rhs) return;
    ++check_.failures;
    if (check_.counterexamples.size() < kMaxCounterexamples)
      check_.counterexamples.push_back({inputs(), to_string(lhs), to_string(rhs)});
  }

  RelationCheck take() { return std::move(check_); }

 private:
  RelationCheck check_;
};

// Rank 0 and rank 1 classes over the bounded boxes, thinned by a stride so
// that at most `cap` remain.
inline std::vector<KClass> sample_classes(const CohomologyRing& r, const std::vector<GroupElement>& xs,
                                          const std::vector<GroupElement>& ys, std::size_t cap) {
  std::vector<KClass> all;
  for (Int rank : {0, 1})
    for (const auto& x : xs)
      for (const auto& y : ys) all.push_back(make_class(r, rank, x, y));
  if (all.size() <= cap) return all;
  std::vector<KClass> out;
  const std::size_t stride = (all.size() + cap - 1) / cap;
  for (std::size_t i = 0; i < all.size(); i += stride) out.push_back(all[i]);
  return out;
}

}  // namespace detail

/// Checks the seven defining relations of K^0 plus ring axioms through the
/// coordinate arithmetic. Exhaustive over H^2, H^4 when finite; otherwise
/// free coordinates range over [-bound, bound].
inline VerificationReport verify_relations(const CohomologyRing& r, Int bound = kDefaultBound) {
  if (bound < 1) throw std::invalid_argument("bound must be at least 1");
  const FgGroup& h2 = r.h2();
  const FgGroup& h4 = r.h4();
  const std::vector<GroupElement> xs = bounded_elements(h2, bound);
  const std::vector<GroupElement> ys = bounded_elements(h4, bound);
  const GroupElement zero2 = zero_element(h2);
  const GroupElement zero4 = zero_element(h4);
  const KClass one = k_one(r);
  const KClass two = k_integer(r, 2);
  auto L = [&](const GroupElement& x) { return line_class(r, x); };
  auto V = [&](const GroupElement& y) { return rank2_class(r, y); };
  auto add = [&](const KClass& a, const KClass& b) { return k_add(r, a, b); };
  auto sub = [&](const KClass& a, const KClass& b) { return k_sub(r, a, b); };
  auto mul = [&](const KClass& a, const KClass& b) { return k_mul(r, a, b); };
  auto pair = [](const GroupElement& a, const GroupElement& b) {
    return [&a, &b] { return coords_to_string(a) + ", " + coords_to_string(b); };
  };

  VerificationReport report;

  detail::CheckRecorder r1("1", "[L_0] = 1, [V_0] = 2");
  r1.record(L(zero2), one, [] { return std::string("L_0"); });
  r1.record(V(zero4), two, [] { return std::string("V_0"); });
  report.checks.push_back(r1.take());

  detail::CheckRecorder r2("2", "[L_x][L_x'] = [L_{x+x'}]");
  for (const auto& x : xs)
    for (const auto& x2 : xs) r2.record(mul(L(x), L(x2)), L(add_elements(h2, x, x2)), pair(x, x2));
  report.checks.push_back(r2.take());

  detail::CheckRecorder r3("3", "[L_x] + [L_{-x}] = [V_{-x^2}]");
  for (const auto& x : xs) {
    GroupElement nx = negate_element(h2, x);
    r3.record(add(L(x), L(nx)), V(negate_element(h4, cup_square(r, x))),
              [&x] { return coords_to_string(x); });
  }
  report.checks.push_back(r3.take());

  detail::CheckRecorder r4("4", "[V_y] + [V_y'] = 2 + [V_{y+y'}]");
  for (const auto& y : ys)
    for (const auto& y2 : ys) r4.record(add(V(y), V(y2)), add(two, V(add_elements(h4, y, y2))), pair(y, y2));
  report.checks.push_back(r4.take());

  detail::CheckRecorder r5("5", "[V_y][V_y'] = 2 + [V_{2y+2y'}]");
  for (const auto& y : ys)
    for (const auto& y2 : ys) {
      GroupElement s = scale_element(h4, 2, add_elements(h4, y, y2));
      r5.record(mul(V(y), V(y2)), add(two, V(s)), pair(y, y2));
    }
  report.checks.push_back(r5.take());

  detail::CheckRecorder r6("6", "[L_x][V_y] = [L_{2x}] + [V_{x^2+y}] - 1");
  for (const auto& x : xs)
    for (const auto& y : ys) {
      KClass rhs = sub(add(L(scale_element(h2, 2, x)), V(add_elements(h4, cup_square(r, x), y))), one);
      r6.record(mul(L(x), V(y)), rhs, pair(x, y));
    }
  report.checks.push_back(r6.take());

  detail::CheckRecorder r7("7", "[L_x] + [L_x'] = [L_{x+x'}] + [V_{xx'}] - 1");
  for (const auto& x : xs)
    for (const auto& x2 : xs) {
      KClass rhs = sub(add(L(add_elements(h2, x, x2)), V(cup(r, x, x2))), one);
      r7.record(add(L(x), L(x2)), rhs, pair(x, x2));
    }
  report.checks.push_back(r7.take());

  // Ring axioms on rank 0 and rank 1 classes; the cubic ones on a thinner sample.
  const std::vector<KClass> pairs_sample = detail::sample_classes(r, xs, ys, 96);
  const std::vector<KClass> triples_sample = detail::sample_classes(r, xs, ys, 12);
  const KClass zero = k_zero(r);
  auto show2 = [](const KClass& a, const KClass& b) {
    return [&a, &b] { return to_string(a) + ", " + to_string(b); };
  };
  auto show3 = [](const KClass& a, const KClass& b, const KClass& c) {
    return [&a, &b, &c] { return to_string(a) + ", " + to_string(b) + ", " + to_string(c); };
  };

  detail::CheckRecorder add_unit("add_unit", "a + 0 = a");
  detail::CheckRecorder mul_unit("mul_unit", "a * 1 = a");
  detail::CheckRecorder add_inverse("add_inverse", "a + (-a) = 0");
  for (const auto& a : pairs_sample) {
    auto show = [&a] { return to_string(a); };
    add_unit.record(add(a, zero), a, show);
    mul_unit.record(mul(a, one), a, show);
    add_inverse.record(add(a, k_neg(r, a)), zero, show);
  }
  detail::CheckRecorder add_comm("add_commutative", "a + b = b + a");
  detail::CheckRecorder mul_comm("mul_commutative", "a * b = b * a");
  for (const auto& a : pairs_sample)
    for (const auto& b : pairs_sample) {
      add_comm.record(add(a, b), add(b, a), show2(a, b));
      mul_comm.record(mul(a, b), mul(b, a), show2(a, b));
    }
  detail::CheckRecorder add_assoc("add_associative", "(a + b) + c = a + (b + c)");
  detail::CheckRecorder mul_assoc("mul_associative", "(a * b) * c = a * (b * c)");
  detail::CheckRecorder distrib("distributive", "a * (b + c) = a * b + a * c");
  for (const auto& a : triples_sample)
    for (const auto& b : triples_sample)
      for (const auto& c : triples_sample) {
        add_assoc.record(add(add(a, b), c), add(a, add(b, c)), show3(a, b, c));
        mul_assoc.record(mul(mul(a, b), c), mul(a, mul(b, c)), show3(a, b, c));
        distrib.record(mul(a, add(b, c)), add(mul(a, b), mul(a, c)), show3(a, b, c));
      }
  for (auto* rec : {&add_unit, &mul_unit, &add_inverse, &add_comm, &mul_comm, &add_assoc, &mul_assoc, &distrib})
    report.checks.push_back(rec->take());
  return report;
}

/// Quotient of the free abelian group on the formal symbols
///   1, l_x (x in H^2), v_y (y in H^4)
/// by the additive relations
///   l_0 = 1, v_0 = 2, l_x + l_{-x} = v_{-x^2},
///   v_y + v_y' = 2 + v_{y+y'}, l_x + l_x' = l_{x+x'} + v_{xx'} - 1.
/// Built only from H^2, H^4 arithmetic and the cup form; it never touches
/// the K-class coordinate formulas.
class FormalQuotient {
 public:
  explicit FormalQuotient(const CohomologyRing& r) : h2_(r.h2()), h4_(r.h4()) {
    if (!r.is_finite()) throw InfiniteGroupError("formal quotient needs finite H2 and H4");
    n2_ = static_cast<std::size_t>(h2_.cardinality());
    n4_ = static_cast<std::size_t>(h4_.cardinality());
    build_relations(r);
    snf_ = smith_column_form(relations_);
  }

  std::size_t symbol_count() const { return 1 + n2_ + n4_; }
  std::size_t unit_symbol() const { return 0; }
  std::size_t line_symbol(const GroupElement& x) const { return 1 + element_index(h2_, x); }
  std::size_t rank2_symbol(const GroupElement& y) const { return 1 + n2_ + element_index(h4_, y); }

  const IntMatrix& relations() const { return relations_; }

  /// Symbol vector with a single 1.
  std::vector<Int> unit_vector(std::size_t symbol) const {
    std::vector<Int> w(symbol_count(), 0);
    w.at(symbol) = 1;
    return w;
  }

  /// Normal form of the class of a symbol vector in the quotient: w V with
  /// coordinate k reduced modulo the k-th elementary divisor.
  std::vector<Int> classify(const std::vector<Int>& w) const {
    const IntMatrix& V = snf_.V;
    const std::vector<Int> d = snf_.diagonal();
    std::vector<Int> out(symbol_count(), 0);
    for (std::size_t c = 0; c < symbol_count(); ++c) {
      Int acc = 0;
      for (std::size_t s = 0; s < symbol_count(); ++s) acc = checked_add(acc, checked_mul(w[s], V(s, c)));
      Int dk = c < d.size() ? d[c] : 0;
      out[c] = dk == 0 ? acc : floor_mod(acc, dk);
    }
    return out;
  }

  /// The full quotient, which should be K^0.
  GroupStructureReport full_structure() const { return group_from_relations(symbol_count(), relations_); }

  /// Kernel of the rank character (1, l_x, v_y) -> (1, 1, 2). The rank
  /// splits off Z * 1, so this is the quotient by the extra relation 1 = 0.
  GroupStructureReport reduced_structure() const {
    IntMatrix extended = relations_;
    extended.append_row(unit_vector(unit_symbol()));
    return group_from_relations(symbol_count(), extended);
  }

 private:
  void build_relations(const CohomologyRing& r) {
    const FgGroup& h2 = h2_;
    const FgGroup& h4 = h4_;
    relations_ = IntMatrix(0, symbol_count());
    auto row = [this] { return std::vector<Int>(symbol_count(), 0); };

    std::vector<Int> w = row();
    w[line_symbol(zero_element(h2))] += 1;
    w[unit_symbol()] -= 1;
    relations_.append_row(w);
    w = row();
    w[rank2_symbol(zero_element(h4))] += 1;
    w[unit_symbol()] -= 2;
    relations_.append_row(w);

    for (const auto& x : enumerate_elements(h2)) {
      w = row();
      w[line_symbol(x)] += 1;
      w[line_symbol(negate_element(h2, x))] += 1;
      w[rank2_symbol(negate_element(h4, cup_square(r, x)))] -= 1;
      relations_.append_row(w);
    }
    for (const auto& y : enumerate_elements(h4))
      for (const auto& y2 : enumerate_elements(h4)) {
        w = row();
        w[rank2_symbol(y)] += 1;
        w[rank2_symbol(y2)] += 1;
        w[rank2_symbol(add_elements(h4, y, y2))] -= 1;
        w[unit_symbol()] -= 2;
        relations_.append_row(w);
      }
    for (const auto& x : enumerate_elements(h2))
      for (const auto& x2 : enumerate_elements(h2)) {
        w = row();
        w[line_symbol(x)] += 1;
        w[line_symbol(x2)] += 1;
        w[line_symbol(add_elements(h2, x, x2))] -= 1;
        w[rank2_symbol(cup(r, x, x2))] -= 1;
        w[unit_symbol()] += 1;
        relations_.append_row(w);
      }
  }

  FgGroup h2_;
  FgGroup h4_;
  std::size_t n2_ = 0;
  std::size_t n4_ = 0;
  IntMatrix relations_;
  SmithDecomposition snf_;
};

/// Reduced K^0 computed from the formal quotient.
inline GroupStructureReport oracle_reduced_group(const CohomologyRing& r) { return FormalQuotient(r).reduced_structure(); }

struct OracleComparison {
  GroupStructureReport engine;
  GroupStructureReport oracle;
  std::size_t checks = 0;
  std::size_t failure_count = 0;
  std::vector<std::string> failures;  // first kMaxCounterexamples messages

  bool ok() const { return failure_count == 0; }
};

/// Cross-validates the coordinate engine against the formal quotient:
///  - the two group structures agree;
///  - every additive relation row vanishes on the images 1, [L_x], [V_y];
///  - sending (rank, c1, c2) to the quotient class of
///    (rank - 3) 1 + l_{c1} + v_{c2} inverts the generator images, is
///    additive, and is injective on rank-0 classes;
///  - the multiplicative relations (2), (5), (6) hold in the quotient when
///    products are formed by the engine.
inline OracleComparison oracle_compare(const CohomologyRing& r) {
  OracleComparison out;
  const FormalQuotient q(r);
  out.engine = reduced_k_structure(r);
  out.oracle = q.reduced_structure();
  const FgGroup& h2 = r.h2();
  const FgGroup& h4 = r.h4();

  auto expect = [&out](bool ok, const std::function<std::string()>& what) {
    ++out.checks;
    if (ok) return;
    ++out.failure_count;
    if (out.failures.size() < kMaxCounterexamples) out.failures.push_back(what());
  };

  expect(out.engine == out.oracle, [&] {
    return "reduced group mismatch: engine " + to_string(out.engine) + ", oracle " + to_string(out.oracle);
  });
  GroupStructureReport full_engine = full_k_structure(r);
  GroupStructureReport full_oracle = q.full_structure();
  expect(full_engine == full_oracle, [&] {
    return "full group mismatch: engine " + to_string(full_engine) + ", oracle " + to_string(full_oracle);
  });

  // Engine image of each symbol.
  std::vector<KClass> image(q.symbol_count());
  image[q.unit_symbol()] = k_one(r);
  for (const auto& x : enumerate_elements(h2)) image[q.line_symbol(x)] = line_class(r, x);
  for (const auto& y : enumerate_elements(h4)) image[q.rank2_symbol(y)] = rank2_class(r, y);

  const IntMatrix& rel = q.relations();
  for (std::size_t row = 0; row < rel.rows(); ++row) {
    KClass sum = k_zero(r);
    for (std::size_t s = 0; s < rel.cols(); ++s)
      if (rel(row, s) != 0) sum = k_add(r, sum, k_scale(r, rel(row, s), image[s]));
    expect(sum == k_zero(r), [&, row] {
      return "relation row " + std::to_string(row) + " maps to " + to_string(sum) + " instead of 0";
    });
  }

  auto vector_of = [&](const KClass& a) {
    std::vector<Int> w(q.symbol_count(), 0);
    w[q.unit_symbol()] = checked_sub(a.rank, 3);
    w[q.line_symbol(a.c1)] += 1;
    w[q.rank2_symbol(a.c2)] += 1;
    return w;
  };
  auto psi = [&](const KClass& a) { return q.classify(vector_of(a)); };
  auto sum_vec = [](std::vector<Int> a, const std::vector<Int>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = checked_add(a[i], b[i]);
    return a;
  };

  for (std::size_t s = 0; s < q.symbol_count(); ++s) {
    expect(psi(image[s]) == q.classify(q.unit_vector(s)), [&, s] {
      return "symbol " + std::to_string(s) + " does not round-trip through " + to_string(image[s]);
    });
  }

  std::vector<KClass> reduced, low_rank;
  for (const auto& x : enumerate_elements(h2))
    for (const auto& y : enumerate_elements(h4)) {
      reduced.push_back(make_class(r, 0, x, y));
      low_rank.push_back(make_class(r, 0, x, y));
      low_rank.push_back(make_class(r, 1, x, y));
    }

  std::set<std::vector<Int>> seen;
  for (const auto& a : reduced) {
    bool fresh = seen.insert(psi(a)).second;
    expect(fresh, [&] { return "two reduced classes share the quotient class of " + to_string(a); });
  }
  for (const auto& a : low_rank)
    for (const auto& b : low_rank) {
      expect(psi(k_add(r, a, b)) == q.classify(sum_vec(vector_of(a), vector_of(b))),
             [&] { return "additivity fails for " + to_string(a) + " + " + to_string(b); });
    }

  auto cls = [&](std::initializer_list<std::pair<std::size_t, Int>> terms) {
    std::vector<Int> w(q.symbol_count(), 0);
    for (auto [s, k] : terms) w[s] = checked_add(w[s], k);
    return q.classify(w);
  };
  for (const auto& x : enumerate_elements(h2))
    for (const auto& x2 : enumerate_elements(h2)) {
      expect(psi(k_mul(r, line_class(r, x), line_class(r, x2))) == cls({{q.line_symbol(add_elements(h2, x, x2)), 1}}),
             [&] { return "relation (2) fails in the quotient at " + coords_to_string(x) + ", " + coords_to_string(x2); });
    }
  for (const auto& y : enumerate_elements(h4))
    for (const auto& y2 : enumerate_elements(h4)) {
      GroupElement s = scale_element(h4, 2, add_elements(h4, y, y2));
      expect(psi(k_mul(r, rank2_class(r, y), rank2_class(r, y2))) ==
                 cls({{q.unit_symbol(), 2}, {q.rank2_symbol(s), 1}}),
             [&] { return "relation (5) fails in the quotient at " + coords_to_string(y) + ", " + coords_to_string(y2); });
    }
  for (const auto& x : enumerate_elements(h2))
    for (const auto& y : enumerate_elements(h4)) {
      auto rhs = cls({{q.line_symbol(scale_element(h2, 2, x)), 1},
                      {q.rank2_symbol(add_elements(h4, cup_square(r, x), y)), 1},
                      {q.unit_symbol(), -1}});
      expect(psi(k_mul(r, line_class(r, x), rank2_class(r, y))) == rhs,
             [&] { return "relation (6) fails in the quotient at " + coords_to_string(x) + ", " + coords_to_string(y); });
    }
  return out;
}

}  // namespace k4ring
