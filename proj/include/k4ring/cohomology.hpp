#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "k4ring/abelian.hpp"

namespace k4ring {

/// Cup products of pairs of H^2 generators, as H^4 elements. Setting (i, j)
/// also sets (j, i); validation still checks symmetry for tables assembled
/// through set_ordered.
class CupForm {
 public:
  CupForm() = default;
  CupForm(std::size_t h2_generators, std::size_t h4_generators)
      : p_(h2_generators), q_(h4_generators), table_(p_ * p_, GroupElement(std::vector<Int>(q_, 0))) {}

  std::size_t h2_generators() const noexcept { return p_; }
  std::size_t h4_generators() const noexcept { return q_; }

  const GroupElement& entry(std::size_t i, std::size_t j) const { return table_.at(i * p_ + j); }

  void set(std::size_t i, std::size_t j, GroupElement value) {
    set_ordered(i, j, value);
    set_ordered(j, i, std::move(value));
  }

  /// Sets only the (i, j) slot.
  void set_ordered(std::size_t i, std::size_t j, GroupElement value) { table_.at(i * p_ + j) = std::move(value); }

  friend bool operator==(const CupForm&, const CupForm&) = default;

 private:
  std::size_t p_ = 0;
  std::size_t q_ = 0;
  std::vector<GroupElement> table_;
};

/// Unvalidated ring data: H^2, H^4 and the cup form on H^2 generators.
struct RingPresentation {
  FgGroup h2;
  FgGroup h4;
  CupForm cup;

  friend bool operator==(const RingPresentation&, const RingPresentation&) = default;
};

struct Violation {
  enum class Kind { Shape, NonCanonical, Asymmetric, TorsionIncompatible };
  Kind kind;
  std::size_t i = 0;  // 0-based H^2 generator indices
  std::size_t j = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

inline ValidationReport validate_ring(const RingPresentation& data) {
  ValidationReport report;
  const std::size_t p = data.h2.generator_count();
  const std::size_t q = data.h4.generator_count();
  if (data.cup.h2_generators() != p || data.cup.h4_generators() != q) {
    report.violations.push_back({Violation::Kind::Shape, 0, 0,
                                 "cup table is " + std::to_string(data.cup.h2_generators()) + "x" +
                                     std::to_string(data.cup.h2_generators()) + " over " +
                                     std::to_string(data.cup.h4_generators()) + " H4 generators; expected " +
                                     std::to_string(p) + "x" + std::to_string(p) + " over " + std::to_string(q)});
    return report;
  }
  auto label = [](std::size_t i, std::size_t j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  };
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const GroupElement& e = data.cup.entry(i, j);
      if (e.size() != q) {
        report.violations.push_back({Violation::Kind::Shape, i, j, "cup entry " + label(i, j) + " has wrong length"});
        continue;
      }
      if (canonical(data.h4, e) != e) {
        report.violations.push_back(
            {Violation::Kind::NonCanonical, i, j, "cup entry " + label(i, j) + " is not reduced modulo H4 torsion"});
      }
      if (j > i && data.cup.entry(j, i) != e) {
        report.violations.push_back({Violation::Kind::Asymmetric, i, j,
                                     "cup entries " + label(i, j) + " and " + label(j, i) + " differ"});
      }
      Int n = data.h2.generator_order(i);
      if (n != 0 && !is_zero(scale_element(data.h4, n, e))) {
        report.violations.push_back({Violation::Kind::TorsionIncompatible, i, j,
                                     "H2 generator " + std::to_string(i + 1) + " has order " + std::to_string(n) +
                                         " but " + std::to_string(n) + " * cup" + label(i, j) + " != 0 in H4"});
      }
    }
  }
  return report;
}

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(ValidationReport report)
      : std::invalid_argument(summary(report)), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  static std::string summary(const ValidationReport& r) {
    std::string s = "invalid cohomology ring";
    for (const auto& v : r.violations) s += "; " + v.message;
    return s;
  }
  ValidationReport report_;
};

/// Validated even cohomology ring of a connected 4-complex. Only
/// constructible through create(), so holding one means validation passed.
/// Copies share an identity; K-classes are tied to that identity.
class CohomologyRing {
 public:
  static CohomologyRing create(RingPresentation data) {
    ValidationReport report = validate_ring(data);
    if (!report.ok()) throw ValidationError(std::move(report));
    return CohomologyRing(std::move(data));
  }

  const FgGroup& h2() const noexcept { return data_.h2; }
  const FgGroup& h4() const noexcept { return data_.h4; }
  const CupForm& cup_form() const noexcept { return data_.cup; }
  const RingPresentation& presentation() const noexcept { return data_; }
  std::uint64_t id() const noexcept { return id_; }

  bool is_finite() const noexcept { return data_.h2.is_finite() && data_.h4.is_finite(); }

  /// Same groups and cup table, regardless of identity.
  friend bool operator==(const CohomologyRing& a, const CohomologyRing& b) { return a.data_ == b.data_; }

 private:
  explicit CohomologyRing(RingPresentation data) : data_(std::move(data)), id_(next_id()) {}

  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{0};
    return ++counter;
  }

  RingPresentation data_;
  std::uint64_t id_;
};

namespace detail {

// acc += s * (a b), coordinate by coordinate. Torsion coordinates of acc are
// kept reduced; free ones are exact. a and b must be members of H^2.
inline void add_scaled_cup(const CohomologyRing& r, std::vector<Int>& acc, Int s, const GroupElement& a,
                           const GroupElement& b) {
  if (s == 0) return;
  const FgGroup& h4 = r.h4();
  const std::size_t free4 = h4.free_rank();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const Int sa = checked_mul(s, a[i]);
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      const GroupElement& e = r.cup_form().entry(i, j);
      for (std::size_t t = 0; t < acc.size(); ++t) {
        if (e[t] == 0) continue;
        if (t < free4) {
          acc[t] = checked_add(acc[t], checked_mul(checked_mul(sa, b[j]), e[t]));
        } else {
          const Int m = h4.generator_order(t);
          const Int term = floor_mod(checked_mul(floor_mod(checked_mul(floor_mod(sa, m), floor_mod(b[j], m)), m), e[t]), m);
          acc[t] = floor_mod(checked_add(acc[t], term), m);
        }
      }
    }
  }
}

}  // namespace detail

/// Bilinear extension of the generator table: sum_ij a_i b_j entry(i, j).
inline GroupElement cup(const CohomologyRing& r, const GroupElement& a, const GroupElement& b) {
  detail::check_member(r.h2(), a);
  detail::check_member(r.h2(), b);
  std::vector<Int> acc(r.h4().generator_count(), 0);
  detail::add_scaled_cup(r, acc, 1, a, b);
  return GroupElement(std::move(acc));
}

inline GroupElement cup_square(const CohomologyRing& r, const GroupElement& a) { return cup(r, a, a); }

}  // namespace k4ring
