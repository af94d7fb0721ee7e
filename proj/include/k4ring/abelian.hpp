#pragma once

#include <compare>
#include <cstddef>
#include <iterator>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k4ring/errors.hpp"
#include "k4ring/integer.hpp"

namespace k4ring {

/// Finitely generated abelian group Z^free_rank + Z/n_1 + ... + Z/n_k.
///
/// Generators are ordered free first, then torsion in the given order. The
/// torsion orders need not form a divisibility chain; Z/2 + Z/2 is stored as
/// written.
class FgGroup {
 public:
  FgGroup() = default;

  FgGroup(std::size_t free_rank, std::vector<Int> torsion_orders)
      : free_rank_(free_rank), torsion_(std::move(torsion_orders)) {
    for (Int n : torsion_) {
      if (n < 2) throw std::invalid_argument("torsion order must be at least 2, got " + std::to_string(n));
    }
  }

  static FgGroup free(std::size_t rank) { return FgGroup(rank, {}); }
  static FgGroup cyclic(Int n) { return FgGroup(0, {n}); }

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Int>& torsion_orders() const noexcept { return torsion_; }
  std::size_t generator_count() const noexcept { return free_rank_ + torsion_.size(); }
  bool is_finite() const noexcept { return free_rank_ == 0; }

  /// Order of generator i, or 0 for a free generator.
  Int generator_order(std::size_t i) const {
    return i < free_rank_ ? 0 : torsion_.at(i - free_rank_);
  }

  /// Number of elements. Throws InfiniteGroupError when free_rank > 0.
  Int cardinality() const {
    if (!is_finite()) throw InfiniteGroupError("group has free rank " + std::to_string(free_rank_));
    Int n = 1;
    for (Int t : torsion_) n = checked_mul(n, t);
    return n;
  }

  /// Human readable form, e.g. "Z^2 + Z/2 + Z/4" or "0".
  std::string describe() const {
    std::string s;
    auto append = [&s](const std::string& part) {
      if (!s.empty()) s += " + ";
      s += part;
    };
    if (free_rank_ == 1) append("Z");
    if (free_rank_ > 1) append("Z^" + std::to_string(free_rank_));
    for (Int t : torsion_) append("Z/" + std::to_string(t));
    return s.empty() ? "0" : s;
  }

  friend bool operator==(const FgGroup&, const FgGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Int> torsion_;
};

/// Coefficients of an element over the generators of some FgGroup. Only the
/// group knows which coordinates are torsion; operations take it explicitly.
struct GroupElement {
  std::vector<Int> coeffs;

  GroupElement() = default;
  explicit GroupElement(std::vector<Int> c) : coeffs(std::move(c)) {}
  GroupElement(std::initializer_list<Int> c) : coeffs(c) {}

  std::size_t size() const noexcept { return coeffs.size(); }
  Int operator[](std::size_t i) const { return coeffs[i]; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Empty optional means infinite order.
using ElementOrder = std::optional<Int>;

namespace detail {

inline void check_member(const FgGroup& g, const GroupElement& a) {
  if (a.size() != g.generator_count()) {
    throw DimensionError("element has " + std::to_string(a.size()) + " coefficients, group " + g.describe() +
                         " has " + std::to_string(g.generator_count()) + " generators");
  }
}

}  // namespace detail

/// Reduces torsion coordinates into [0, n).
inline GroupElement canonical(const FgGroup& g, GroupElement a) {
  detail::check_member(g, a);
  for (std::size_t i = g.free_rank(); i < a.coeffs.size(); ++i) {
    a.coeffs[i] = floor_mod(a.coeffs[i], g.generator_order(i));
  }
  return a;
}

inline GroupElement zero_element(const FgGroup& g) {
  return GroupElement(std::vector<Int>(g.generator_count(), 0));
}

inline bool is_zero(const GroupElement& a) {
  for (Int c : a.coeffs) {
    if (c != 0) return false;
  }
  return true;
}

/// i-th generator as an element.
inline GroupElement generator(const FgGroup& g, std::size_t i) {
  GroupElement e = zero_element(g);
  e.coeffs.at(i) = 1;
  return e;
}

inline GroupElement add_elements(const FgGroup& g, const GroupElement& a, const GroupElement& b) {
  detail::check_member(g, a);
  detail::check_member(g, b);
  GroupElement r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = checked_add(r.coeffs[i], b.coeffs[i]);
  return canonical(g, std::move(r));
}

inline GroupElement negate_element(const FgGroup& g, const GroupElement& a) {
  detail::check_member(g, a);
  GroupElement r = a;
  for (Int& c : r.coeffs) c = checked_neg(c);
  return canonical(g, std::move(r));
}

inline GroupElement subtract_elements(const FgGroup& g, const GroupElement& a, const GroupElement& b) {
  return add_elements(g, a, negate_element(g, b));
}

inline GroupElement scale_element(const FgGroup& g, Int n, const GroupElement& a) {
  detail::check_member(g, a);
  GroupElement r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    Int c = r.coeffs[i];
    if (i >= g.free_rank()) {
      // Reduce first so that large n cannot overflow a bounded coordinate.
      Int order = g.generator_order(i);
      c = floor_mod(checked_mul(floor_mod(n, order), floor_mod(c, order)), order);
    } else {
      c = checked_mul(n, c);
    }
    r.coeffs[i] = c;
  }
  return r;
}

/// Least n >= 1 with n*a = 0, or empty when a has a nonzero free coordinate.
inline ElementOrder element_order(const FgGroup& g, const GroupElement& a) {
  detail::check_member(g, a);
  for (std::size_t i = 0; i < g.free_rank(); ++i) {
    if (a.coeffs[i] != 0) return std::nullopt;
  }
  Int order = 1;
  for (std::size_t i = g.free_rank(); i < a.size(); ++i) {
    Int n = g.generator_order(i);
    Int c = floor_mod(a.coeffs[i], n);
    order = lcm_checked(order, n / std::gcd(n, c));
  }
  return order;
}

/// Position of a canonical element of a finite group in enumeration order
/// (mixed radix, last coordinate fastest).
inline std::size_t element_index(const FgGroup& g, const GroupElement& a) {
  detail::check_member(g, a);
  if (!g.is_finite()) throw InfiniteGroupError("cannot index elements of " + g.describe());
  std::size_t idx = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Int n = g.generator_order(i);
    idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(floor_mod(a.coeffs[i], n));
  }
  return idx;
}

/// Inverse of element_index.
inline GroupElement element_at(const FgGroup& g, std::size_t index) {
  if (!g.is_finite()) throw InfiniteGroupError("cannot index elements of " + g.describe());
  GroupElement e = zero_element(g);
  for (std::size_t i = e.size(); i-- > 0;) {
    auto n = static_cast<std::size_t>(g.generator_order(i));
    e.coeffs[i] = static_cast<Int>(index % n);
    index /= n;
  }
  if (index != 0) throw std::out_of_range("element index past the end of " + g.describe());
  return e;
}

/// Lazy view over every element of a finite group, each exactly once, in
/// element_index order.
class ElementRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = GroupElement;
    using difference_type = std::ptrdiff_t;
    using reference = const GroupElement&;
    using pointer = const GroupElement*;

    iterator() = default;
    iterator(const FgGroup* g, bool done) : group_(g), done_(done) {
      if (g != nullptr) current_ = zero_element(*g);
    }

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }

    iterator& operator++() {
      for (std::size_t i = current_.size(); i-- > 0;) {
        if (++current_.coeffs[i] < group_->generator_order(i)) return *this;
        current_.coeffs[i] = 0;
      }
      done_ = true;
      return *this;
    }
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

   private:
    const FgGroup* group_ = nullptr;
    GroupElement current_;
    bool done_ = true;
  };

  explicit ElementRange(FgGroup g) : group_(std::move(g)) {
    if (!group_.is_finite()) throw InfiniteGroupError("cannot enumerate infinite group " + group_.describe());
  }

  iterator begin() const { return iterator(&group_, false); }
  iterator end() const { return iterator(&group_, true); }

 private:
  FgGroup group_;
};

/// Throws InfiniteGroupError for groups with free rank.
inline ElementRange enumerate_elements(const FgGroup& g) { return ElementRange(g); }

/// Every element whose free coordinates lie in [-bound, bound] (torsion
/// coordinates range over all residues). Equals enumerate_elements on finite
/// groups.
inline std::vector<GroupElement> bounded_elements(const FgGroup& g, Int bound) {
  std::vector<GroupElement> out;
  GroupElement cur = zero_element(g);
  for (std::size_t i = 0; i < g.free_rank(); ++i) cur.coeffs[i] = -bound;
  for (;;) {
    out.push_back(cur);
    std::size_t i = cur.size();
    for (; i-- > 0;) {
      Int hi = i < g.free_rank() ? bound : g.generator_order(i) - 1;
      Int lo = i < g.free_rank() ? -bound : 0;
      if (cur.coeffs[i] < hi) {
        ++cur.coeffs[i];
        break;
      }
      cur.coeffs[i] = lo;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace k4ring
