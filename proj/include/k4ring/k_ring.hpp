#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "k4ring/cohomology.hpp"

namespace k4ring {

/// A stable class in K^0(X), stored as (virtual rank, c1, c2). On a
/// 4-complex these three invariants determine the class and every triple
/// occurs, so componentwise equality is equality in K^0.
struct KClass {
  Int rank = 0;
  GroupElement c1;
  GroupElement c2;
  std::uint64_t ring_id = 0;

  friend bool operator==(const KClass&, const KClass&) = default;
};

namespace detail {

inline void check_ring(const CohomologyRing& r, const KClass& a) {
  if (a.ring_id != r.id()) throw MixedRingError("K-class belongs to a different cohomology ring");
}

}  // namespace detail

/// Builds (rank, c1, c2), canonicalizing the Chern classes.
inline KClass make_class(const CohomologyRing& r, Int rank, GroupElement c1, GroupElement c2) {
  return KClass{rank, canonical(r.h2(), std::move(c1)), canonical(r.h4(), std::move(c2)), r.id()};
}

inline KClass k_zero(const CohomologyRing& r) { return make_class(r, 0, zero_element(r.h2()), zero_element(r.h4())); }

/// n times the trivial line bundle.
inline KClass k_integer(const CohomologyRing& r, Int n) {
  return make_class(r, n, zero_element(r.h2()), zero_element(r.h4()));
}

inline KClass k_one(const CohomologyRing& r) { return k_integer(r, 1); }

/// [L_x]: the line bundle with c1 = x.
inline KClass line_class(const CohomologyRing& r, const GroupElement& x) {
  return make_class(r, 1, x, zero_element(r.h4()));
}

/// [V_y]: the rank-2 bundle with c1 = 0 and c2 = y.
inline KClass rank2_class(const CohomologyRing& r, const GroupElement& y) {
  return make_class(r, 2, zero_element(r.h2()), y);
}

/// Whitney sum: c2 picks up the cross term c1(a) c1(b).
inline KClass k_add(const CohomologyRing& r, const KClass& a, const KClass& b) {
  detail::check_ring(r, a);
  detail::check_ring(r, b);
  std::vector<Int> c2 = add_elements(r.h4(), a.c2, b.c2).coeffs;
  detail::add_scaled_cup(r, c2, 1, a.c1, b.c1);
  return KClass{checked_add(a.rank, b.rank), add_elements(r.h2(), a.c1, b.c1), GroupElement(std::move(c2)), r.id()};
}

inline KClass k_neg(const CohomologyRing& r, const KClass& a) {
  detail::check_ring(r, a);
  const FgGroup& h4 = r.h4();
  return KClass{checked_neg(a.rank), negate_element(r.h2(), a.c1),
                subtract_elements(h4, cup_square(r, a.c1), a.c2), r.id()};
}

inline KClass k_sub(const CohomologyRing& r, const KClass& a, const KClass& b) {
  return k_add(r, a, k_neg(r, b));
}

/// n * a = (n rank, n c1, n c2 + T(n) c1^2) with T(n) = n(n-1)/2.
inline KClass k_scale(const CohomologyRing& r, Int n, const KClass& a) {
  detail::check_ring(r, a);
  const FgGroup& h4 = r.h4();
  GroupElement c2 = add_elements(h4, scale_element(h4, n, a.c2), scale_element(h4, triangular(n), cup_square(r, a.c1)));
  return KClass{checked_mul(n, a.rank), scale_element(r.h2(), n, a.c1), std::move(c2), r.id()};
}

/// Tensor product extended to virtual classes:
///   rank = ra rb
///   c1   = rb c1a + ra c1b
///   c2   = ra c2b + rb c2a + (ra rb - 1) c1a c1b + T(rb) c1a^2 + T(ra) c1b^2
inline KClass k_mul(const CohomologyRing& r, const KClass& a, const KClass& b) {
  detail::check_ring(r, a);
  detail::check_ring(r, b);
  const FgGroup& h2 = r.h2();
  const FgGroup& h4 = r.h4();
  const Int ra = a.rank;
  const Int rb = b.rank;
  GroupElement c1 = add_elements(h2, scale_element(h2, rb, a.c1), scale_element(h2, ra, b.c1));
  std::vector<Int> c2 = add_elements(h4, scale_element(h4, ra, b.c2), scale_element(h4, rb, a.c2)).coeffs;
  detail::add_scaled_cup(r, c2, checked_sub(checked_mul(ra, rb), 1), a.c1, b.c1);
  detail::add_scaled_cup(r, c2, triangular(rb), a.c1, a.c1);
  detail::add_scaled_cup(r, c2, triangular(ra), b.c1, b.c1);
  return KClass{checked_mul(ra, rb), std::move(c1), GroupElement(std::move(c2)), r.id()};
}

/// a^n by repeated squaring, n >= 0.
inline KClass k_pow(const CohomologyRing& r, const KClass& a, Int n) {
  if (n < 0) throw std::invalid_argument("negative exponent");
  KClass result = k_one(r);
  KClass base = a;
  while (n > 0) {
    if (n & 1) result = k_mul(r, result, base);
    n >>= 1;
    if (n > 0) base = k_mul(r, base, base);
  }
  return result;
}

/// a = n * 1 + [L_x] + [V_y].
struct Decomposition {
  Int n = 0;
  GroupElement x;
  GroupElement y;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// L_x + V_y has rank 3 and total Chern class (1 + x)(1 + y) = 1 + x + y.
inline Decomposition decompose(const CohomologyRing& r, const KClass& a) {
  detail::check_ring(r, a);
  return Decomposition{checked_sub(a.rank, 3), a.c1, a.c2};
}

/// n * 1 + [L_x] + [V_y] through the ring operations.
inline KClass recompose(const CohomologyRing& r, const Decomposition& d) {
  return k_add(r, k_add(r, k_integer(r, d.n), line_class(r, d.x)), rank2_class(r, d.y));
}

/// a - rank(a) * 1. Subtracting a trivial bundle leaves the Chern classes alone.
inline KClass reduced_part(const KClass& a) {
  KClass out = a;
  out.rank = 0;
  return out;
}

/// Additive order, or empty for infinite order. Infinite whenever the rank or
/// a free Chern coordinate is nonzero; otherwise found by repeated addition,
/// bounded by |torsion H^2| * |torsion H^4|.
inline ElementOrder class_order(const CohomologyRing& r, const KClass& a) {
  detail::check_ring(r, a);
  if (a.rank != 0) return std::nullopt;
  for (std::size_t i = 0; i < r.h2().free_rank(); ++i)
    if (a.c1[i] != 0) return std::nullopt;
  for (std::size_t i = 0; i < r.h4().free_rank(); ++i)
    if (a.c2[i] != 0) return std::nullopt;
  const KClass zero = k_zero(r);
  KClass acc = a;
  for (Int n = 1;; ++n) {
    if (acc == zero) return n;
    acc = k_add(r, acc, a);
  }
}

inline std::string coords_to_string(const GroupElement& e) {
  std::string s = "[";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(e[i]);
  }
  return s + "]";
}

/// "(rank, [c1...], [c2...])"
inline std::string to_string(const KClass& a) {
  return "(" + std::to_string(a.rank) + ", " + coords_to_string(a.c1) + ", " + coords_to_string(a.c2) + ")";
}

}  // namespace k4ring
