#pragma once

#include <cstddef>
#include <vector>

#include "k4ring/cohomology.hpp"
#include "k4ring/smith.hpp"

namespace k4ring {

/// Relation matrix presenting reduced K^0 as an abelian group.
///
/// Reduced K^0 is H^2 x H^4 with (x, y) + (x', y') = (x + x', y + y' + x x').
/// Columns: one per H^2 generator e_i, then one per H^4 generator f_j. Each
/// torsion f_j of order m gives m f_j = 0. Each torsion e_i of order n gives
/// n (e_i, 0) = (0, T(n) e_i^2), i.e. the row n e_i - T(n) coords(e_i^2).
inline IntMatrix reduced_k_relations(const CohomologyRing& r) {
  const FgGroup& h2 = r.h2();
  const FgGroup& h4 = r.h4();
  const std::size_t p = h2.generator_count();
  const std::size_t q = h4.generator_count();
  IntMatrix rel(0, p + q);
  for (std::size_t i = h2.free_rank(); i < p; ++i) {
    Int n = h2.generator_order(i);
    std::vector<Int> row(p + q, 0);
    row[i] = n;
    GroupElement sq = cup_square(r, generator(h2, i));
    Int t = triangular(n);
    for (std::size_t j = 0; j < q; ++j) row[p + j] = checked_neg(checked_mul(t, sq[j]));
    rel.append_row(row);
  }
  for (std::size_t j = h4.free_rank(); j < q; ++j) {
    std::vector<Int> row(p + q, 0);
    row[p + j] = h4.generator_order(j);
    rel.append_row(row);
  }
  return rel;
}

inline GroupStructureReport reduced_k_structure(const CohomologyRing& r) {
  return group_from_relations(r.h2().generator_count() + r.h4().generator_count(), reduced_k_relations(r));
}

/// K^0 = Z + reduced K^0, split by the rank.
inline GroupStructureReport full_k_structure(const CohomologyRing& r) {
  GroupStructureReport g = reduced_k_structure(r);
  ++g.free_rank;
  return g;
}

}  // namespace k4ring
