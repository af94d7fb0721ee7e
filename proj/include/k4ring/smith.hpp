#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "k4ring/errors.hpp"
#include "k4ring/integer.hpp"

namespace k4ring {

/// Dense integer matrix, row major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const std::vector<Int>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Appends a row; the first row appended to an empty 0x0 matrix fixes the width.
  void append_row(const std::vector<Int>& row) {
    if (rows_ == 0 && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw DimensionError("row width " + std::to_string(row.size()) + " != " + std::to_string(cols_));
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, Int k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) = checked_add((*this)(dst, c), checked_mul(k, (*this)(src, c)));
  }
  /// col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, Int k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) = checked_add((*this)(r, dst), checked_mul(k, (*this)(r, src)));
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = checked_neg((*this)(r, c));
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Int aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = checked_add(out(i, j), checked_mul(aik, b(k, j)));
    }
  return out;
}

/// D = U * M * V with U, V unimodular and D diagonal, non-negative,
/// d_1 | d_2 | ... (zeros last).
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  /// Diagonal entries of D, min(rows, cols) of them.
  std::vector<Int> diagonal() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }

  std::size_t rank() const {
    std::size_t r = 0;
    for (Int d : diagonal()) r += d != 0 ? 1 : 0;
    return r;
  }
};

namespace detail {

// Transforms are optional so callers that only need D (or D and V) do not pay
// for U.
struct SmithRequest {
  bool want_u = true;
  bool want_v = true;
};

// Moves the nonzero entry of least absolute value in the lower right block
// starting at (t, t) to position (t, t). Returns false if the block is zero.
inline bool bring_min_pivot(SmithDecomposition& s, const SmithRequest& req, std::size_t t) {
  IntMatrix& D = s.D;
  std::size_t best_r = 0, best_c = 0;
  Int best = 0;
  for (std::size_t r = t; r < D.rows(); ++r)
    for (std::size_t c = t; c < D.cols(); ++c) {
      Int v = checked_abs(D(r, c));
      if (v != 0 && (best == 0 || v < best)) {
        best = v;
        best_r = r;
        best_c = c;
      }
    }
  if (best == 0) return false;
  D.swap_rows(t, best_r);
  if (req.want_u) s.U.swap_rows(t, best_r);
  D.swap_cols(t, best_c);
  if (req.want_v) s.V.swap_cols(t, best_c);
  return true;
}

// Quotient nearest to a/b, so remainders stay within |b|/2.
inline Int nearest_quotient(Int a, Int b) {
  Int q = floor_div(a, b);
  Int r = checked_sub(a, checked_mul(q, b));
  // A floor remainder has the sign of b, so stepping q up shrinks it either way.
  if (checked_mul(2, checked_abs(r)) > checked_abs(b)) q = checked_add(q, 1);
  return q;
}

// Least-remainder elimination in checked 64-bit arithmetic. Fast on the large
// sparse relation matrices, but transform entries can grow past 64 bits on
// dense inputs, in which case OverflowError propagates.
inline SmithDecomposition smith_int64(const IntMatrix& m, const SmithRequest& req) {
  SmithDecomposition s{req.want_u ? IntMatrix::identity(m.rows()) : IntMatrix(), m,
                       req.want_v ? IntMatrix::identity(m.cols()) : IntMatrix()};
  IntMatrix& D = s.D;
  const std::size_t limit = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < limit; ++t) {
    if (!bring_min_pivot(s, req, t)) break;
    for (;;) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < D.rows(); ++r) {
        if (D(r, t) == 0) continue;
        Int q = nearest_quotient(D(r, t), D(t, t));
        D.add_row_multiple(r, t, checked_neg(q));
        if (req.want_u) s.U.add_row_multiple(r, t, checked_neg(q));
        dirty = dirty || D(r, t) != 0;
      }
      for (std::size_t c = t + 1; c < D.cols(); ++c) {
        if (D(t, c) == 0) continue;
        Int q = nearest_quotient(D(t, c), D(t, t));
        D.add_col_multiple(c, t, checked_neg(q));
        if (req.want_v) s.V.add_col_multiple(c, t, checked_neg(q));
        dirty = dirty || D(t, c) != 0;
      }
      if (dirty) {
        // A smaller remainder appeared in row or column t; pivot on it.
        bring_min_pivot(s, req, t);
        continue;
      }
      // Row and column are clear. The pivot must divide the rest of the block.
      bool divides = true;
      for (std::size_t r = t + 1; r < D.rows() && divides; ++r)
        for (std::size_t c = t + 1; c < D.cols(); ++c) {
          if (D(r, c) % D(t, t) != 0) {
            D.add_row_multiple(t, r, 1);
            if (req.want_u) s.U.add_row_multiple(t, r, 1);
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      if (req.want_u) s.U.negate_row(t);
    }
  }
  return s;
}

using Wide = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using WideRows = std::vector<std::vector<Wide>>;

inline WideRows widen(const IntMatrix& m) {
  WideRows out(m.rows(), std::vector<Wide>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline WideRows wide_identity(std::size_t n) {
  WideRows out(n, std::vector<Wide>(n, 0));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

inline WideRows transpose(const WideRows& m, std::size_t cols) {
  WideRows out(cols, std::vector<Wide>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j][i] = m[i][j];
  return out;
}

inline IntMatrix narrow(const WideRows& m, std::size_t cols) {
  IntMatrix out(m.size(), cols);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (m[i][j] > std::numeric_limits<Int>::max() || m[i][j] < std::numeric_limits<Int>::min())
        throw OverflowError("Smith transform entry exceeds 64 bits");
      out(i, j) = static_cast<Int>(m[i][j]);
    }
  return out;
}

inline Wide floor_quotient(const Wide& a, const Wide& b) {
  Wide q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// g = x a + y b with g = gcd(a, b) >= 0.
inline void extended_gcd(const Wide& a, const Wide& b, Wide& g, Wide& x, Wide& y) {
  Wide r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Wide q = floor_quotient(r0, r1);
    Wide tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  x = s0;
  y = t0;
}

// (row p, row r) <- (x p + y r, u p + v r)
inline void combine(std::vector<Wide>& p, std::vector<Wide>& r, const Wide& x, const Wide& y, const Wide& u,
                    const Wide& v) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    Wide a = p[k];
    p[k] = x * a + y * r[k];
    r[k] = u * a + v * r[k];
  }
}

inline void subtract_multiple(std::vector<Wide>& dst, const std::vector<Wide>& src, const Wide& q) {
  if (q == 0) return;
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= q * src[k];
}

// Row Hermite form of D, mirroring every row operation on T (if non-null).
inline void row_hermite(WideRows& D, std::size_t cols, WideRows* T) {
  std::size_t p = 0;
  for (std::size_t c = 0; c < cols && p < D.size(); ++c) {
    for (std::size_t r = p + 1; r < D.size(); ++r) {
      if (D[r][c] == 0) continue;
      if (D[p][c] == 0) {
        std::swap(D[p], D[r]);
        if (T) std::swap((*T)[p], (*T)[r]);
        continue;
      }
      if (D[r][c] % D[p][c] == 0) {
        Wide q = D[r][c] / D[p][c];
        subtract_multiple(D[r], D[p], q);
        if (T) subtract_multiple((*T)[r], (*T)[p], q);
        continue;
      }
      Wide a = D[p][c], b = D[r][c], g, x, y;
      extended_gcd(a, b, g, x, y);
      combine(D[p], D[r], x, y, -b / g, a / g);
      if (T) combine((*T)[p], (*T)[r], x, y, -b / g, a / g);
    }
    if (D[p][c] == 0) continue;
    if (D[p][c] < 0) {
      for (auto& v : D[p]) v = -v;
      if (T)
        for (auto& v : (*T)[p]) v = -v;
    }
    for (std::size_t i = 0; i < p; ++i) {
      Wide q = floor_quotient(D[i][c], D[p][c]);
      subtract_multiple(D[i], D[p], q);
      if (T) subtract_multiple((*T)[i], (*T)[p], q);
    }
    ++p;
  }
}

inline bool is_diagonal(const WideRows& D) {
  for (std::size_t i = 0; i < D.size(); ++i)
    for (std::size_t j = 0; j < D[i].size(); ++j)
      if (i != j && D[i][j] != 0) return false;
  return true;
}

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::vector<Rational> to_rational(const std::vector<Wide>& v) { return {v.begin(), v.end()}; }

// Nearest integer, halves rounded up.
inline Wide round_nearest(const Rational& q) {
  Wide n = numerator(q), d = denominator(q);
  return floor_quotient(2 * n + d, 2 * d);
}

// Gram-Schmidt orthogonalisation of linearly independent rows.
struct GramSchmidt {
  std::vector<std::vector<Rational>> star;
  std::vector<Rational> norm;
  std::vector<std::vector<Rational>> mu;

  explicit GramSchmidt(const WideRows& b) : star(b.size()), norm(b.size()), mu(b.size(), std::vector<Rational>(b.size())) {
    for (std::size_t i = 0; i < b.size(); ++i) add(b, i);
  }

  void add(const WideRows& b, std::size_t i) {
    std::vector<Rational> bi = to_rational(b[i]);
    star[i] = bi;
    for (std::size_t j = 0; j < i; ++j) {
      mu[i][j] = dot(bi, star[j]) / norm[j];
      for (std::size_t t = 0; t < bi.size(); ++t) star[i][t] -= mu[i][j] * star[j][t];
    }
    norm[i] = dot(star[i], star[i]);
  }
};

// LLL reduction (delta = 3/4) of linearly independent rows.
inline void lll_reduce(WideRows& b) {
  if (b.size() < 2) return;
  GramSchmidt gs(b);
  auto size_reduce = [&](std::size_t k, std::size_t l) {
    Wide q = round_nearest(gs.mu[k][l]);
    if (q == 0) return;
    subtract_multiple(b[k], b[l], q);
    gs.mu[k][l] -= Rational(q);
    for (std::size_t i = 0; i < l; ++i) gs.mu[k][i] -= Rational(q) * gs.mu[l][i];
  };
  std::size_t k = 1;
  while (k < b.size()) {
    size_reduce(k, k - 1);
    const Rational& m = gs.mu[k][k - 1];
    if (gs.norm[k] < (Rational(3, 4) - m * m) * gs.norm[k - 1]) {
      std::swap(b[k], b[k - 1]);
      // Recomputing rows k-1 and k and the coefficients below them is simple
      // and cheap at the sizes seen here.
      for (std::size_t i = k - 1; i < b.size(); ++i) gs.add(b, i);
      k = std::max<std::size_t>(k - 1, 1);
    } else {
      for (std::size_t l = k - 1; l-- > 0;) size_reduce(k, l);
      ++k;
    }
  }
}

// Babai nearest-plane reduction of v modulo the lattice spanned by b.
inline void reduce_modulo(std::vector<Wide>& v, const WideRows& b, const GramSchmidt& gs) {
  for (std::size_t j = b.size(); j-- > 0;) {
    Wide q = round_nearest(dot(to_rational(v), gs.star[j]) / gs.norm[j]);
    subtract_multiple(v, b[j], q);
  }
}

// Rows [rank, end) of T span a kernel that is free to change; shorten them
// and then shorten rows [0, rank) modulo their span.
inline void reduce_transform(WideRows& T, std::size_t rank) {
  if (rank >= T.size()) return;
  WideRows kernel(T.begin() + static_cast<std::ptrdiff_t>(rank), T.end());
  lll_reduce(kernel);
  GramSchmidt gs(kernel);
  for (std::size_t i = 0; i < rank; ++i) reduce_modulo(T[i], kernel, gs);
  std::copy(kernel.begin(), kernel.end(), T.begin() + static_cast<std::ptrdiff_t>(rank));
}

// Alternating row and column Hermite reduction in arbitrary precision, a
// gcd/lcm pass for the divisibility chain, then lattice reduction of the
// kernel parts of U and V. Only the final narrowing can overflow.
inline SmithDecomposition smith_wide(const IntMatrix& m, const SmithRequest& req) {
  const std::size_t rows = m.rows(), cols = m.cols();
  WideRows D = widen(m);
  WideRows U = wide_identity(rows);
  WideRows Vt = wide_identity(cols);  // V transposed: column operations act on rows
  for (;;) {
    row_hermite(D, cols, req.want_u ? &U : nullptr);
    if (is_diagonal(D)) break;
    WideRows Dt = transpose(D, cols);
    row_hermite(Dt, rows, req.want_v ? &Vt : nullptr);
    D = transpose(Dt, rows);
    if (is_diagonal(D)) break;
  }
  const std::size_t limit = std::min(rows, cols);
  std::size_t rank = 0;
  while (rank < limit && D[rank][rank] != 0) ++rank;
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = i + 1; j < rank; ++j) {
      Wide a = D[i][i], b = D[j][j];
      if (b % a == 0) continue;
      Wide g, x, y;
      extended_gcd(a, b, g, x, y);
      // Rows: [x y; -b/g a/g]. Columns i, j: (v_i + v_j, -(y b/g) v_i + (x a/g) v_j).
      if (req.want_u) combine(U[i], U[j], x, y, -b / g, a / g);
      if (req.want_v) combine(Vt[i], Vt[j], 1, 1, -y * b / g, x * a / g);
      D[i][i] = g;
      D[j][j] = a / g * b;
    }
  SmithDecomposition s;
  s.D = narrow(D, cols);
  if (req.want_u) {
    reduce_transform(U, rank);
    s.U = narrow(U, rows);
  }
  if (req.want_v) {
    reduce_transform(Vt, rank);
    WideRows V = transpose(Vt, cols);
    s.V = narrow(V, cols);
  }
  return s;
}

}  // namespace detail

/// Smith normal form with unimodular witnesses. Computed in arbitrary
/// precision with lattice-reduced transforms; throws OverflowError only if
/// an entry of U, D or V does not fit in 64 bits.
inline SmithDecomposition smith_normal_form(const IntMatrix& m) { return detail::smith_wide(m, {true, true}); }

/// D and V only (U is left empty). Tries the fast 64-bit elimination and
/// falls back to arbitrary precision when it overflows.
inline SmithDecomposition smith_column_form(const IntMatrix& m) {
  try {
    return detail::smith_int64(m, {false, true});
  } catch (const OverflowError&) {
    return detail::smith_wide(m, {false, true});
  }
}

/// Diagonal of the Smith normal form, min(rows, cols) entries.
inline std::vector<Int> smith_diagonal(const IntMatrix& m) {
  SmithDecomposition s;
  try {
    s = detail::smith_int64(m, {false, false});
  } catch (const OverflowError&) {
    s = detail::smith_wide(m, {false, false});
  }
  return s.diagonal();
}

/// Isomorphism type of a finitely generated abelian group: Z^free_rank plus
/// cyclic factors d_1 | d_2 | ... with every d_i >= 2.
struct GroupStructureReport {
  std::size_t free_rank = 0;
  std::vector<Int> invariant_factors;

  friend bool operator==(const GroupStructureReport&, const GroupStructureReport&) = default;
};

/// Renders as "Z^r ⊕ Z/d1 ⊕ ... ⊕ Z/dk"; the trivial group is "0".
inline std::string to_string(const GroupStructureReport& g) {
  std::string s;
  auto append = [&s](const std::string& part) {
    if (!s.empty()) s += " ⊕ ";
    s += part;
  };
  if (g.free_rank == 1) append("Z");
  if (g.free_rank > 1) append("Z^" + std::to_string(g.free_rank));
  for (Int d : g.invariant_factors) append("Z/" + std::to_string(d));
  return s.empty() ? "0" : s;
}

/// Cokernel of the relation matrix: Z^num_generators modulo the row span.
inline GroupStructureReport group_from_relations(std::size_t num_generators, const IntMatrix& relations) {
  if (relations.rows() > 0 && relations.cols() != num_generators) {
    throw DimensionError("relation matrix has " + std::to_string(relations.cols()) + " columns, expected " +
                         std::to_string(num_generators));
  }
  if (relations.rows() == 0) return {num_generators, {}};
  GroupStructureReport out;
  std::size_t rank = 0;
  for (Int d : smith_diagonal(relations)) {
    if (d > 1) out.invariant_factors.push_back(d);
    rank += d != 0 ? 1 : 0;
  }
  out.free_rank = num_generators - rank;
  return out;
}

}  // namespace k4ring
