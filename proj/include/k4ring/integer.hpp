#pragma once

#include <cstdint>
#include <numeric>

#include "k4ring/errors.hpp"

namespace k4ring {

using Int = std::int64_t;

// Checked arithmetic. Every coefficient in the library goes through these so
// that leaving the 64-bit range is an exception instead of wraparound.

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Int checked_neg(Int a) { return checked_sub(0, a); }

/// Representative of a in [0, n). Requires n >= 1.
inline Int floor_mod(Int a, Int n) {
  Int r = a % n;
  return r < 0 ? r + n : r;
}

/// Quotient rounded toward negative infinity. Requires b != 0.
inline Int floor_div(Int a, Int b) {
  if (b == -1) return checked_neg(a);
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// n(n-1)/2, exact for every integer n (T(-1) = 1).
inline Int triangular(Int n) {
  // One of n, n-1 is even; divide that one first.
  Int m = checked_sub(n, 1);
  return (n % 2 == 0) ? checked_mul(n / 2, m) : checked_mul(n, m / 2);
}

inline Int checked_abs(Int a) { return a < 0 ? checked_neg(a) : a; }

inline Int lcm_checked(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  Int g = std::gcd(a, b);
  return checked_abs(checked_mul(a / g, b));
}

}  // namespace k4ring
