#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace prmw {

// All combinatorial quantities are exact. Binomials like C(m+d,d) and
// Gaussian binomials overflow 64 bits at very moderate inputs, so everything
// downstream works in arbitrary precision.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt pow_big(const BigInt& base, unsigned long exp) {
  BigInt r = 1;
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

// ceil(a / b) for b > 0.
inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  if (b <= 0) throw std::invalid_argument("ceil_div: divisor must be positive");
  BigInt q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

// Least t >= 0 with t^k >= x. Pure integer binary search; no floating point
// anywhere, so threshold comparisons of the form q >= c^(a/b) stay exact.
inline BigInt iroot_ceil(const BigInt& x, unsigned k) {
  if (k == 0) throw std::invalid_argument("iroot_ceil: k must be >= 1");
  if (x <= 0) return 0;
  if (x == 1) return 1;
  BigInt hi = 1;
  while (pow_big(hi, k) < x) hi <<= 1;
  BigInt lo = hi >> 1;  // pow(lo, k) < x <= pow(hi, k)
  while (lo + 1 < hi) {
    BigInt mid = (lo + hi) >> 1;
    if (pow_big(mid, k) < x)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace prmw
