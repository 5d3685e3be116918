#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "prmw/exact_math.hpp"

namespace prmw {

// Exact combinatorics around the composition poset Omega(d,m) and the
// Heijnen-Pellikaan quantity H_r(d,m). Boundary conventions live here and
// nowhere else:
//   binom(n,k) = 0 outside 0 <= k <= n,
//   pi(m)      = 0 for m < 0,
//   H_0        = q^m,   H_r = 0 for r > C(m+d,d).
// All functions are pure; hypothesis ranges of the underlying lemmas are
// enforced by the verification suites, not here.

// C(n, k), total: zero when k < 0, n < 0 or k > n.
inline BigInt binom(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: product of i consecutive integers is divisible by i!
  }
  return r;
}

// pi_m = |P^m(F_q)| = 1 + q + ... + q^m, and 0 for m < 0.
inline BigInt pi(int m, const BigInt& q) {
  if (m < 0) return 0;
  return (pow_big(q, static_cast<unsigned long>(m) + 1) - 1) / (q - 1);
}

// Number of k-dimensional subspaces of an n-dimensional F_q vector space.
inline BigInt gaussian_binom(int n, int k, const BigInt& q) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt num = 1, den = 1;
  for (int i = 1; i <= k; ++i) {
    num *= pow_big(q, static_cast<unsigned long>(n - k + i)) - 1;
    den *= pow_big(q, static_cast<unsigned long>(i)) - 1;
  }
  BigInt r = num / den;
  if (r * den != num) throw std::logic_error("gaussian_binom: non-exact division");
  return r;
}

// An element of Omega(d,m): m+1 nonnegative integers summing to d.
struct CompositionTuple {
  std::vector<int> entries;

  int m() const { return static_cast<int>(entries.size()) - 1; }
  int d() const {
    int s = 0;
    for (int e : entries) s += e;
    return s;
  }
  bool operator==(const CompositionTuple&) const = default;
};

// omega_r(d,m): the r-th largest element of Omega(d,m) in lexicographic
// order, computed greedily coordinate by coordinate. Valid for
// 1 <= r <= C(m+d,d); never materializes Omega, so it works far beyond
// enumerable sizes.
inline CompositionTuple omega_unrank(int d, int m, const BigInt& r) {
  if (d < 0 || m < 0) throw std::invalid_argument("omega_unrank: need d, m >= 0");
  if (r < 1 || r > binom(m + d, d)) throw std::invalid_argument("omega_unrank: rank out of range");
  CompositionTuple w;
  w.entries.assign(m + 1, 0);
  BigInt skip = r - 1;  // number of elements strictly above the target
  int remaining = d;
  for (int k = 1; k <= m; ++k) {
    for (int g = remaining; g >= 0; --g) {
      // tuples with this prefix: compositions of remaining-g into m+1-k parts
      BigInt cnt = binom(remaining - g + m - k, m - k);
      if (skip < cnt) {
        w.entries[k - 1] = g;
        remaining -= g;
        break;
      }
      skip -= cnt;
    }
  }
  w.entries[m] = remaining;
  return w;
}

// Inverse of omega_unrank: r = 1 + sum_k C(m-k+d-(a_1+...+a_k), m-k+1).
inline BigInt omega_rank(const CompositionTuple& w) {
  int m = w.m();
  int d = w.d();
  BigInt r = 1;
  int prefix = 0;
  for (int k = 1; k <= m; ++k) {
    prefix += w.entries[k - 1];
    r += binom(m - k + d - prefix, m - k + 1);
  }
  return r;
}

// Full enumeration of Omega(d,m) in descending lexicographic order. Used as
// an independent cross-check for the arithmetic unranking at small sizes.
inline std::vector<CompositionTuple> omega_enumerate(int d, int m) {
  std::vector<CompositionTuple> out;
  std::vector<int> cur(m + 1, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == m) {
      cur[m] = left;
      out.push_back(CompositionTuple{cur});
      return;
    }
    for (int g = left; g >= 0; --g) {
      cur[pos] = g;
      self(self, pos + 1, left - g);
    }
  };
  rec(rec, 0, d);
  return out;
}

// H_r(d,m) = sum_{i=1}^m beta_i q^{m-i} where omega_r(d,m) = (beta_1,...).
// H_0 = q^m; H_r = 0 past the top of the range.
inline BigInt H(const BigInt& r, int d, int m, const BigInt& q) {
  if (r < 0) throw std::invalid_argument("H: rank must be nonnegative");
  if (r == 0) return pow_big(q, static_cast<unsigned long>(m));
  if (r > binom(m + d, d)) return 0;
  CompositionTuple w = omega_unrank(d, m, r);
  BigInt v = 0;
  for (int i = 1; i <= m; ++i) v += w.entries[i - 1] * pow_big(q, static_cast<unsigned long>(m - i));
  return v;
}

// Exponent multiset a_1 <= ... <= a_d in [-1, m-1] with
// H_r(d,m) = sum_j floor(q^{a_j}) (floor(q^{-1}) = 0) and
// r = C(m+d,d) - sum_j C(a_j + j, j).
struct HDecomposition {
  std::vector<int> exponents;  // ascending, size d

  BigInt value(const BigInt& q) const {
    BigInt v = 0;
    for (int a : exponents)
      if (a >= 0) v += pow_big(q, static_cast<unsigned long>(a));
    return v;
  }
};

inline HDecomposition h_decompose(const BigInt& r, int d, int m) {
  CompositionTuple w = omega_unrank(d, m, r);  // validates the range
  HDecomposition out;
  out.exponents.reserve(d);
  for (int i = 1; i <= m + 1; ++i) {
    int e = (i <= m) ? m - i : -1;
    for (int c = 0; c < w.entries[i - 1]; ++c) out.exponents.push_back(e);
  }
  std::sort(out.exponents.begin(), out.exponents.end());
  return out;
}

}  // namespace prmw
