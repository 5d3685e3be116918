#pragma once

#include <optional>
#include <stdexcept>

#include "prmw/exact_math.hpp"
#include "prmw/weight_combinatorics.hpp"

namespace prmw {

// Closed-form evaluators for the e_r(d,m) formulas, range parameters,
// q-thresholds, and the named point-count bounds, all in exact arithmetic.
// Fractional powers (c^{14/3}, q^{k-1/2}, delta^{13/3}) are handled with
// integer k-th-root ceilings rounded outward, so no threshold decision ever
// touches floating point. Evaluators are total where the definition is
// total; hypothesis ranges are the harness's business.

// Range parameters of r inside [1, C(m+d,d)]: the unique l in [1, m+1] with
//   C(m+d,d) - C(m+d+1-l,d) < r <= C(m+d,d) - C(m+d-l,d),
// and, in the refined regime (r <= C(m+d,d) - d, equivalently l <= m), the
// unique c in [1, d] with
//   C(m+d,d) - C(m+d+1-l,d) + C(m+d-l-c,d-c-1) < r
//                         <= C(m+d,d) - C(m+d+1-l,d) + C(m+d+1-l-c,d-c).
// j is the shifted index r - C(m+d,d) + C(m+d+1-l,d).
struct RangeParams {
  int l = 0;
  std::optional<int> c;  // set only when l <= m
  BigInt j;
};

inline void check_r_range(int d, int m, const BigInt& r) {
  if (d < 1 || m < 1) throw std::invalid_argument("need d, m >= 1");
  if (r < 1 || r > binom(m + d, d)) throw std::invalid_argument("r out of range [1, C(m+d,d)]");
}

inline int range_l(int d, int m, const BigInt& r) {
  check_r_range(d, m, r);
  const BigInt total = binom(m + d, d);
  for (int l = 1; l <= m + 1; ++l) {
    if (total - binom(m + d + 1 - l, d) < r && r <= total - binom(m + d - l, d)) return l;
  }
  throw std::logic_error("range_l: no l found");  // unreachable: the ranges tile [1, C]
}

inline RangeParams range_lc(int d, int m, const BigInt& r) {
  check_r_range(d, m, r);
  RangeParams out;
  out.l = range_l(d, m, r);
  const BigInt total = binom(m + d, d);
  out.j = r - total + binom(m + d + 1 - out.l, d);
  if (out.l == m + 1) return out;  // beyond the refined regime, c undefined
  const BigInt base = total - binom(m + d + 1 - out.l, d);
  for (int c = 1; c <= d; ++c) {
    if (base + binom(m + d - out.l - c, d - c - 1) < r && r <= base + binom(m + d + 1 - out.l - c, d - c)) {
      out.c = c;
      return out;
    }
  }
  throw std::logic_error("range_lc: no c found");  // unreachable: the cells tile the l-block
}

// Complete Beelen-Datta-Ghorpade value: H_j(d-1, m-l+1) + pi_{m-l}. The
// l = m+1 block yields 0 through the H/pi boundary conventions.
inline BigInt e_bdg(int d, int m, const BigInt& r, const BigInt& q) {
  check_r_range(d, m, r);
  const int l = range_l(d, m, r);
  const BigInt j = r - binom(m + d, d) + binom(m + d + 1 - l, d);
  return H(j, d - 1, m - l + 1, q) + pi(m - l, q);
}

// Boguslavsky-Tsfasman value: with omega_r(d,m) = (beta_1,...,beta_{m+1})
// and l = min{i : beta_i != 0},
//   sum_{i=l}^{m} beta_i (pi_{m-i} - pi_{m-i-l}) + pi_{m-2l}.
// Known to be wrong for r > m+1; this is an evaluator, not an endorsement.
inline BigInt e_bt(int d, int m, const BigInt& r, const BigInt& q) {
  check_r_range(d, m, r);
  CompositionTuple w = omega_unrank(d, m, r);
  int l = 0;
  for (int i = 1; i <= m + 1; ++i)
    if (w.entries[i - 1] != 0) {
      l = i;
      break;
    }
  BigInt v = 0;
  for (int i = l; i <= m; ++i) v += w.entries[i - 1] * (pi(m - i, q) - pi(m - i - l, q));
  return v + pi(m - 2 * l, q);
}

// Heijnen-Pellikaan affine value: e_r^A(d,m) = H_r(d,m) for q >= d+1.
inline BigInt e_affine(int d, int m, const BigInt& r, const BigInt& q) {
  check_r_range(d, m, r);
  return H(r, d, m, q);
}

// Smallest integer q0 such that every q >= q0 satisfies
//   q >= 2(m-l+1)c^2 + 1,  q >= 8 d^{l+1} / c,  q >= 164 c^{14/3}.
inline BigInt q_threshold_from_lc(int l, int c, int d, int m) {
  if (l < 1 || l > m || c < 1 || c > d) throw std::invalid_argument("q_threshold_from_lc: bad (l, c)");
  BigInt t1 = 2 * BigInt(m - l + 1) * c * c + 1;
  BigInt t2 = ceil_div(8 * pow_big(d, static_cast<unsigned long>(l) + 1), c);
  // least t with t^3 >= 164^3 c^14
  BigInt t3 = iroot_ceil(pow_big(164, 3) * pow_big(c, 14), 3);
  BigInt t = t1;
  if (t2 > t) t = t2;
  if (t3 > t) t = t3;
  return t;
}

inline BigInt q_threshold_main(int d, int m, const BigInt& r) {
  RangeParams rp = range_lc(d, m, r);
  if (!rp.c) throw std::invalid_argument("q_threshold_main: r outside the refined (l,c) regime");
  return q_threshold_from_lc(rp.l, *rp.c, d, m);
}

// Exact rational threshold max{ d+e+(e^2-1)/(d-(e+1)), d-1+e^2-e } for the
// l = 1 theorem; compare q >= threshold by cross-multiplication.
inline BigRat q_threshold_l1(int d, int e) {
  if (d < 2 || e < 0 || e > d - 2) throw std::invalid_argument("q_threshold_l1: need d >= 2 and 0 <= e <= d-2");
  BigRat t1 = BigRat(d + e) + BigRat(BigInt(e) * e - 1, BigInt(d) - (e + 1));
  BigRat t2 = BigInt(d) - 1 + BigInt(e) * e - e;
  return t1 > t2 ? t1 : t2;
}

// Predicted bounds from the range arithmetic: dim V(F_1..F_r) <= m-l
// (with -1 meaning empty at l = m+1) and deg_{m-l} V(F_1..F_r) <= c.
inline int predicted_dim_bound(int d, int m, const BigInt& r) { return m - range_l(d, m, r); }

inline int predicted_deg_bound(int d, int m, const BigInt& r) {
  RangeParams rp = range_lc(d, m, r);
  if (!rp.c) throw std::invalid_argument("predicted_deg_bound: r outside the refined (l,c) regime");
  return *rp.c;
}

// Bound on points of all components of dimension <= k: d^{m-k} pi_k.
inline BigInt low_dim_point_bound(int d, int m, int k, const BigInt& q) {
  if (k < 0 || k > m) throw std::invalid_argument("low_dim_point_bound: need 0 <= k <= m");
  return pow_big(d, static_cast<unsigned long>(m - k)) * pi(k, q);
}

// Two-sided Cafure-Matera style interval |#X - q^k| < 3.2 delta^{13/3} q^{k-1/2},
// widened outward to integers. The hypothesis flag records q > 2(k+1) delta^2.
struct IntervalBound {
  BigInt lower, upper;  // inclusive after outward rounding
  bool hypothesis_ok = false;
};

inline IntervalBound cafure_matera_interval(int k, int delta, const BigInt& q) {
  if (k < 1 || delta < 1) throw std::invalid_argument("cafure_matera_interval: need k >= 1, delta >= 1");
  // B = (16/5) delta^{13/3} q^{k-1/2}; least integer t >= B satisfies
  // (5t)^6 >= 16^6 delta^26 q^{6k-3}.
  const BigInt rhs = pow_big(16, 6) * pow_big(delta, 26) * pow_big(q, 6 * static_cast<unsigned long>(k) - 3);
  BigInt t = ceil_div(iroot_ceil(rhs, 6), 5);
  while (pow_big(5 * t, 6) < rhs) ++t;  // outward correction for the nested rounding
  IntervalBound out;
  const BigInt qk = pow_big(q, static_cast<unsigned long>(k));
  out.lower = qk - t;
  if (out.lower < 0) out.lower = 0;
  out.upper = qk + t;
  out.hypothesis_ok = q > 2 * BigInt(k + 1) * delta * delta;
  return out;
}

// Strict bound for sets irreducible over F_q but not over its closure:
// #X < delta^2/2 q^{k-1}. Returned as the exclusive integer ceiling.
struct ExclusiveBound {
  BigInt bound_exclusive;
  bool hypothesis_ok = false;
};

inline ExclusiveBound nonirreducible_bound(int k, int delta, const BigInt& q) {
  if (k < 1 || delta < 1) throw std::invalid_argument("nonirreducible_bound: need k >= 1, delta >= 1");
  ExclusiveBound out;
  out.bound_exclusive = ceil_div(BigInt(delta) * delta * pow_big(q, static_cast<unsigned long>(k) - 1), 2);
  out.hypothesis_ok = delta >= 2;
  return out;
}

// Homma-Kim bound for degree-d hypersurfaces with no linear factor:
// (d-1) q^{m-1} + d q^{m-2} + pi_{m-3}.
inline BigInt homma_kim_bound(int d, int m, const BigInt& q) {
  auto qp = [&](int a) { return a < 0 ? BigInt(0) : pow_big(q, static_cast<unsigned long>(a)); };
  return (d - 1) * qp(m - 1) + d * qp(m - 2) + pi(m - 3, q);
}

// If every hyperplane meets X in at most a points then |X| <= aq + 1.
inline BigInt hyperplane_product_bound(const BigInt& a, const BigInt& q) { return a * q + 1; }

}  // namespace prmw
