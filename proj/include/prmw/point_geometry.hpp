#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "prmw/finite_field.hpp"

namespace prmw {

enum class SpaceKind { projective, affine };

// Packed bitset over the canonical point (column) order. Common-zero counting
// is word-AND plus popcount over this representation.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n, bool ones = false) : n_(n), w_((n + 63) / 64, ones ? ~0ull : 0ull) {
    if (ones && n_ % 64 != 0 && !w_.empty()) w_.back() &= (1ull << (n_ % 64)) - 1;
  }

  std::size_t size() const { return n_; }
  void set(std::size_t i) { w_[i >> 6] |= 1ull << (i & 63); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (std::uint64_t x : w_) c += std::popcount(x);
    return c;
  }

  // *this &= other; returns the resulting popcount in the same pass.
  std::uint64_t and_assign_count(const Bitset& other) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      w_[i] &= other.w_[i];
      c += std::popcount(w_[i]);
    }
    return c;
  }

  bool operator==(const Bitset&) const = default;
  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

namespace detail {
// All compositions of d into `parts` nonnegative parts, descending
// lexicographic order.
inline std::vector<std::vector<int>> compositions_desc(int d, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == parts - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int g = left; g >= 0; --g) {
      cur[pos] = g;
      self(self, pos + 1, left - g);
    }
  };
  if (parts == 0) return out;
  rec(rec, 0, d);
  return out;
}
}  // namespace detail

// Ordered monomial basis of S_d(m) (homogeneous: m+1 variables, degree
// exactly d) or T_{<=d}(m) (affine: m variables, degree at most d). Both
// kinds have C(m+d,d) elements and share one ordering contract: descending
// lexicographic order of the homogenized exponent vector, where an affine
// monomial x^alpha homogenizes to (d-|alpha|, alpha). For the affine kind
// this means total degree ascends and, within a degree, exponents descend
// lexicographically.
struct MonomialBasis {
  SpaceKind kind = SpaceKind::projective;
  int m = 0;
  int d = 0;
  std::vector<std::vector<int>> exponents;

  std::size_t size() const { return exponents.size(); }

  int index_of(const std::vector<int>& e) const {
    auto it = index_.find(e);
    return it == index_.end() ? -1 : it->second;
  }

  void build_index() {
    index_.clear();
    for (std::size_t i = 0; i < exponents.size(); ++i) index_[exponents[i]] = static_cast<int>(i);
  }

 private:
  std::map<std::vector<int>, int> index_;
};

inline MonomialBasis monomial_basis(int m, int d, SpaceKind kind) {
  if (m < 0 || d < 0) throw std::invalid_argument("monomial_basis: need m, d >= 0");
  MonomialBasis b;
  b.kind = kind;
  b.m = m;
  b.d = d;
  auto homog = detail::compositions_desc(d, m + 1);
  if (kind == SpaceKind::projective) {
    b.exponents = std::move(homog);
  } else {
    b.exponents.reserve(homog.size());
    for (const auto& g : homog) b.exponents.emplace_back(g.begin() + 1, g.end());
  }
  b.build_index();
  return b;
}

// Canonical enumeration of P^m(F_q) or A^m(F_q). Projective points are the
// representatives whose first nonzero coordinate is 1; both kinds are listed
// in ascending lexicographic order of the coordinate vector. This order is a
// bit-exact contract: every zero bitset downstream is indexed by it.
struct PointSet {
  SpaceKind kind = SpaceKind::projective;
  int m = 0;
  std::uint32_t q = 0;
  std::vector<std::vector<fe>> points;

  std::size_t size() const { return points.size(); }

  std::size_t index_of(const std::vector<fe>& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw std::invalid_argument("PointSet::index_of: not a canonical point");
    return it->second;
  }

  void build_index() {
    index_.clear();
    for (std::size_t i = 0; i < points.size(); ++i) index_[points[i]] = i;
  }

 private:
  std::map<std::vector<fe>, std::size_t> index_;
};

inline constexpr std::size_t kMaxPoints = std::size_t{1} << 24;

inline PointSet enumerate_points(SpaceKind kind, int m, const FieldSpec& F) {
  if (m < 0) throw std::invalid_argument("enumerate_points: need m >= 0");
  PointSet ps;
  ps.kind = kind;
  ps.m = m;
  ps.q = F.q();
  const std::uint64_t q = F.q();

  auto odometer = [&](int len, auto&& emit) {
    // ascending lexicographic: leftmost coordinate most significant
    std::vector<fe> v(len, 0);
    std::uint64_t total = 1;
    for (int i = 0; i < len; ++i) {
      if (total > kMaxPoints) throw std::runtime_error("enumerate_points: size limit exceeded");
      total *= q;
    }
    if (total > kMaxPoints) throw std::runtime_error("enumerate_points: size limit exceeded");
    for (std::uint64_t c = 0; c < total; ++c) {
      std::uint64_t x = c;
      for (int i = len - 1; i >= 0; --i) {
        v[i] = static_cast<fe>(x % q);
        x /= q;
      }
      emit(v);
    }
  };

  if (kind == SpaceKind::affine) {
    odometer(m, [&](const std::vector<fe>& tail) { ps.points.push_back(tail); });
  } else {
    // leading zeros, then 1, then a free tail; more leading zeros sorts first
    for (int z = m; z >= 0; --z) {
      std::vector<fe> head(z, 0);
      head.push_back(1);
      odometer(m - z, [&](const std::vector<fe>& tail) {
        std::vector<fe> pt = head;
        pt.insert(pt.end(), tail.begin(), tail.end());
        ps.points.push_back(std::move(pt));
      });
      if (ps.points.size() > kMaxPoints) throw std::runtime_error("enumerate_points: size limit exceeded");
    }
  }
  ps.build_index();
  return ps;
}

// Scale a nonzero vector so its first nonzero coordinate is 1.
inline std::vector<fe> canonicalize_projective(std::vector<fe> v, const FieldSpec& F) {
  for (fe x : v)
    if (x != 0) {
      fe s = F.inv(x);
      for (fe& y : v) y = F.mul(s, y);
      return v;
    }
  throw std::invalid_argument("canonicalize_projective: zero vector");
}

// Dense monomial-by-point value matrix. values[i][j] is the i-th basis
// monomial evaluated at the j-th point, with 0^0 = 1. Column order is exactly
// the PointSet order.
struct EvaluationTable {
  MonomialBasis basis;
  PointSet points;
  std::vector<std::vector<fe>> values;      // rows = monomials
  std::vector<Bitset> row_zero_masks;       // per-monomial zero columns

  std::size_t num_rows() const { return values.size(); }
  std::size_t num_cols() const { return points.size(); }

  // Zero bitset of the polynomial with the given coefficient vector.
  Bitset zero_bitset(const std::vector<fe>& coeffs, const FieldSpec& F) const {
    if (coeffs.size() != values.size()) throw std::invalid_argument("zero_bitset: coefficient length mismatch");
    const std::size_t P = num_cols();
    std::vector<fe> acc(P, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const fe c = coeffs[i];
      if (c == 0) continue;
      const std::vector<fe>& row = values[i];
      for (std::size_t j = 0; j < P; ++j) acc[j] = F.add(acc[j], F.mul(c, row[j]));
    }
    Bitset bs(P);
    for (std::size_t j = 0; j < P; ++j)
      if (acc[j] == 0) bs.set(j);
    return bs;
  }
};

inline EvaluationTable evaluation_table(const MonomialBasis& basis, const PointSet& points, const FieldSpec& F) {
  if (basis.kind != points.kind || basis.m != points.m || F.q() != points.q)
    throw std::invalid_argument("evaluation_table: incompatible basis/points/field");
  EvaluationTable t;
  t.basis = basis;
  t.points = points;
  const std::size_t P = points.size();
  t.values.reserve(basis.size());
  t.row_zero_masks.reserve(basis.size());
  for (const auto& gamma : basis.exponents) {
    std::vector<fe> row(P);
    Bitset mask(P);
    for (std::size_t j = 0; j < P; ++j) {
      fe v = 1;
      const auto& pt = points.points[j];
      for (std::size_t i = 0; i < gamma.size(); ++i)
        v = F.mul(v, F.pow(pt[i], static_cast<std::uint64_t>(gamma[i])));
      row[j] = v;
      if (v == 0) mask.set(j);
    }
    t.values.push_back(std::move(row));
    t.row_zero_masks.push_back(std::move(mask));
  }
  return t;
}

// --- linear algebra over F_q ---

struct FqMat {
  std::size_t rows = 0, cols = 0;
  std::vector<fe> a;

  FqMat() = default;
  FqMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  fe& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  fe at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool operator==(const FqMat&) const = default;
};

namespace detail {
// Gauss-Jordan to reduced row echelon form; returns pivot columns.
inline std::vector<int> rref_in_place(FqMat& M, const FieldSpec& F) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < M.cols && row < M.rows; ++col) {
    std::size_t sel = row;
    while (sel < M.rows && M.at(sel, col) == 0) ++sel;
    if (sel == M.rows) continue;
    if (sel != row)
      for (std::size_t j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(row, j));
    const fe inv = F.inv(M.at(row, col));
    for (std::size_t j = col; j < M.cols; ++j) M.at(row, j) = F.mul(inv, M.at(row, j));
    for (std::size_t r2 = 0; r2 < M.rows; ++r2) {
      if (r2 == row) continue;
      const fe f = M.at(r2, col);
      if (f == 0) continue;
      for (std::size_t j = col; j < M.cols; ++j) M.at(r2, j) = F.sub(M.at(r2, j), F.mul(f, M.at(row, j)));
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}
}  // namespace detail

// Canonical reduced-row-echelon basis of a subspace of F_q^N. Two equal
// subspaces always produce identical rows.
struct SubspaceBasis {
  int r = 0;  // dimension
  int N = 0;  // ambient dimension
  FqMat rows; // r x N, RREF
  std::vector<int> pivot_columns;

  bool operator==(const SubspaceBasis&) const = default;

  std::vector<fe> row(std::size_t i) const {
    std::vector<fe> v(N);
    for (int j = 0; j < N; ++j) v[j] = rows.at(i, j);
    return v;
  }
};

inline SubspaceBasis rref(const FqMat& M, const FieldSpec& F) {
  FqMat W = M;
  std::vector<int> pivots = detail::rref_in_place(W, F);
  SubspaceBasis out;
  out.r = static_cast<int>(pivots.size());
  out.N = static_cast<int>(M.cols);
  out.pivot_columns = std::move(pivots);
  out.rows = FqMat(out.r, out.N);
  for (int i = 0; i < out.r; ++i)
    for (int j = 0; j < out.N; ++j) out.rows.at(i, j) = W.at(i, j);
  return out;
}

inline SubspaceBasis subspace_from_rows(const std::vector<std::vector<fe>>& rows, std::size_t N, const FieldSpec& F) {
  FqMat M(rows.size(), N);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != N) throw std::invalid_argument("subspace_from_rows: row length mismatch");
    for (std::size_t j = 0; j < N; ++j) M.at(i, j) = rows[i][j];
  }
  return rref(M, F);
}

inline int rank(const FqMat& M, const FieldSpec& F) {
  FqMat W = M;
  return static_cast<int>(detail::rref_in_place(W, F).size());
}

// Basis of A ∩ B via the Zassenhaus block trick.
inline SubspaceBasis intersect(const SubspaceBasis& A, const SubspaceBasis& B, const FieldSpec& F) {
  if (A.N != B.N) throw std::invalid_argument("intersect: ambient dimension mismatch");
  const int N = A.N;
  FqMat Z(static_cast<std::size_t>(A.r + B.r), static_cast<std::size_t>(2 * N));
  for (int i = 0; i < A.r; ++i)
    for (int j = 0; j < N; ++j) {
      Z.at(i, j) = A.rows.at(i, j);
      Z.at(i, N + j) = A.rows.at(i, j);
    }
  for (int i = 0; i < B.r; ++i)
    for (int j = 0; j < N; ++j) Z.at(A.r + i, j) = B.rows.at(i, j);
  FqMat W = Z;
  detail::rref_in_place(W, F);
  std::vector<std::vector<fe>> inter;
  for (std::size_t i = 0; i < W.rows; ++i) {
    bool left_zero = true;
    for (int j = 0; j < N && left_zero; ++j) left_zero = (W.at(i, j) == 0);
    if (!left_zero) continue;
    std::vector<fe> v(N);
    bool nonzero = false;
    for (int j = 0; j < N; ++j) {
      v[j] = W.at(i, N + j);
      nonzero = nonzero || v[j] != 0;
    }
    if (nonzero) inter.push_back(std::move(v));
  }
  return subspace_from_rows(inter, N, F);
}

inline FqMat invert(const FqMat& M, const FieldSpec& F) {
  if (M.rows != M.cols) throw std::invalid_argument("invert: matrix not square");
  const std::size_t n = M.rows;
  FqMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = M.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = detail::rref_in_place(aug, F);
  if (pivots.size() != n) throw std::invalid_argument("invert: singular matrix");
  FqMat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

// Number of points where every polynomial of the subspace vanishes.
// Basis-independent: any basis of the same subspace gives the same count.
inline Bitset zero_bitset_of_subspace(const SubspaceBasis& W, const EvaluationTable& table, const FieldSpec& F) {
  if (static_cast<std::size_t>(W.N) != table.num_rows())
    throw std::invalid_argument("zero_bitset_of_subspace: ambient dimension mismatch");
  Bitset acc(table.num_cols(), true);
  for (int i = 0; i < W.r; ++i) acc.and_assign_count(table.zero_bitset(W.row(i), F));
  return acc;
}

inline std::uint64_t zero_count(const SubspaceBasis& W, const EvaluationTable& table, const FieldSpec& F) {
  return zero_bitset_of_subspace(W, table, F).count();
}

namespace detail {
// c = a * b for homogeneous coefficient vectors of degrees da and db.
inline std::vector<fe> hom_mul(const std::vector<fe>& a, const MonomialBasis& ba, const std::vector<fe>& b,
                               const MonomialBasis& bb, const MonomialBasis& bc, const FieldSpec& F) {
  std::vector<fe> out(bc.size(), 0);
  std::vector<int> sum(static_cast<std::size_t>(bc.m) + 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      const auto& ea = ba.exponents[i];
      const auto& eb = bb.exponents[j];
      for (std::size_t t = 0; t < sum.size(); ++t) sum[t] = ea[t] + eb[t];
      int idx = bc.index_of(sum);
      assert(idx >= 0);
      out[static_cast<std::size_t>(idx)] = F.add(out[static_cast<std::size_t>(idx)], F.mul(a[i], b[j]));
    }
  }
  return out;
}
}  // namespace detail

// Image of W under the variable substitution x_i -> sum_j change(i,j) x_j.
// The change must be invertible; the induced map on S_d(m) is then a linear
// isomorphism, so dimension and common-zero counts are preserved (the
// substitution permutes P^m(F_q)).
inline SubspaceBasis projective_transform(const SubspaceBasis& W, const FqMat& change, int d, int m,
                                          const FieldSpec& F) {
  if (change.rows != static_cast<std::size_t>(m + 1) || change.cols != static_cast<std::size_t>(m + 1))
    throw std::invalid_argument("projective_transform: change matrix must be (m+1)x(m+1)");
  if (rank(change, F) != m + 1) throw std::invalid_argument("projective_transform: singular change matrix");

  std::vector<MonomialBasis> by_deg;
  by_deg.reserve(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) by_deg.push_back(monomial_basis(m, k, SpaceKind::projective));
  const MonomialBasis& top = by_deg[static_cast<std::size_t>(d)];
  if (static_cast<std::size_t>(W.N) != top.size())
    throw std::invalid_argument("projective_transform: W does not live in S_d(m)");

  std::vector<std::vector<fe>> out_rows;
  out_rows.reserve(static_cast<std::size_t>(W.r));
  for (int i = 0; i < W.r; ++i) {
    std::vector<fe> result(top.size(), 0);
    for (std::size_t t = 0; t < top.size(); ++t) {
      const fe c = W.rows.at(i, t);
      if (c == 0) continue;
      const auto& gamma = top.exponents[t];
      std::vector<fe> cur{1};
      int deg = 0;
      for (int v = 0; v <= m; ++v) {
        std::vector<fe> lin(static_cast<std::size_t>(m) + 1);
        for (int j = 0; j <= m; ++j) lin[static_cast<std::size_t>(j)] = change.at(v, j);
        for (int rep = 0; rep < gamma[static_cast<std::size_t>(v)]; ++rep) {
          cur = detail::hom_mul(cur, by_deg[static_cast<std::size_t>(deg)], lin, by_deg[1],
                                by_deg[static_cast<std::size_t>(deg + 1)], F);
          ++deg;
        }
      }
      for (std::size_t s = 0; s < result.size(); ++s) result[s] = F.add(result[s], F.mul(c, cur[s]));
    }
    out_rows.push_back(std::move(result));
  }
  SubspaceBasis out = subspace_from_rows(out_rows, top.size(), F);
  assert(out.r == W.r);  // an invertible substitution acts as a linear isomorphism on S_d(m)
  return out;
}

// Coordinate change sending the span of the given independent vectors (a
// linear k-dimensional subvariety of P^m, given as k+1 rows of homogeneous
// coordinates) onto the standard subspace V(x_0,...,x_{m-k-1}).
inline FqMat move_linear_subspace_to_standard(const FqMat& L, const FieldSpec& F) {
  const int m = static_cast<int>(L.cols) - 1;
  SubspaceBasis lb = rref(L, F);
  if (lb.r != static_cast<int>(L.rows))
    throw std::invalid_argument("move_linear_subspace_to_standard: input vectors not independent");
  const int k1 = lb.r;  // k+1
  std::vector<int> completion;
  {
    std::size_t pi = 0;
    for (int j = 0; j <= m; ++j) {
      if (pi < lb.pivot_columns.size() && lb.pivot_columns[pi] == j)
        ++pi;
      else
        completion.push_back(j);
    }
  }
  FqMat C(static_cast<std::size_t>(m + 1), static_cast<std::size_t>(m + 1));
  for (std::size_t t = 0; t < completion.size(); ++t) C.at(static_cast<std::size_t>(completion[t]), t) = 1;
  for (int j = 0; j < k1; ++j)
    for (int i = 0; i <= m; ++i)
      C.at(static_cast<std::size_t>(i), static_cast<std::size_t>(m + 1 - k1 + j)) = lb.rows.at(j, i);
  return invert(C, F);
}

}  // namespace prmw
