#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "prmw/point_geometry.hpp"
#include "prmw/weight_combinatorics.hpp"

namespace prmw {

// Ground truth by exhaustive (or seeded-sampling) search over subspaces:
// e_r(d,m), e_r^A(d,m), generalized Hamming weights, t_W, linear-subspace
// containment, splitting profiles, and hyperplane-section maxima.
//
// The search core enumerates canonical RREF bases, pivot-column sets in
// colexicographic order and free entries in odometer order, and counts common
// zeros as word-AND + popcount over zero bitsets. A subspace is abandoned as
// soon as its running intersection drops strictly below the current best;
// candidates that can still tie are finished so that the reported witness is
// the lexicographically least maximizer regardless of worker count.

struct OracleOptions {
  enum class Mode { exhaustive, sample };
  Mode mode = Mode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t samples = 10000;            // draws in sampling mode
  std::uint64_t max_subspaces = 100000000;  // feasibility cap for exhaustive mode
  int workers = 1;
};

struct OracleResult {
  std::uint64_t value = 0;
  SubspaceBasis witness;
  bool exhaustive = false;
  std::uint64_t subspaces_visited = 0;
  double wall_seconds = 0.0;
};

// SplitMix64; the fixed PRNG for sampling mode (documented in the README).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

namespace detail {

// All r-subsets of {0..N-1} in colexicographic order.
template <class Fn>
inline void for_each_pivot_set(int N, int r, Fn&& fn) {
  if (r < 0 || r > N) return;
  if (r == 0) {
    std::vector<int> empty;
    fn(empty);
    return;
  }
  std::vector<int> cur(static_cast<std::size_t>(r));
  auto rec = [&](auto&& self, int i, int hi) -> void {
    if (i < 0) {
      fn(cur);
      return;
    }
    for (int v = i; v < hi; ++v) {
      cur[static_cast<std::size_t>(i)] = v;
      self(self, i - 1, v);
    }
  };
  rec(rec, r - 1, N);
}

// Every RREF matrix with the given pivot columns, free entries running in
// odometer order (row-major positions, last position fastest).
template <class Fn>
inline void for_each_rref_with_pivots(const std::vector<int>& pivots, int N, const FieldSpec& F, Fn&& fn) {
  const int r = static_cast<int>(pivots.size());
  FqMat M(static_cast<std::size_t>(r), static_cast<std::size_t>(N));
  std::vector<bool> is_pivot(static_cast<std::size_t>(N), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  for (int i = 0; i < r; ++i) M.at(static_cast<std::size_t>(i), static_cast<std::size_t>(pivots[i])) = 1;
  std::vector<std::pair<int, int>> free_pos;
  for (int i = 0; i < r; ++i)
    for (int j = pivots[static_cast<std::size_t>(i)] + 1; j < N; ++j)
      if (!is_pivot[static_cast<std::size_t>(j)]) free_pos.emplace_back(i, j);

  const std::uint32_t q = F.q();
  std::vector<fe> digits(free_pos.size(), 0);
  for (;;) {
    fn(M);
    std::size_t t = free_pos.size();
    while (t > 0) {
      --t;
      auto [i, j] = free_pos[t];
      if (++digits[t] == q) {
        digits[t] = 0;
        M.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 0;
      } else {
        M.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = digits[t];
        break;
      }
    }
    if (t == 0 && digits.empty()) break;
    if (t == 0 && digits[0] == 0) break;  // odometer wrapped around
  }
}

inline bool mat_lex_less(const FqMat& a, const FqMat& b) {
  return a.a < b.a;  // same shape by construction
}

// Zero bitset of the linear combination sum_i coeffs[i] * gen_rows[i].
inline Bitset combo_zero_bitset(const std::vector<std::vector<fe>>& gen_rows, const FqMat& M, std::size_t row,
                                std::size_t P, const FieldSpec& F) {
  std::vector<fe> acc(P, 0);
  for (std::size_t i = 0; i < gen_rows.size(); ++i) {
    const fe c = M.at(row, i);
    if (c == 0) continue;
    const std::vector<fe>& g = gen_rows[i];
    for (std::size_t j = 0; j < P; ++j) acc[j] = F.add(acc[j], F.mul(c, g[j]));
  }
  Bitset bs(P);
  for (std::size_t j = 0; j < P; ++j)
    if (acc[j] == 0) bs.set(j);
  return bs;
}

struct SearchLocal {
  std::int64_t best = -1;
  FqMat witness;
  std::uint64_t visited = 0;
};

// Maximum common-zero count over all r-dimensional subspaces spanned by
// combinations of gen_rows (ambient dimension = gen_rows.size()).
inline OracleResult max_zero_search(const std::vector<std::vector<fe>>& gen_rows, std::size_t P, int r,
                                    const FieldSpec& F, const OracleOptions& opt) {
  const int N = static_cast<int>(gen_rows.size());
  if (r < 1 || r > N) throw std::invalid_argument("max_zero_search: need 1 <= r <= ambient dimension");
  const auto t0 = std::chrono::steady_clock::now();
  OracleResult out;

  auto evaluate = [&](const FqMat& M, SearchLocal& L) {
    ++L.visited;
    Bitset acc(P, true);
    std::int64_t cnt = static_cast<std::int64_t>(P);
    for (int i = 0; i < r; ++i) {
      cnt = static_cast<std::int64_t>(acc.and_assign_count(combo_zero_bitset(gen_rows, M, static_cast<std::size_t>(i), P, F)));
      if (cnt < L.best) return;  // cannot reach or tie the best anymore
    }
    if (cnt > L.best) {
      L.best = cnt;
      L.witness = M;
    } else if (cnt == L.best && mat_lex_less(M, L.witness)) {
      L.witness = M;
    }
  };

  if (opt.mode == OracleOptions::Mode::sample) {
    SplitMix64 rng(opt.seed);
    SearchLocal local;
    for (std::uint64_t s = 0; s < opt.samples; ++s) {
      FqMat M(static_cast<std::size_t>(r), static_cast<std::size_t>(N));
      for (fe& x : M.a) x = static_cast<fe>(rng.next() % F.q());
      SubspaceBasis sb = rref(M, F);
      if (sb.r < r) continue;  // rank-deficient draw
      evaluate(sb.rows, local);
    }
    if (local.best < 0) throw std::runtime_error("max_zero_search: no full-rank sample drawn");
    out.value = static_cast<std::uint64_t>(local.best);
    out.witness = rref(local.witness, F);
    out.exhaustive = false;
    out.subspaces_visited = local.visited;
  } else {
    const BigInt total = gaussian_binom(N, r, F.q());
    if (total > opt.max_subspaces)
      throw std::runtime_error("max_zero_search: subspace count exceeds the cap; use sampling mode");

    std::vector<std::vector<int>> pivot_sets;
    for_each_pivot_set(N, r, [&](const std::vector<int>& p) { pivot_sets.push_back(p); });

    int workers = opt.workers > 0 ? opt.workers : 1;
    if (static_cast<std::size_t>(workers) > pivot_sets.size()) workers = static_cast<int>(pivot_sets.size());
    std::vector<SearchLocal> locals(static_cast<std::size_t>(workers));

    auto run = [&](int w) {
      SearchLocal& L = locals[static_cast<std::size_t>(w)];
      for (std::size_t s = static_cast<std::size_t>(w); s < pivot_sets.size(); s += static_cast<std::size_t>(workers))
        for_each_rref_with_pivots(pivot_sets[s], N, F, [&](const FqMat& M) { evaluate(M, L); });
    };

    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
      for (auto& t : pool) t.join();
    }

    // Deterministic merge: maximum value, lexicographically least witness.
    SearchLocal merged;
    for (const SearchLocal& L : locals) {
      merged.visited += L.visited;
      if (L.best > merged.best) {
        merged.best = L.best;
        merged.witness = L.witness;
      } else if (L.best == merged.best && L.best >= 0 && mat_lex_less(L.witness, merged.witness)) {
        merged.witness = L.witness;
      }
    }
    out.value = static_cast<std::uint64_t>(merged.best);
    out.witness = rref(merged.witness, F);
    out.exhaustive = true;
    out.subspaces_visited = merged.visited;
  }

  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace detail

// Visits every r-dimensional subspace of F_q^N exactly once as a canonical
// RREF basis; deterministic order. Returns the visit count.
template <class Visitor>
inline std::uint64_t enumerate_subspaces(int N, int r, const FieldSpec& F, Visitor&& visit,
                                         std::uint64_t max_subspaces = 100000000) {
  if (r < 0 || r > N) throw std::invalid_argument("enumerate_subspaces: need 0 <= r <= N");
  if (gaussian_binom(N, r, F.q()) > max_subspaces)
    throw std::runtime_error("enumerate_subspaces: subspace count exceeds the cap; use sampling mode");
  std::uint64_t count = 0;
  detail::for_each_pivot_set(N, r, [&](const std::vector<int>& pivots) {
    detail::for_each_rref_with_pivots(pivots, N, F, [&](const FqMat& M) {
      ++count;
      SubspaceBasis sb;
      sb.r = static_cast<int>(pivots.size());
      sb.N = N;
      sb.rows = M;
      sb.pivot_columns = pivots;
      visit(sb);
    });
  });
  return count;
}

// e_r(d,m) (projective) or e_r^A(d,m) (affine): the maximum number of common
// zeros over all r-dimensional subspaces of the degree-d coefficient space.
// Exhaustive mode returns the exact value with a witness; sampling mode
// returns a certified lower bound.
inline OracleResult max_common_zeros(int d, int m, int r, const FieldSpec& F, SpaceKind kind,
                                     const OracleOptions& opt = {}) {
  if (d < 1 || m < 1) throw std::invalid_argument("max_common_zeros: need d, m >= 1");
  const BigInt dim = binom(m + d, d);
  if (r < 1 || BigInt(r) > dim) throw std::invalid_argument("max_common_zeros: r out of range");
  MonomialBasis basis = monomial_basis(m, d, kind);
  PointSet pts = enumerate_points(kind, m, F);
  EvaluationTable table = evaluation_table(basis, pts, F);
  return detail::max_zero_search(table.values, pts.size(), r, F, opt);
}

// r-th generalized Hamming weight of PRM_q(d,m), computed directly as the
// minimum support weight over r-dimensional subcodes of the evaluation image
// (support weight = number of columns where some subcode word is nonzero).
inline std::uint64_t ghw(int d, int m, int r, const FieldSpec& F, const OracleOptions& opt = {}) {
  if (d < 1 || m < 1) throw std::invalid_argument("ghw: need d, m >= 1");
  MonomialBasis basis = monomial_basis(m, d, SpaceKind::projective);
  PointSet pts = enumerate_points(SpaceKind::projective, m, F);
  EvaluationTable table = evaluation_table(basis, pts, F);

  FqMat G(table.num_rows(), table.num_cols());
  for (std::size_t i = 0; i < table.num_rows(); ++i)
    for (std::size_t j = 0; j < table.num_cols(); ++j) G.at(i, j) = table.values[i][j];
  SubspaceBasis code = rref(G, F);  // basis of the code itself
  if (r < 1 || r > code.r) throw std::invalid_argument("ghw: r exceeds the code dimension");

  std::vector<std::vector<fe>> code_rows;
  code_rows.reserve(static_cast<std::size_t>(code.r));
  for (int i = 0; i < code.r; ++i) code_rows.push_back(code.row(static_cast<std::size_t>(i)));

  OracleResult res = detail::max_zero_search(code_rows, pts.size(), r, F, opt);
  return pts.size() - res.value;
}

// t_W = max over nonzero linear forms L of dim(W ∩ L·S_{d-1}(m)), together
// with the first maximizing L in canonical order.
struct TInvariant {
  int t = 0;
  std::vector<fe> argmax_linear_form;
};

inline TInvariant t_invariant(const SubspaceBasis& W, int d, int m, const FieldSpec& F) {
  MonomialBasis basis_d = monomial_basis(m, d, SpaceKind::projective);
  if (static_cast<std::size_t>(W.N) != basis_d.size())
    throw std::invalid_argument("t_invariant: W does not live in S_d(m)");
  MonomialBasis basis_dm1 = monomial_basis(m, d - 1, SpaceKind::projective);
  PointSet forms = enumerate_points(SpaceKind::projective, m, F);

  TInvariant out;
  out.t = -1;
  std::vector<int> expv(static_cast<std::size_t>(m) + 1);
  for (const auto& L : forms.points) {
    std::vector<std::vector<fe>> rows;
    rows.reserve(basis_dm1.size());
    for (const auto& mu : basis_dm1.exponents) {
      std::vector<fe> row(basis_d.size(), 0);
      for (int i = 0; i <= m; ++i) {
        if (L[static_cast<std::size_t>(i)] == 0) continue;
        expv = mu;
        ++expv[static_cast<std::size_t>(i)];
        int idx = basis_d.index_of(expv);
        row[static_cast<std::size_t>(idx)] = F.add(row[static_cast<std::size_t>(idx)], L[static_cast<std::size_t>(i)]);
      }
      rows.push_back(std::move(row));
    }
    SubspaceBasis multiples = subspace_from_rows(rows, basis_d.size(), F);
    int t = intersect(W, multiples, F).r;
    if (t > out.t) {
      out.t = t;
      out.argmax_linear_form = L;
    }
  }
  return out;
}

// Does the zero set (given as a bitset over the canonical projective points)
// contain a k-dimensional linear subvariety? Returns the first witness, as a
// (k+1)-dimensional subspace of F_q^{m+1}, or nothing.
inline std::optional<SubspaceBasis> contains_linear_subspace_in(const Bitset& zeros, const PointSet& pts, int k,
                                                                const FieldSpec& F,
                                                                std::uint64_t max_subspaces = 100000000) {
  if (pts.kind != SpaceKind::projective) throw std::invalid_argument("contains_linear_subspace: projective only");
  const int m = pts.m;
  if (k < 0 || k > m) throw std::invalid_argument("contains_linear_subspace: need 0 <= k <= m");
  std::optional<SubspaceBasis> witness;
  const std::uint32_t q = F.q();
  std::uint64_t combos = 1;
  for (int i = 0; i <= k; ++i) combos *= q;
  enumerate_subspaces(m + 1, k + 1, F, [&](const SubspaceBasis& L) {
    if (witness) return;
    std::vector<fe> pt(static_cast<std::size_t>(m) + 1);
    for (std::uint64_t c = 1; c < combos; ++c) {
      std::uint64_t x = c;
      std::fill(pt.begin(), pt.end(), 0);
      for (int i = 0; i <= k; ++i) {
        const fe ci = static_cast<fe>(x % q);
        x /= q;
        if (ci == 0) continue;
        for (int j = 0; j <= m; ++j)
          pt[static_cast<std::size_t>(j)] =
              F.add(pt[static_cast<std::size_t>(j)], F.mul(ci, L.rows.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j))));
      }
      if (!zeros.test(pts.index_of(canonicalize_projective(pt, F)))) return;
    }
    witness = L;
  }, max_subspaces);
  return witness;
}

inline std::optional<SubspaceBasis> contains_linear_subspace(const SubspaceBasis& W, int k, int d, int m,
                                                             const FieldSpec& F,
                                                             std::uint64_t max_subspaces = 100000000) {
  MonomialBasis basis = monomial_basis(m, d, SpaceKind::projective);
  PointSet pts = enumerate_points(SpaceKind::projective, m, F);
  EvaluationTable table = evaluation_table(basis, pts, F);
  Bitset zeros = zero_bitset_of_subspace(W, table, F);
  return contains_linear_subspace_in(zeros, pts, k, F, max_subspaces);
}

// Splitting profile of W inside the degree-d part of <x_0,...,x_{l-1}>:
// r_i = dim W_i - dim W_{i-1} where W_i = W ∩ <x_0,...,x_{i-1}>_d.
// Precondition: W lies inside the degree-d part of <x_0,...,x_{l-1}> (use
// move_linear_subspace_to_standard + projective_transform first).
struct SplittingProfile {
  std::vector<int> r_i;
};

inline SplittingProfile splitting_profile(const SubspaceBasis& W, int l, int d, int m, const FieldSpec& F) {
  MonomialBasis basis = monomial_basis(m, d, SpaceKind::projective);
  if (static_cast<std::size_t>(W.N) != basis.size())
    throw std::invalid_argument("splitting_profile: W does not live in S_d(m)");
  if (l < 1 || l > m) throw std::invalid_argument("splitting_profile: need 1 <= l <= m");

  SplittingProfile out;
  int prev = 0;
  for (int i = 1; i <= l; ++i) {
    std::vector<int> members;
    for (std::size_t t = 0; t < basis.size(); ++t) {
      int head = 0;
      for (int j = 0; j < i; ++j) head += basis.exponents[t][static_cast<std::size_t>(j)];
      if (head >= 1) members.push_back(static_cast<int>(t));
    }
    SubspaceBasis ideal;
    ideal.r = static_cast<int>(members.size());
    ideal.N = W.N;
    ideal.rows = FqMat(members.size(), static_cast<std::size_t>(W.N));
    for (std::size_t t = 0; t < members.size(); ++t)
      ideal.rows.at(t, static_cast<std::size_t>(members[t])) = 1;
    ideal.pivot_columns = members;

    int dim_i = intersect(W, ideal, F).r;
    out.r_i.push_back(dim_i - prev);
    prev = dim_i;
  }
  if (prev != W.r)
    throw std::invalid_argument("splitting_profile: W is not contained in the degree-d part of <x_0,...,x_{l-1}>");
  return out;
}

// a = max over hyperplanes H of |X ∩ H|, X given as a bitset over the
// canonical projective points. The canonical hyperplane coefficient vectors
// are exactly the canonical point representatives.
inline std::uint64_t hyperplane_section_max(const Bitset& X, const PointSet& pts, const FieldSpec& F) {
  if (pts.kind != SpaceKind::projective) throw std::invalid_argument("hyperplane_section_max: projective only");
  std::uint64_t best = 0;
  for (const auto& h : pts.points) {
    std::uint64_t cnt = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (!X.test(j)) continue;
      fe dot = 0;
      const auto& p = pts.points[j];
      for (std::size_t i = 0; i < h.size(); ++i) dot = F.add(dot, F.mul(h[i], p[i]));
      if (dot == 0) ++cnt;
    }
    if (cnt > best) best = cnt;
  }
  return best;
}

}  // namespace prmw
