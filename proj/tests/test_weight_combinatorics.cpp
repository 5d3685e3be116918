#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "prmw/weight_combinatorics.hpp"

using namespace prmw;

TEST_CASE("binom boundary conventions") {
  CHECK(binom(4, 2) == 6);
  CHECK(binom(7, -1) == 0);
  CHECK(binom(3, 5) == 0);
  CHECK(binom(-2, 0) == 0);
  CHECK(binom(0, 0) == 1);
  CHECK(binom(60, 30) == BigInt("118264581564861424"));
}

TEST_CASE("pi boundary conventions") {
  CHECK(pi(2, 3) == 13);
  CHECK(pi(0, 9) == 1);
  CHECK(pi(-1, 5) == 0);
  CHECK(pi(-7, 5) == 0);
  CHECK(pi(3, 2) == 15);
}

TEST_CASE("gaussian binomials") {
  CHECK(gaussian_binom(6, 1, 3) == 364);  // (3^6-1)/2
  CHECK(gaussian_binom(6, 3, 3) == 33880);
  CHECK(gaussian_binom(5, 0, 7) == 1);
  CHECK(gaussian_binom(4, 5, 3) == 0);
  // q-Pascal identity: G(n,k) = G(n-1,k-1) + q^k G(n-1,k)
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= n; ++k)
      for (int q : {2, 3, 4})
        CHECK(gaussian_binom(n, k, q) ==
              gaussian_binom(n - 1, k - 1, q) + pow_big(q, static_cast<unsigned long>(k)) * gaussian_binom(n - 1, k, q));
}

TEST_CASE("unranking examples") {
  CHECK(omega_unrank(5, 3, 1).entries == std::vector<int>{5, 0, 0, 0});
  CHECK(omega_unrank(5, 3, binom(8, 5)).entries == std::vector<int>{0, 0, 0, 5});
  CHECK(omega_unrank(2, 2, 2).entries == std::vector<int>{1, 1, 0});
  CHECK_THROWS_AS(omega_unrank(2, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(omega_unrank(2, 2, 7), std::invalid_argument);
}

TEST_CASE("rank examples") {
  CHECK(omega_rank(CompositionTuple{{1, 1, 0}}) == 2);
  CHECK(omega_rank(CompositionTuple{{4, 0, 0}}) == 1);
  CHECK(omega_rank(CompositionTuple{{0, 0, 4}}) == binom(6, 4));
}

TEST_CASE("bijection and order preservation against full enumeration, d,m <= 6") {
  for (int d = 1; d <= 6; ++d)
    for (int m = 1; m <= 6; ++m) {
      auto all = omega_enumerate(d, m);
      REQUIRE(BigInt(all.size()) == binom(m + d, d));
      // enumeration really is strictly descending lexicographic
      for (std::size_t i = 0; i + 1 < all.size(); ++i) REQUIRE(all[i].entries > all[i + 1].entries);
      for (std::size_t i = 0; i < all.size(); ++i) {
        const BigInt r = i + 1;
        REQUIRE(omega_unrank(d, m, r).entries == all[i].entries);
        REQUIRE(omega_rank(all[i]) == r);
      }
    }
}

TEST_CASE("unranking stays exact far beyond enumerable sizes") {
  const int d = 40, m = 20;
  const BigInt top = binom(m + d, d);
  CHECK(omega_unrank(d, m, 1).entries[0] == d);
  CHECK(omega_unrank(d, m, top).entries[m] == d);
  const std::vector<BigInt> probes = {BigInt(12345), BigInt(top / 2), BigInt(top - 7)};
  for (const BigInt& r : probes) {
    CHECK(omega_rank(omega_unrank(d, m, r)) == r);
  }
}

TEST_CASE("H boundary conventions and examples") {
  CHECK(H(0, 2, 2, 3) == 9);      // q^m
  CHECK(H(0, 5, 3, 7) == 343);
  CHECK(H(2, 2, 2, 3) == 4);      // omega_2 = (1,1,0)
  CHECK(H(7, 2, 2, 3) == 0);      // past the top of the range
  CHECK(H(100, 2, 2, 3) == 0);
  CHECK(H(1, 3, 0, 5) == 0);      // m = 0: empty sum
  CHECK_THROWS_AS(H(-1, 2, 2, 3), std::invalid_argument);
}

TEST_CASE("H special value identity for all 0 <= e <= d <= 6, m <= 6") {
  for (int d = 1; d <= 6; ++d)
    for (int m = 1; m <= 6; ++m)
      for (int e = 0; e <= d; ++e)
        for (int q : {2, 3, 7, 101})
          CHECK(H(binom(m + e, e), d, m, q) == BigInt(d - e) * pow_big(q, static_cast<unsigned long>(m) - 1));
}

TEST_CASE("H monotone non-increasing in r when q >= d") {
  for (int d = 1; d <= 5; ++d)
    for (int m = 1; m <= 4; ++m)
      for (int q : {d, d + 1, 11}) {
        const BigInt top = binom(m + d, d);
        BigInt prev = H(1, d, m, q);
        for (BigInt r = 2; r <= top; ++r) {
          BigInt cur = H(r, d, m, q);
          REQUIRE(cur <= prev);
          prev = cur;
        }
      }
}

TEST_CASE("h_decompose examples") {
  CHECK(h_decompose(2, 2, 2).exponents == std::vector<int>{0, 1});
  CHECK(h_decompose(1, 4, 3).exponents == std::vector<int>{2, 2, 2, 2});          // omega_1 = (d,0,...,0)
  CHECK(h_decompose(binom(5, 3), 3, 2).exponents == std::vector<int>{-1, -1, -1});  // lex minimum
  CHECK_THROWS_AS(h_decompose(0, 2, 2), std::invalid_argument);
}

TEST_CASE("decomposition value and rank identities, d,m <= 6") {
  for (int d = 1; d <= 6; ++d)
    for (int m = 1; m <= 6; ++m) {
      const BigInt top = binom(m + d, d);
      for (BigInt r = 1; r <= top; ++r) {
        HDecomposition dec = h_decompose(r, d, m);
        REQUIRE(static_cast<int>(dec.exponents.size()) == d);
        REQUIRE(std::is_sorted(dec.exponents.begin(), dec.exponents.end()));
        REQUIRE(dec.exponents.front() >= -1);
        REQUIRE(dec.exponents.back() <= m - 1);
        // value identity needs q > d
        for (int q : {d + 1, d + 2, 11}) REQUIRE(dec.value(q) == H(r, d, m, q));
        BigInt rank = top;
        for (int j = 1; j <= d; ++j) rank -= binom(dec.exponents[static_cast<std::size_t>(j - 1)] + j, j);
        REQUIRE(rank == r);
      }
    }
}

TEST_CASE("iroot_ceil is the least k-th root upper bound") {
  CHECK(iroot_ceil(0, 3) == 0);
  CHECK(iroot_ceil(1, 5) == 1);
  CHECK(iroot_ceil(8, 3) == 2);
  CHECK(iroot_ceil(9, 3) == 3);
  for (BigInt x : {BigInt(2), BigInt(1000), pow_big(10, 30) + 17, pow_big(7, 40)}) {
    for (unsigned k : {2u, 3u, 6u}) {
      BigInt t = iroot_ceil(x, k);
      CHECK(pow_big(t, k) >= x);
      CHECK(pow_big(t - 1, k) < x);
    }
  }
}
