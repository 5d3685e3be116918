#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "prmw/finite_field.hpp"

using namespace prmw;

namespace {

std::vector<std::pair<unsigned, unsigned>> prime_powers_upto(unsigned limit) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned p = 2; p <= limit; ++p) {
    bool prime = p >= 2;
    for (unsigned d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    unsigned long q = p;
    unsigned e = 1;
    while (q <= limit) {
      out.emplace_back(p, e);
      q *= p;
      ++e;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("deterministic construction and moduli") {
  FieldSpec f3(3);
  CHECK(f3.q() == 3);
  CHECK(f3.modulus() == std::vector<unsigned>{0, 1});  // the polynomial x

  FieldSpec f4(2, 2);
  CHECK(f4.q() == 4);
  CHECK(f4.modulus() == std::vector<unsigned>{1, 1, 1});  // x^2+x+1, the only irreducible monic quadratic

  CHECK_THROWS_AS(FieldSpec(4, 1), std::invalid_argument);  // 4 is not prime
  CHECK_THROWS_AS(FieldSpec(2, 17), std::invalid_argument); // 2^17 over the size cap
  CHECK_THROWS_AS(FieldSpec(2, 0), std::invalid_argument);

  // construction is reproducible
  FieldSpec f9a(3, 2), f9b(3, 2);
  CHECK(f9a.modulus() == f9b.modulus());
  CHECK(f9a.generator() == f9b.generator());
}

TEST_CASE("arithmetic examples") {
  FieldSpec f3(3);
  CHECK(f3.mul(2, 2) == 1);  // 4 mod 3

  FieldSpec f4(2, 2);
  const fe a = 2;  // the class of x
  CHECK(f4.mul(a, a) == f4.add(a, 1));  // x^2 = x+1 mod x^2+x+1

  FieldSpec f5(5);
  CHECK(f5.inv(2) == 3);

  CHECK_THROWS_AS(f5.inv(0), std::invalid_argument);
  CHECK(f5.pow(0, 0) == 1);  // 0^0 convention, needed for constant monomials
  CHECK(f5.pow(0, 3) == 0);
}

TEST_CASE("digit encoding round trip in F_9") {
  FieldSpec f9(3, 2);
  for (fe a = 0; a < 9; ++a) CHECK(f9.from_digits(f9.digits(a)) == a);
  // additive structure is componentwise mod p
  CHECK(f9.add(f9.from_digits({1, 2}), f9.from_digits({2, 2})) == f9.from_digits({0, 1}));
}

TEST_CASE("field axioms, exhaustive for every q <= 256") {
  for (auto [p, e] : prime_powers_upto(256)) {
    FieldSpec F(p, e);
    const std::uint32_t q = F.q();
    CAPTURE(q);
    std::uint64_t violations = 0;  // one assertion per field keeps the triple loop fast
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        const fe fa = static_cast<fe>(a), fb = static_cast<fe>(b);
        violations += F.add(fa, fb) != F.add(fb, fa);
        violations += F.mul(fa, fb) != F.mul(fb, fa);
        for (std::uint32_t c = 0; c < q; ++c) {
          const fe fc = static_cast<fe>(c);
          violations += F.add(F.add(fa, fb), fc) != F.add(fa, F.add(fb, fc));
          violations += F.mul(F.mul(fa, fb), fc) != F.mul(fa, F.mul(fb, fc));
          violations += F.mul(fa, F.add(fb, fc)) != F.add(F.mul(fa, fb), F.mul(fa, fc));
        }
      }
    }
    for (std::uint32_t a = 1; a < q; ++a) {
      const fe fa = static_cast<fe>(a);
      violations += F.mul(fa, F.inv(fa)) != 1;
      violations += F.pow(fa, q - 1) != 1;
      violations += F.add(fa, F.neg(fa)) != 0;
      violations += F.sub(fa, fa) != 0;
    }
    REQUIRE(violations == 0);
  }
}

TEST_CASE("exp/log tables are mutually inverse on nonzero elements") {
  for (auto [p, e] : {std::pair<unsigned, unsigned>{2, 4}, {3, 3}, {5, 2}, {251, 1}}) {
    FieldSpec F(p, e);
    const fe g = F.generator();
    fe cur = 1;
    std::vector<bool> seen(F.q(), false);
    for (std::uint32_t i = 0; i + 1 < F.q(); ++i) {
      REQUIRE(!seen[cur]);  // g really generates the multiplicative group
      seen[cur] = true;
      cur = F.mul(cur, g);
    }
    CHECK(cur == 1);
  }
}

TEST_CASE("field_from_q") {
  CHECK(field_from_q(9).p() == 3);
  CHECK(field_from_q(9).extension_degree() == 2);
  CHECK(field_from_q(7).extension_degree() == 1);
  CHECK_THROWS_AS(field_from_q(12), std::invalid_argument);
  CHECK_THROWS_AS(field_from_q(1), std::invalid_argument);
}
