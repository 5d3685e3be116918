#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace prmw {

// A field element is a plain integer index in [0, q). For extension fields
// the index encodes the residue polynomial in base p: digit i is the
// coefficient of x^i.
using fe = std::uint16_t;

// Exact arithmetic in F_q for a small prime power q = p^e <= 2^16.
//
// Construction is deterministic: the modulus is the lexicographically least
// monic irreducible polynomial of degree e over F_p, comparing coefficient
// vectors low-degree-first. Multiplication and inversion go through exp/log
// tables over a fixed generator of the multiplicative group; the tables are
// built once and the object is immutable afterwards, so concurrent reads are
// safe.
class FieldSpec {
 public:
  explicit FieldSpec(unsigned p, unsigned e = 1) : p_(p), e_(e) {
    if (e_ < 1) throw std::invalid_argument("FieldSpec: extension degree must be >= 1");
    if (!is_prime(p_)) throw std::invalid_argument("FieldSpec: " + std::to_string(p_) + " is not prime");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e_; ++i) {
      q *= p_;
      if (q > 65536) throw std::invalid_argument("FieldSpec: p^e exceeds 2^16");
    }
    q_ = static_cast<std::uint32_t>(q);
    modulus_ = find_modulus();
    build_tables();
  }

  unsigned p() const { return p_; }
  unsigned extension_degree() const { return e_; }
  std::uint32_t q() const { return q_; }
  // Monic degree-e modulus, coefficients low-degree-first (length e+1, last entry 1).
  const std::vector<unsigned>& modulus() const { return modulus_; }
  fe generator() const { return generator_; }

  fe add(fe a, fe b) const {
    if (e_ == 1) return static_cast<fe>((static_cast<std::uint32_t>(a) + b) % p_);
    std::uint32_t r = 0, mul = 1, x = a, y = b;
    for (unsigned i = 0; i < e_; ++i) {
      r += ((x + y) % p_) % p_ * mul;
      x /= p_;
      y /= p_;
      mul *= p_;
    }
    return static_cast<fe>(r);
  }

  fe neg(fe a) const {
    if (e_ == 1) return static_cast<fe>((p_ - a) % p_);
    std::uint32_t r = 0, mul = 1, x = a;
    for (unsigned i = 0; i < e_; ++i) {
      std::uint32_t d = x % p_;
      r += (d == 0 ? 0 : p_ - d) * mul;
      x /= p_;
      mul *= p_;
    }
    return static_cast<fe>(r);
  }

  fe sub(fe a, fe b) const { return add(a, neg(b)); }

  fe mul(fe a, fe b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }

  fe inv(fe a) const {
    if (a == 0) throw std::invalid_argument("FieldSpec::inv: zero has no inverse");
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
  }

  // a^k with the 0^0 = 1 convention (needed when evaluating constant monomials).
  fe pow(fe a, std::uint64_t k) const {
    if (a == 0) return k == 0 ? 1 : 0;
    if (q_ == 2) return 1;  // the only nonzero element
    std::uint64_t kk = k % (q_ - 1);
    return exp_[static_cast<std::uint32_t>((static_cast<std::uint64_t>(log_[a]) * kk) % (q_ - 1))];
  }

  // Base-p coefficient vector of an element, length e, low degree first.
  std::vector<unsigned> digits(fe a) const {
    std::vector<unsigned> d(e_);
    std::uint32_t x = a;
    for (unsigned i = 0; i < e_; ++i) {
      d[i] = x % p_;
      x /= p_;
    }
    return d;
  }

  fe from_digits(const std::vector<unsigned>& d) const {
    std::uint32_t r = 0, mul = 1;
    for (unsigned i = 0; i < e_ && i < d.size(); ++i) {
      r += (d[i] % p_) * mul;
      mul *= p_;
    }
    return static_cast<fe>(r);
  }

 private:
  unsigned p_, e_;
  std::uint32_t q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<fe> exp_;  // exp_[i] = g^i, i in [0, q-1)
  std::vector<fe> log_;  // log_[exp_[i]] = i; log_[0] unused
  fe generator_ = 1;

  static bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  // --- construction-time polynomial arithmetic over F_p ---
  using Poly = std::vector<unsigned>;  // low degree first, may have high zeros

  static void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  Poly poly_mul(const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
    poly_trim(r);
    return r;
  }

  // Remainder of a modulo the monic polynomial m.
  Poly poly_mod(Poly a, const Poly& m) const {
    poly_trim(a);
    while (a.size() >= m.size()) {
      unsigned lead = a.back();
      std::size_t shift = a.size() - m.size();
      for (std::size_t i = 0; i < m.size(); ++i) {
        unsigned sub = (lead * m[i]) % p_;
        a[shift + i] = (a[shift + i] + p_ - sub % p_) % p_;
      }
      poly_trim(a);
    }
    return a;
  }

  bool is_irreducible(const Poly& cand) const {
    // Trial division by every monic polynomial of degree 1..e/2.
    unsigned deg = static_cast<unsigned>(cand.size()) - 1;
    for (unsigned t = 1; 2 * t <= deg; ++t) {
      std::uint64_t count = 1;
      for (unsigned i = 0; i < t; ++i) count *= p_;
      for (std::uint64_t code = 0; code < count; ++code) {
        Poly div(t + 1, 0);
        std::uint64_t c = code;
        for (unsigned i = 0; i < t; ++i) {
          div[i] = static_cast<unsigned>(c % p_);
          c /= p_;
        }
        div[t] = 1;
        if (poly_mod(cand, div).empty()) return false;
      }
    }
    return true;
  }

  Poly find_modulus() const {
    if (e_ == 1) return {0, 1};  // the polynomial x
    // Enumerate monic degree-e candidates in ascending lexicographic order of
    // (c_0, c_1, ..., c_{e-1}) and take the first irreducible one.
    std::uint64_t count = 1;
    for (unsigned i = 0; i < e_; ++i) count *= p_;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly cand(e_ + 1, 0);
      std::uint64_t c = code;
      for (unsigned i = e_; i-- > 0;) {
        cand[i] = static_cast<unsigned>(c % p_);
        c /= p_;
      }
      cand[e_] = 1;
      if (is_irreducible(cand)) return cand;
    }
    throw std::logic_error("FieldSpec: no irreducible modulus found");  // unreachable
  }

  fe encode(const Poly& a) const {
    std::uint32_t r = 0, mul = 1;
    for (unsigned i = 0; i < e_; ++i) {
      r += (i < a.size() ? a[i] : 0) * mul;
      mul *= p_;
    }
    return static_cast<fe>(r);
  }

  Poly decode(fe a) const {
    Poly r(e_);
    std::uint32_t x = a;
    for (unsigned i = 0; i < e_; ++i) {
      r[i] = x % p_;
      x /= p_;
    }
    poly_trim(r);
    return r;
  }

  // Table-free multiply, used only while building the tables.
  fe mul_slow(fe a, fe b) const {
    if (e_ == 1) return static_cast<fe>((static_cast<std::uint32_t>(a) * b) % p_);
    return encode(poly_mod(poly_mul(decode(a), decode(b)), modulus_));
  }

  fe pow_slow(fe a, std::uint64_t k) const {
    fe r = 1, base = a;
    while (k != 0) {
      if (k & 1) r = mul_slow(r, base);
      base = mul_slow(base, base);
      k >>= 1;
    }
    return r;
  }

  void build_tables() {
    std::uint32_t order = q_ - 1;
    std::vector<std::uint32_t> prime_factors;
    std::uint32_t n = order;
    for (std::uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime_factors.push_back(d);
        while (n % d == 0) n /= d;
      }
    if (n > 1) prime_factors.push_back(n);

    generator_ = 1;
    for (std::uint32_t cand = 2; cand < q_; ++cand) {
      bool ok = true;
      for (std::uint32_t f : prime_factors)
        if (pow_slow(static_cast<fe>(cand), order / f) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        generator_ = static_cast<fe>(cand);
        break;
      }
    }

    exp_.assign(order, 0);
    log_.assign(q_, 0);
    fe cur = 1;
    for (std::uint32_t i = 0; i < order; ++i) {
      exp_[i] = cur;
      log_[cur] = static_cast<fe>(i);
      cur = mul_slow(cur, generator_);
    }
  }
};

// Build F_q from a bare prime power q.
inline FieldSpec field_from_q(std::uint32_t q) {
  if (q < 2) throw std::invalid_argument("field_from_q: q must be >= 2");
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  unsigned e = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw std::invalid_argument("field_from_q: " + std::to_string(q) + " is not a prime power");
  return FieldSpec(p, e);
}

}  // namespace prmw
