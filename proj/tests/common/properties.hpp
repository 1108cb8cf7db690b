#pragma once

// Seeded property suites shared by the unit tests and the acceptance run.
// Each returns the number of cases run and the failures seen.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hk/groebner.hpp"
#include "hk/series.hpp"
#include "../unit/oracle.hpp"

namespace hk::props {

struct SuiteResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

inline FieldPtr random_field(std::mt19937_64& rng, bool odd = false) {
  static const std::uint32_t ps[] = {2, 3, 5, 7, 11};
  for (;;) {
    const auto p = ps[rng() % 5];
    if (odd && p == 2) continue;
    const std::uint32_t m = p <= 3 ? 1 + rng() % 3 : 1 + rng() % 2;
    return m == 1 ? FiniteField::prime(p) : FiniteField::extension(p, m);
  }
}

inline RingPtr random_ring(std::mt19937_64& rng, std::size_t nvars, bool odd = false) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i));
  return Ring::create(random_field(rng, odd), names);
}

using test::random_poly;

// Zero-dimensional ideals with at most 2000 standard monomials: Groebner
// colength against enumeration of the box by leading monomials, and against
// dense linear algebra when the box is small.
inline SuiteResult colength_oracle_suite(std::uint64_t seed, int count = 20) {
  SuiteResult r;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 2 + rng() % 2;
    const auto R = random_ring(rng, n);
    // Odd cases use exact pure powers, so the box (x_i^box) lies in the
    // ideal and dense linear algebra gives the same quotient.
    const bool pure = k % 2 == 1;
    std::vector<Polynomial> gens;
    std::uint32_t box = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t e = 2 + rng() % (n == 2 ? 9 : 5);
      box = std::max(box, e);
      auto g = Polynomial::monomial(R, Monomial::var(i, e));
      if (!pure) g = g + random_poly(R, rng, e - 1, 2, false);
      gens.push_back(g);
    }
    const std::size_t extra = rng() % 3;
    for (std::size_t j = 0; j < extra; ++j) gens.push_back(random_poly(R, rng, 4, 3, false));
    const auto G = buchberger(R, gens);
    const auto c = colength(G);
    std::ostringstream what;
    what << "ideal " << k << " over " << R->field()->spec().to_string();
    if (!c) {
      r.check(false, what.str() + ": not zero-dimensional");
      continue;
    }
    if (*c > 2000) {
      r.check(false, what.str() + ": more than 2000 standard monomials");
      continue;
    }
    // Every standard monomial has x_i-exponent below the pure power of x_i
    // among the leading monomials.
    std::uint32_t big = 0;
    for (const auto& m : G.leading_monomials())
      if (std::popcount(m.support()) == 1) big = std::max(big, m.deg);
    r.check(test::count_standard(G.leading_monomials(), n, big) == *c, what.str() + ": enumeration disagrees");
    std::uint64_t vol = 1;
    for (std::size_t i = 0; i < n; ++i) vol *= box;
    if (pure && vol <= 400)
      r.check(test::linear_colength(R, gens, box) == *c, what.str() + ": linear algebra disagrees");
  }
  return r;
}

inline SuiteResult frobenius_suite(std::uint64_t seed, int count = 50) {
  SuiteResult r;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < count; ++k) {
    const auto R = random_ring(rng, 1 + rng() % 3);
    const auto f = random_poly(R, rng, 3, 1 + rng() % 4);
    const auto p = R->field()->characteristic();
    const std::uint32_t e = p <= 3 ? 1 + rng() % 2 : 1;
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) q *= p;
    Polynomial naive = Polynomial::constant(R, 1);
    for (std::uint64_t i = 0; i < q; ++i) naive = naive * f;
    r.check(frobenius_power(f, e) == naive, "frobenius case " + std::to_string(k) + ": " + f.to_string());
  }
  return r;
}

// Inverse, square root, k-th root and Weierstrass preparation, 25 each.
inline SuiteResult series_roundtrip_suite(std::uint64_t seed, int count = 100) {
  SuiteResult r;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < count; ++k) {
    const auto R = random_ring(rng, 1 + rng() % 3, true);
    const auto& F = *R->field();
    const std::uint32_t N = 3 + rng() % 6;
    const std::string what = "series case " + std::to_string(k);
    Polynomial tail = random_poly(R, rng, N + 1, 5, false);
    const FiniteField::Raw c = 1 + rng() % (F.order() - 1);
    switch (k % 4) {
      case 0: {
        const TruncatedSeries f(Polynomial::constant(R, c) + tail, N);
        r.check(f * ts_inverse(f) == TruncatedSeries(Polynomial::constant(R, 1), N), what + " inverse");
        break;
      }
      case 1: {
        const TruncatedSeries f(Polynomial::constant(R, F.mul(c, c)) + tail, N);
        const auto s = ts_sqrt(f);
        r.check(s * s == f, what + " sqrt");
        break;
      }
      case 2: {
        std::uint64_t kk = 2 + rng() % 4;
        if (kk % F.characteristic() == 0) ++kk;
        const TruncatedSeries f(Polynomial::constant(R, F.pow(c, kk)) + tail, N);
        const auto s = ts_kth_root(f, kk);
        r.check(ts_pow(s, kk) == f, what + " root " + std::to_string(kk));
        break;
      }
      default: {
        const std::size_t v = rng() % R->nvars();
        const std::uint32_t d = 1 + rng() % std::max<std::uint32_t>(1, N - 1);
        const auto pure = Polynomial::monomial(R, Monomial::var(v, d), c);
        // Pure powers of v up to degree d in the tail could lower the degree
        // or cancel the leading one; drop them so the case stays at d.
        std::vector<Term> keep;
        for (const auto& t : tail.terms())
          if (!(t.m.e[v] == t.m.deg && t.m.deg <= d)) keep.push_back(t);
        const TruncatedSeries f(pure + Polynomial(R, keep), N);
        const auto pf = weierstrass_prepare(f, v);
        bool ok = (pf.unit * pf.distinguished).equals_mod(f) && pf.degree == d &&
                  pf.unit.constant_term() != 0;
        for (const auto& a : pf.coefficients) ok = ok && a.constant_term() == 0 && a.poly().degree_in(v) <= 0;
        r.check(ok, what + " preparation");
      }
    }
  }
  return r;
}

inline SuiteResult parser_roundtrip_suite(std::uint64_t seed, int count = 100) {
  SuiteResult r;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < count; ++k) {
    const auto R = random_ring(rng, 1 + rng() % 4);
    const auto f = random_poly(R, rng, 6, rng() % 7);
    const auto text = f.to_string();
    bool ok = false;
    try {
      ok = parse_poly(text, R) == f;
    } catch (const Error&) {
      ok = false;
    }
    r.check(ok, "parser case " + std::to_string(k) + ": " + text);
  }
  return r;
}

}  // namespace hk::props
