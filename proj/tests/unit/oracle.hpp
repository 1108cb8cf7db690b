#pragma once

// Independent reference computations for the tests. Nothing here touches
// the Groebner code.

#include <cstdint>
#include <random>
#include <vector>

#include <ostream>

#include "hk/poly.hpp"
#include "hk/series.hpp"

namespace hk {
inline void PrintTo(const TruncatedSeries& s, std::ostream* os) { *os << s.to_string(); }
inline void PrintTo(const Polynomial& f, std::ostream* os) { *os << f.to_string(); }
}  // namespace hk

namespace hk::test {

// dim_k k[x]/(gens + (x_1^box, ..., x_n^box)), by Gaussian elimination on
// the span of all g * x^a inside the box. Requires box^n to be small.
inline std::uint64_t linear_colength(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                     std::uint32_t box) {
  const auto& F = *ring->field();
  const std::size_t n = ring->nvars();
  std::size_t N = 1;
  for (std::size_t i = 0; i < n; ++i) N *= box;
  auto index = [&](const Monomial& m) -> long {
    long k = 0;
    for (std::size_t i = n; i-- > 0;) {
      if (m.e[i] >= box) return -1;
      k = k * box + m.e[i];
    }
    return k;
  };
  std::vector<std::vector<FiniteField::Raw>> rows;
  std::vector<long> pivot_of;  // pivot column of each reduced row
  std::vector<long> row_at(N, -1);
  auto insert = [&](std::vector<FiniteField::Raw> v) {
    for (std::size_t c = 0; c < N; ++c) {
      if (v[c] == 0) continue;
      if (row_at[c] >= 0) {
        const auto& r = rows[row_at[c]];
        const auto f = v[c];
        for (std::size_t k = c; k < N; ++k)
          if (r[k]) v[k] = F.sub(v[k], F.mul(f, r[k]));
        continue;
      }
      const auto inv = F.inv(v[c]);
      for (std::size_t k = c; k < N; ++k) v[k] = F.mul(v[k], inv);
      row_at[c] = static_cast<long>(rows.size());
      rows.push_back(std::move(v));
      return;
    }
  };
  Monomial a;
  std::vector<std::uint32_t> e(n, 0);
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t t = k;
    a = Monomial{};
    for (std::size_t i = 0; i < n; ++i) {
      a.e[i] = static_cast<std::uint32_t>(t % box);
      a.deg += a.e[i];
      t /= box;
    }
    for (const auto& g : gens) {
      std::vector<FiniteField::Raw> v(N, 0);
      bool any = false;
      for (const auto& term : g.terms()) {
        const auto idx = index(mono_mul(term.m, a));
        if (idx < 0) continue;
        v[idx] = F.add(v[idx], term.c);
        any = true;
      }
      if (any) insert(std::move(v));
    }
  }
  return N - rows.size();
}

// Monomials of the box not divisible by any of lms.
inline std::uint64_t count_standard(const std::vector<Monomial>& lms, std::size_t n,
                                    std::uint32_t box) {
  std::uint64_t N = 1;
  for (std::size_t i = 0; i < n; ++i) N *= box;
  std::uint64_t count = 0;
  for (std::uint64_t k = 0; k < N; ++k) {
    Monomial m;
    std::uint64_t t = k;
    for (std::size_t i = 0; i < n; ++i) {
      m.e[i] = static_cast<std::uint32_t>(t % box);
      m.deg += m.e[i];
      t /= box;
    }
    bool standard = true;
    for (const auto& l : lms)
      if (l.divides(m)) {
        standard = false;
        break;
      }
    count += standard;
  }
  return count;
}

inline Polynomial random_poly(const RingPtr& ring, std::mt19937_64& rng, std::uint32_t max_deg,
                              std::size_t terms, bool allow_constant = true) {
  const auto& F = *ring->field();
  std::uniform_int_distribution<std::uint32_t> coef(1, F.order() - 1);
  std::uniform_int_distribution<std::uint32_t> ex(0, max_deg);
  std::vector<Term> t;
  for (std::size_t k = 0; k < terms; ++k) {
    Monomial m;
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
      m.e[i] = ex(rng);
      m.deg += m.e[i];
    }
    if (m.deg > max_deg || (!allow_constant && m.deg == 0)) continue;
    t.push_back({m, coef(rng)});
  }
  return Polynomial(ring, std::move(t));
}

}  // namespace hk::test
