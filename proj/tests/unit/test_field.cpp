#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hk/field.hpp"

using namespace hk;

namespace {

// Brute-force cube roots.
std::set<FiniteField::Raw> cube_roots(const FiniteField& F, FiniteField::Raw a) {
  std::set<FiniteField::Raw> out;
  for (FiniteField::Raw x = 0; x < F.order(); ++x)
    if (F.mul(F.mul(x, x), x) == a) out.insert(x);
  return out;
}

bool brute_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& f) {
  // Degree <= 3: irreducible iff no root.
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t k = f.size(); k-- > 0;) v = (v * x + f[k]) % p;
    if (v == 0) return false;
  }
  return true;
}

}  // namespace

TEST(Field, PrimeArithmetic) {
  auto F = FiniteField::prime(7);
  EXPECT_EQ(F->add(5, 4), 2u);
  EXPECT_EQ(F->sub(2, 5), 4u);
  EXPECT_EQ(F->mul(3, 5), 1u);
  EXPECT_EQ(F->inv(3), 5u);
  EXPECT_EQ(F->pow(3, 6), 1u);
  EXPECT_THROW(F->inv(0), DivisionByZero);
}

TEST(Field, RejectsCompositeCharacteristic) {
  EXPECT_THROW(FiniteField::prime(4), PreconditionError);
  FieldSpec s{3, 2, {2, 0, 1}, "t"};  // t^2 + 2 = (t-1)(t+1)
  EXPECT_THROW(FiniteField::create(s), PreconditionError);
}

TEST(Field, CubeRootExamples) {
  auto F7 = FiniteField::prime(7);
  EXPECT_EQ(cube_roots(*F7, 6), (std::set<FiniteField::Raw>{3, 5, 6}));
  ASSERT_TRUE(F7->kth_root(6, 3));
  EXPECT_EQ(*F7->kth_root(6, 3), 3u);
  auto F5 = FiniteField::prime(5);
  EXPECT_EQ(cube_roots(*F5, 2), (std::set<FiniteField::Raw>{3}));
  EXPECT_EQ(*F5->kth_root(2, 3), 3u);
  EXPECT_FALSE(F7->kth_root(2, 3).has_value());
}

TEST(Field, KthRootRejectsCharacteristicMultiple) {
  auto F = FieldElement(FiniteField::prime(3), 2);
  EXPECT_THROW(ff_kth_root(F, 3), UnsupportedCharacteristic);
}

TEST(Field, SqrtIsCanonicalAndCorrect) {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    auto F = FiniteField::prime(p);
    for (FiniteField::Raw a = 0; a < p; ++a) {
      std::set<FiniteField::Raw> roots;
      for (FiniteField::Raw x = 0; x < p; ++x)
        if (F->mul(x, x) == a) roots.insert(x);
      const auto r = F->sqrt(a);
      EXPECT_EQ(r.has_value(), !roots.empty());
      EXPECT_EQ(F->is_square(a), !roots.empty());
      if (r) EXPECT_EQ(*r, *roots.begin());
    }
  }
  EXPECT_THROW(ff_sqrt(FieldElement(FiniteField::prime(2), 1)), UnsupportedCharacteristic);
}

TEST(Field, SqrtInExtension) {
  auto F = FiniteField::extension(3, 2);
  for (FiniteField::Raw a = 1; a < F->order(); ++a) {
    ASSERT_TRUE(F->sqrt(a).has_value() || !F->is_square(a));
    if (auto r = F->sqrt(a)) EXPECT_EQ(F->mul(*r, *r), a);
  }
}

TEST(Field, FindIrreducibleSmallest) {
  EXPECT_EQ(find_irreducible(3, 2), (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_EQ(find_irreducible(2, 2), (std::vector<std::uint32_t>{1, 1, 1}));
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (std::uint32_t m : {2u, 3u}) {
      const auto f = find_irreducible(p, m);
      ASSERT_EQ(f.size(), m + 1);
      EXPECT_EQ(f.back(), 1u);
      EXPECT_TRUE(brute_irreducible(p, f));
      EXPECT_TRUE(is_irreducible(p, f));
    }
  EXPECT_FALSE(is_irreducible(2, {1, 0, 1}));
}

TEST(Field, SeededIrreducibleIsIrreducible) {
  for (std::uint64_t seed = 1; seed < 10; ++seed) {
    const auto f = find_irreducible(5, 3, seed);
    EXPECT_TRUE(brute_irreducible(5, f));
  }
}

TEST(Field, ExtensionF4) {
  auto F = FiniteField::extension(2, 2);
  const auto t = F->generator();
  // t^2 = t + 1
  EXPECT_EQ(F->mul(t, t), F->add(t, 1));
  EXPECT_EQ(F->pow(t, 3), 1u);
  EXPECT_EQ(F->format(F->add(t, 1)), "t+1");
}

TEST(Field, InverseEverywhere) {
  std::mt19937_64 rng(7);
  for (auto F : {FiniteField::prime(2), FiniteField::prime(101), FiniteField::extension(2, 3),
                 FiniteField::extension(3, 3), FiniteField::extension(5, 2)}) {
    std::uniform_int_distribution<FiniteField::Raw> pick(1, F->order() - 1);
    for (int k = 0; k < 200; ++k) {
      const auto a = pick(rng);
      EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
      const FieldElement e(F, a);
      EXPECT_EQ((e * ff_inv(e)).raw(), 1u);
    }
  }
}

TEST(Field, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (auto F : {FiniteField::prime(13), FiniteField::extension(3, 2), FiniteField::extension(2, 4)}) {
    std::uniform_int_distribution<FiniteField::Raw> pick(0, F->order() - 1);
    for (int k = 0; k < 300; ++k) {
      const auto a = pick(rng), b = pick(rng), c = pick(rng);
      EXPECT_EQ(F->add(a, b), F->add(b, a));
      EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
      EXPECT_EQ(F->mul(F->mul(a, b), c), F->mul(a, F->mul(b, c)));
      EXPECT_EQ(F->sub(F->add(a, b), b), a);
      // Frobenius is additive.
      EXPECT_EQ(F->frobenius(F->add(a, b)), F->add(F->frobenius(a), F->frobenius(b)));
    }
  }
}

TEST(Field, MixedFieldsRejected) {
  const FieldElement a(FiniteField::prime(5), 1), b(FiniteField::prime(7), 1);
  EXPECT_THROW(field_arith(a, b, ArithOp::add), SpecMismatch);
}

TEST(Field, ElementDegree) {
  auto F = FiniteField::extension(2, 6);
  std::size_t deg1 = 0, deg2 = 0, deg3 = 0;
  for (FiniteField::Raw a = 0; a < F->order(); ++a) {
    const auto d = F->element_degree(a);
    EXPECT_EQ(6 % d, 0u);
    // a lies in F_{2^d}: a^(2^d) = a.
    EXPECT_EQ(F->pow(a, 1ULL << d), a);
    deg1 += d == 1;
    deg2 += d == 2;
    deg3 += d == 3;
  }
  EXPECT_EQ(deg1, 2u);
  EXPECT_EQ(deg2, 2u);
  EXPECT_EQ(deg3, 6u);
}

TEST(Field, ArtinSchreier) {
  auto F4 = FiniteField::extension(2, 2);
  for (FiniteField::Raw a = 0; a < 4; ++a) {
    const auto b = F4->artin_schreier(a);
    bool exists = false;
    for (FiniteField::Raw x = 0; x < 4; ++x) exists |= F4->add(F4->mul(x, x), x) == a;
    EXPECT_EQ(b.has_value(), exists);
    if (b) EXPECT_EQ(F4->add(F4->mul(*b, *b), *b), a);
  }
  // 1 has no root in F_2.
  EXPECT_FALSE(artin_schreier_solve(FieldElement(FiniteField::prime(2), 1)).has_value());
  EXPECT_THROW(artin_schreier_solve(FieldElement(FiniteField::prime(3), 1)), UnsupportedCharacteristic);
}

TEST(Field, EmbeddingIsHomomorphism) {
  const auto small = FiniteField::extension(2, 2);
  const auto emb = extend_field(small, 3);
  const auto& big = *emb.target();
  EXPECT_EQ(big.order(), 64u);
  for (FiniteField::Raw a = 0; a < 4; ++a)
    for (FiniteField::Raw b = 0; b < 4; ++b) {
      EXPECT_EQ(emb(small->add(a, b)), big.add(emb(a), emb(b)));
      EXPECT_EQ(emb(small->mul(a, b)), big.mul(emb(a), emb(b)));
    }
}

TEST(Field, NonsquareIsNonsquare) {
  for (auto F : {FiniteField::prime(5), FiniteField::prime(7), FiniteField::extension(3, 2)})
    EXPECT_FALSE(F->is_square(F->canonical_nonsquare()));
}
