#include <gtest/gtest.h>

#include "hk/groebner.hpp"
#include "oracle.hpp"

using namespace hk;

namespace {

RingPtr ring(std::uint32_t p, std::vector<std::string> vars) {
  return Ring::create(FiniteField::prime(p), std::move(vars));
}

// Every S-polynomial of the basis reduces to zero.
bool is_groebner(const GroebnerBasis& G) {
  for (std::size_t i = 0; i < G.basis.size(); ++i)
    for (std::size_t j = i + 1; j < G.basis.size(); ++j) {
      const auto& f = G.basis[i];
      const auto& g = G.basis[j];
      const auto l = mono_lcm(f.lm(), g.lm());
      const auto& F = *G.ring->field();
      const auto s = f.mul_term(mono_div(l, f.lm()), F.inv(f.lc())) -
                     g.mul_term(mono_div(l, g.lm()), F.inv(g.lc()));
      if (!normal_form(s, G).is_zero()) return false;
    }
  return true;
}

}  // namespace

TEST(Groebner, UnitIdeal) {
  auto R = ring(5, {"x", "y"});
  const auto G = buchberger(parse_poly_list("x*y - 1, x^2", R));
  EXPECT_TRUE(G.is_unit());
  // Certificate: y^2 * x^2 - (x*y + 1)(x*y - 1) = 1.
  const auto x = Polynomial::variable(R, 0), y = Polynomial::variable(R, 1);
  const auto one = Polynomial::constant(R, 1);
  EXPECT_EQ(y * y * x * x - (x * y + one) * (x * y - one), one);
  EXPECT_TRUE(normal_form(one, G).is_zero());
}

TEST(Groebner, MembershipAndNormalForm) {
  auto R = ring(7, {"x", "y", "z"});
  const auto gens = parse_poly_list("x^2 + y*z, y^3 - x", R);
  const auto G = buchberger(gens);
  EXPECT_TRUE(is_groebner(G));
  const auto h = gens[0] * parse_poly("x + 3*z", R) + gens[1] * parse_poly("y^2 + 1", R);
  EXPECT_TRUE(ideal_contains(G, h));
  EXPECT_TRUE(normal_form(h, G).is_zero());
  EXPECT_FALSE(ideal_contains(G, parse_poly("z", R)));
  // Normal forms are canonical: f and f + h agree.
  const auto f = parse_poly("x*y*z + z^5", R);
  EXPECT_EQ(normal_form(f, G), normal_form(f + h, G));
}

TEST(Groebner, ReducedMonicSorted) {
  auto R = ring(5, {"x", "y", "z"});
  const auto G = buchberger(parse_poly_list("x*y - z^2, x^3 - y*z, 2*y^2*x + z", R));
  EXPECT_TRUE(is_groebner(G));
  for (std::size_t i = 0; i < G.basis.size(); ++i) {
    EXPECT_EQ(G.basis[i].lc(), 1u);
    if (i) EXPECT_TRUE(R->order().greater(G.basis[i].lm(), G.basis[i - 1].lm()));
    // No term is divisible by another leading monomial.
    for (std::size_t j = 0; j < G.basis.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : G.basis[i].terms()) EXPECT_FALSE(G.basis[j].lm().divides(t.m));
    }
  }
}

TEST(Groebner, EmptyAndZeroGenerators) {
  auto R = ring(3, {"x", "y"});
  const auto G = buchberger(R, {});
  EXPECT_TRUE(G.basis.empty());
  EXPECT_EQ(krull_dimension(G), 2);
  EXPECT_FALSE(colength(G).has_value());
}

TEST(Groebner, Dimensions) {
  auto R = ring(5, {"x", "y", "z"});
  EXPECT_EQ(krull_dimension(buchberger(parse_poly_list("x^2 + y^2 + z^2", R))), 2);
  EXPECT_EQ(krull_dimension(buchberger(parse_poly_list("x^5, y^5, z^5", R))), 0);
  EXPECT_EQ(krull_dimension(buchberger(parse_poly_list("x*y, x*z", R))), 2);
  auto D = ring(2, {"x", "y", "z", "u", "v", "w"});
  EXPECT_EQ(krull_dimension(buchberger(parse_poly_list("x*v - u*y, y*w - v*z, x*w - u*z", D))), 4);
}

TEST(Groebner, Colength) {
  auto R = ring(5, {"x", "y", "z"});
  const auto G = buchberger(parse_poly_list("x^2 + y^2 + z^2, x^5, y^5, z^5", R));
  const auto c = colength(G);
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, test::linear_colength(R, parse_poly_list("x^2 + y^2 + z^2", R), 5));
  EXPECT_EQ(*c, test::count_standard(G.leading_monomials(), 3, 10));
}

TEST(Groebner, StaircaseCounts) {
  // x^2, y^3, xy: standard monomials 1, x, y, y^2.
  const Staircase S({Monomial::var(0, 2), Monomial::var(1, 3), Monomial{{1, 1}, 2}}, 2);
  EXPECT_EQ(S.colength(), 4u);
  EXPECT_EQ(S.dimension(), 0);
  EXPECT_EQ(S.max_degree(), 2);
  const Staircase T({Monomial::var(0, 2)}, 2);
  EXPECT_FALSE(T.colength().has_value());
  EXPECT_EQ(T.dimension(), 1);
  EXPECT_FALSE(T.max_degree().has_value());
  EXPECT_EQ(Staircase({Monomial{}}, 3).colength(), 0u);
  EXPECT_EQ(Staircase({Monomial{}}, 3).max_degree(), -1);
}

TEST(Groebner, MinimizeMonomials) {
  const auto m = minimize_monomials({Monomial{{2, 1}, 3}, Monomial::var(0), Monomial::var(1, 2),
                                     Monomial::var(1, 2)});
  EXPECT_EQ(m.size(), 2u);
}

TEST(Groebner, RegularSequence) {
  auto R = ring(5, {"x", "y", "z", "w"});
  EXPECT_TRUE(is_regular_sequence(R, parse_poly_list("x^2 + y^3", R), parse_poly_list("z, w", R)));
  EXPECT_TRUE(is_regular_sequence(R, {}, parse_poly_list("x^2 + y^3, x^2 + z^3", R)));
  EXPECT_FALSE(is_regular_sequence(R, {}, parse_poly_list("x*y, x*z", R)));
  EXPECT_FALSE(is_regular_sequence(R, parse_poly_list("x", R), parse_poly_list("x^2", R)));
}

TEST(Groebner, LocalOrderSameColength) {
  auto R = ring(5, {"x", "y", "z"});
  const auto gens = parse_poly_list(
      "x^3*y + 3*y^4 + 2*x^3 + 3*y^3 + 4*x^2*z + z^3, x^5, y^5, z^5", R);
  const auto global = buchberger(gens);
  std::vector<Polynomial> local_gens;
  const auto L = R->with_order(MonomialOrder::negdegrevlex(3));
  for (const auto& g : gens) local_gens.push_back(g.with_ring(L));
  const auto local = buchberger(local_gens);
  EXPECT_EQ(colength(global), colength(local));
  EXPECT_EQ(*colength(global), test::linear_colength(R, {gens[0]}, 5));
}

TEST(Groebner, LexOrder) {
  auto R = Ring::create(FiniteField::prime(7), {"x", "y"}, MonomialOrder::lex(2));
  const auto G = buchberger(parse_poly_list("x^2 - y, x*y - 1", R));
  EXPECT_TRUE(is_groebner(G));
  // Elimination: the last element involves y only (x = y^2, y^3 = 1).
  EXPECT_EQ(G.basis.front().degree_in(0), 0);
  EXPECT_EQ(colength(G), 3u);
}

TEST(Groebner, PairLimit) {
  auto R = ring(5, {"x", "y", "z"});
  GroebnerOptions o;
  o.max_pairs = 1;
  EXPECT_THROW(buchberger(parse_poly_list("x*y - z^2, x^3 - y*z, y^2*x + z, z^3 - x", R), o),
               ResourceError);
}
