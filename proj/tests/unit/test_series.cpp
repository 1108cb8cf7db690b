#include <gtest/gtest.h>

#include "hk/series.hpp"
#include "oracle.hpp"

using namespace hk;

namespace {

RingPtr ring(std::uint32_t p, std::vector<std::string> vars) {
  return Ring::create(FiniteField::prime(p), std::move(vars));
}

TruncatedSeries S(const RingPtr& R, const char* text) { return parse_series(text, R); }

}  // namespace

TEST(Series, ParseAndPrint) {
  auto R = ring(7, {"x", "y"});
  const auto f = S(R, "1 + x + x^3*y@4");
  EXPECT_EQ(f.precision(), 4u);
  EXPECT_TRUE(f.lossy());
  EXPECT_EQ(f.poly(), parse_poly("1 + x", R));
  EXPECT_EQ(f.to_string(), "x + 1@4");
  EXPECT_EQ(parse_series("x", R, 5).precision(), 5u);
  EXPECT_THROW(parse_series("x", R), ParseError);
  EXPECT_THROW(parse_series("x@", R), ParseError);
  EXPECT_THROW(parse_series("x@0", R), ParseError);
}

TEST(Series, Multiplication) {
  auto R = ring(7, {"x"});
  EXPECT_EQ(S(R, "1 + x@3") * S(R, "1 - x@3"), S(R, "1 - x^2@3"));
  const auto a = S(R, "1 + 2*x + x^2@3"), b = S(R, "3*x + 4@5");
  EXPECT_EQ(a + b, b + a);
  EXPECT_EQ((a * b).precision(), 3u);
}

TEST(Series, Inverse) {
  auto R = ring(7, {"x", "y"});
  EXPECT_EQ(ts_inverse(S(R, "3@5")), S(R, "5@5"));
  EXPECT_THROW(ts_inverse(S(R, "x@5")), NotAUnit);
  const auto f = S(R, "2 + x + 3*x*y + y^2@6");
  EXPECT_EQ(f * ts_inverse(f), S(R, "1@6"));
}

TEST(Series, Sqrt) {
  auto R = ring(7, {"x"});
  EXPECT_EQ(ts_sqrt(S(R, "1@6")), S(R, "1@6"));
  const auto r = ts_sqrt(S(R, "1 + x@3"));
  EXPECT_EQ(r, S(R, "1 + 4*x + 6*x^2@3"));
  EXPECT_EQ(r * r, S(R, "1 + x@3"));
  auto R5 = ring(5, {"x"});
  EXPECT_THROW(ts_sqrt(S(R5, "2 + x@4")), NotASquare);
  EXPECT_THROW(ts_sqrt(S(ring(2, {"x"}), "1 + x@4")), UnsupportedCharacteristic);
  EXPECT_THROW(ts_sqrt(S(R, "x@4")), NotAUnit);
}

TEST(Series, KthRoot) {
  auto R = ring(7, {"x"});
  EXPECT_EQ(ts_kth_root(S(R, "1@3"), 3), S(R, "1@3"));
  const auto r = ts_kth_root(S(R, "1 + x@3"), 3);
  EXPECT_EQ(r.poly().coefficient(Monomial::var(0)), 5u);  // 3 c_1 = 1
  EXPECT_EQ(ts_pow(r, 3), S(R, "1 + x@3"));
  EXPECT_THROW(ts_kth_root(S(ring(3, {"x"}), "1 + x@3"), 3), UnsupportedCharacteristic);
  EXPECT_THROW(ts_kth_root(S(R, "2 + x@3"), 3), NoRoot);
}

TEST(Series, Substitution) {
  auto R = ring(5, {"x", "y"});
  const auto f = S(R, "x^2 + y@6");
  const auto g = ts_substitute(f, {S(R, "x + y^2@6"), S(R, "3*y@6")});
  EXPECT_EQ(g, S(R, "x^2 + 2*x*y^2 + y^4 + 3*y@6"));
  EXPECT_EQ(ts_substitute_var(f, 1, S(R, "x^3@6")), S(R, "x^2 + x^3@6"));
  EXPECT_THROW(ts_substitute(S(R, "x^7 + x@6").with_lossy(true), {S(R, "1 + x@6"), S(R, "y@6")}),
               PreconditionError);
}

TEST(Series, PrepareTrivial) {
  auto R = ring(5, {"x", "t"});
  const auto f = S(R, "(1 + x)*t@6");
  const auto pf = weierstrass_prepare(f, 1);
  EXPECT_EQ(pf.degree, 1u);
  EXPECT_EQ(pf.unit, S(R, "1 + x@6"));
  EXPECT_EQ(pf.distinguished, S(R, "t@6"));
}

TEST(Series, PrepareExample) {
  auto R = ring(5, {"x", "t"});
  const auto f = S(R, "x + t + x*t^2@6");
  const auto pf = weierstrass_prepare(f, 1);
  EXPECT_EQ(pf.degree, 1u);
  EXPECT_TRUE((pf.unit * pf.distinguished).equals_mod(f));
  ASSERT_EQ(pf.coefficients.size(), 1u);
  // The root is t0 = -x - x^3 - 2x^5 - ..., so a_0 = -t0.
  EXPECT_EQ(pf.coefficients[0], S(R, "x + x^3 + 2*x^5@6"));
  EXPECT_EQ(distinguished_degree(f, 1), 1);
  EXPECT_EQ(distinguished_degree(S(R, "x*t@6"), 1), -1);
  EXPECT_THROW(weierstrass_prepare(S(R, "x*t@6"), 1), NotPreparable);
}

TEST(Series, PrepareHigherDegree) {
  auto R = ring(7, {"x", "y", "t"});
  const auto f = S(R, "t^3 + x*t + y^2 + 2*t^4 + x*y*t^2 + 3@8").with_precision(8) -
                 S(R, "3@8");
  const auto pf = weierstrass_prepare(f, 2);
  EXPECT_EQ(pf.degree, 3u);
  EXPECT_TRUE((pf.unit * pf.distinguished).equals_mod(f));
  for (const auto& a : pf.coefficients) {
    EXPECT_EQ(a.poly().degree_in(2), 0);
    EXPECT_EQ(a.constant_term(), 0u);
  }
  EXPECT_NE(pf.unit.constant_term(), 0u);
}

TEST(Series, CoefficientsIn) {
  auto R = ring(5, {"x", "t"});
  const auto c = coefficients_in(S(R, "x + t + x*t^2@6"), 1);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], S(R, "x@6"));
  // The coefficient of t^j is known below degree N - j.
  EXPECT_EQ(c[1], S(R, "1@5"));
  EXPECT_EQ(c[2], S(R, "x@4"));
}

TEST(Series, MixedPrecisionEquality) {
  auto R = ring(5, {"x"});
  EXPECT_TRUE(S(R, "1 + x + x^5@4").equals_mod(S(R, "1 + x + 3*x^4@5")));
  EXPECT_FALSE(S(R, "1 + x@4").equals_mod(S(R, "1 + 2*x@5")));
}
