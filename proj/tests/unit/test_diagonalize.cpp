#include <gtest/gtest.h>

#include "hk/diagonalize.hpp"
#include "hk/hk.hpp"
#include "oracle.hpp"

using namespace hk;

namespace {

RingPtr ring(std::uint32_t p, std::vector<std::string> vars) {
  return Ring::create(FiniteField::prime(p), std::move(vars));
}

TruncatedSeries S(const RingPtr& R, const char* text) { return parse_series(text, R); }

}  // namespace

TEST(Diagonalize, QuadricCompletionExample) {
  auto R = ring(5, {"x0", "x1"});
  const auto qc = quadric_complete(S(R, "x0^2 + x1^2 + x0*x1^2@8"), 0);
  EXPECT_EQ(qc.v, S(R, "1@8"));
  EXPECT_EQ(qc.a.poly(), parse_poly("3*x1^2", R));
  EXPECT_EQ(qc.Q.poly(), parse_poly("x1^2", R));
  EXPECT_EQ(qc.G1.poly(), parse_poly("x1^4", R));
  // Expand and compare.
  const auto x0 = S(R, "x0@8");
  EXPECT_TRUE((qc.v * ts_pow(x0 + qc.a, 2) + qc.Q + qc.G1).equals_mod(S(R, "x0^2 + x1^2 + x0*x1^2@8")));
}

TEST(Diagonalize, QuadricCompletionTrivial) {
  auto R = ring(5, {"x0", "x1"});
  const auto qc = quadric_complete(S(R, "x0^2 + x1^2@6"), 0);
  EXPECT_EQ(qc.v, S(R, "1@6"));
  EXPECT_TRUE(qc.a.is_zero());
  EXPECT_TRUE(qc.G1.is_zero());
  EXPECT_THROW(quadric_complete(S(ring(2, {"x0", "x1"}), "x0^2@4"), 0), UnsupportedCharacteristic);
  EXPECT_THROW(quadric_complete(S(R, "x0*x1 + x1^2@6"), 0), PreconditionError);
}

TEST(Diagonalize, QuadraticPartXY) {
  auto R = ring(5, {"x", "y"});
  const auto F = S(R, "x*y@5");
  const auto d = diagonalize_quadratic_part(F);
  EXPECT_EQ(d.l, 1);
  EXPECT_FALSE(d.needs_extension);
  // (x + 2y)(x + 3y) = x^2 + 5xy + 6y^2 = x^2 + y^2 over F_5.
  FieldMatrix want{2, {1, 2, 1, 3}};
  EXPECT_EQ(d.M.a, want.a);
  EXPECT_EQ(ts_linear_change(F, d.M), S(R, "x^2 + y^2@5"));
}

TEST(Diagonalize, QuadraticPartDegenerate) {
  auto R = ring(5, {"x", "y"});
  const auto d = diagonalize_quadratic_part(S(R, "x^2 + y^3@5"));
  EXPECT_EQ(d.l, 0);
  EXPECT_EQ(d.M.a, FieldMatrix::identity(2).a);
  EXPECT_EQ(diagonalize_quadratic_part(S(R, "x^3 + y^3@5")).l, -1);
}

TEST(Diagonalize, NonsquareNeedsExtension) {
  auto R = ring(7, {"x", "y"});
  const auto F = S(R, "3*x^2 + y^2 + x*y^2@6");
  const auto d = diagonalize_quadratic_part(F);
  EXPECT_TRUE(d.needs_extension);
  const auto c = diagonalize_hypersurface(F);
  EXPECT_EQ(c.extensions.size(), 1u);
  EXPECT_TRUE(c.verified);
  EXPECT_EQ(c.tag, NormalForm::sum_of_squares);
  EXPECT_EQ(c.input.field()->order(), 49u);
  EXPECT_TRUE(verify_substitution(c.input, c.substitution, c.normal_form));
}

TEST(Diagonalize, SumOfSquaresIdentity) {
  auto R = ring(7, {"x0", "x1", "x2"});
  const auto F = S(R, "x0^2 + x1^2 + x2^2@8");
  const auto c = diagonalize_hypersurface(F);
  EXPECT_TRUE(c.verified);
  EXPECT_EQ(c.rank, 3);
  EXPECT_EQ(c.substitution[0], S(R, "x0@8"));
  EXPECT_EQ(c.substitution[1], S(R, "x1@8"));
  EXPECT_EQ(c.substitution[2], S(R, "x2@8"));
  EXPECT_TRUE(c.residual.is_zero());
}

TEST(Diagonalize, CubicPerturbation) {
  auto R = ring(7, {"x0", "x1"});
  const auto F = S(R, "x0^2 + x1^2 + x0^3@8");
  const auto c = diagonalize_hypersurface(F);
  EXPECT_TRUE(c.verified);
  EXPECT_EQ(c.tag, NormalForm::sum_of_squares);
  EXPECT_TRUE(c.residual.is_zero());
  EXPECT_EQ(c.normal_form, S(R, "x0^2 + x1^2@8"));
  EXPECT_TRUE(verify_substitution(F, c.substitution, c.normal_form));
  // The new x0 is x0 * sqrt(1 + x0) to first order.
  EXPECT_EQ(c.substitution[0].poly().coefficient(Monomial::var(0)), 1u);
}

TEST(Diagonalize, RescalesSquareCoefficient) {
  auto R = ring(7, {"x0", "x1"});
  const auto F = S(R, "2*x0^2 + x1^2@6");
  const auto c = diagonalize_hypersurface(F);
  EXPECT_TRUE(c.verified);
  EXPECT_TRUE(c.extensions.empty());
  EXPECT_EQ(c.normal_form, S(R, "x0^2 + x1^2@6"));
  const auto s = c.substitution[0].poly().coefficient(Monomial::var(0));
  // 2 s^2 = 1: s is 5 or 2, the inverses of the square roots 3 and 4.
  EXPECT_TRUE(s == 5 || s == 2);
}

TEST(Diagonalize, CubeTarget) {
  auto R = ring(7, {"x0", "x1"});
  const auto F = S(R, "x0^2 + x1^3 + x1^4 + x0*x1^2@10");
  const auto c = diagonalize_hypersurface(F, NormalForm::squares_plus_cube);
  EXPECT_EQ(c.tag, NormalForm::squares_plus_cube);
  EXPECT_TRUE(c.verified);
  EXPECT_TRUE(verify_substitution(c.input, c.substitution, c.normal_form));
  EXPECT_EQ(c.normal_form.poly(), parse_poly("x0^2 + x1^3", R));
}

TEST(Diagonalize, DegenerateRank) {
  auto R = ring(7, {"x0", "x1"});
  const auto c = diagonalize_hypersurface(S(R, "x0^2 + x1^4@8"));
  EXPECT_EQ(c.tag, NormalForm::degenerate);
  EXPECT_EQ(c.rank, 1);
}

TEST(Diagonalize, VerifyRejectsBadImages) {
  auto R = ring(7, {"x", "y"});
  const auto F = S(R, "x^2 + y^2@6");
  EXPECT_TRUE(verify_substitution(F, {S(R, "x@6"), S(R, "y@6")}, F));
  EXPECT_FALSE(verify_substitution(F, {S(R, "x + y^2@6"), S(R, "y@6")}, F));
  EXPECT_THROW(verify_substitution(F, {S(R, "1 + x@6"), S(R, "y@6")}, F), PreconditionError);
  EXPECT_THROW(verify_substitution(F, {S(R, "x + y@6"), S(R, "2*x + 2*y@6")}, F), PreconditionError);
}

TEST(Diagonalize, RejectsCharacteristicTwo) {
  auto R = ring(2, {"x", "y"});
  EXPECT_THROW(diagonalize_hypersurface(S(R, "x*y@6")), UnsupportedCharacteristic);
}

TEST(Diagonalize, NormalFormHasQuadricColength) {
  // Below the window the truncated input already is its own expansion, so
  // the colength of F equals that of the sum of squares.
  auto R = ring(7, {"x0", "x1"});
  const auto F = S(R, "3*x0^2 + 5*x1^2 + x0^2*x1^3@12");
  const auto c = diagonalize_hypersurface(F);
  ASSERT_TRUE(c.verified);
  const auto m = maximal_ideal(R);
  const auto a = hk_colength(LocalRingPresentation::create(R, {F.poly()}), m, 7);
  const auto b = hk_colength(LocalRingPresentation::create(R, parse_poly_list("x0^2 + x1^2", R)), m, 7);
  EXPECT_EQ(a, b);
}
