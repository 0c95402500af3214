#include "eigencert/factored.hpp"
#include "eigencert/sturm.hpp"

#include <gtest/gtest.h>

using namespace eigencert;

namespace {

IntPoly P(const char* s) { return parse_poly(s); }
IntPoly X(long r) { return IntPoly::linear(BigInt(r)); }

}  // namespace

TEST(Poly, DifferenceOfSquares) {
  EXPECT_EQ(X(-5) * X(5), P("x^2-25"));
  EXPECT_EQ(exact_divide(P("x^2-25"), X(-5)), X(5));
  EXPECT_THROW(exact_divide(P("x^2-25"), X(-4)), InexactDivision);
}

TEST(Poly, DerivativeAtZeroIsLinearCoefficient) {
  const IntPoly p = pow(X(-5), 42) * pow(X(11), 15) * pow(X(15), 3);
  const IntPoly d = derivative(p);
  EXPECT_EQ(evaluate(d, BigRat(0)), BigRat(p.coeff_of_power(1)));
  EXPECT_EQ(d.constant_term(), p.coeff_of_power(1));
  // Leading-first storage: d[2] is the x^57 coefficient, 58 times that of x^58 in p.
  EXPECT_EQ(d[2], 58 * p[2]);
}

TEST(Poly, EvaluateAtRational) {
  EXPECT_EQ(evaluate(P("2x^2-3x+1"), BigRat(BigRat(1) / 2)), BigRat(0));
  EXPECT_EQ(evaluate(P("x^3"), BigRat(BigRat(-2) / 3)), BigRat(BigRat(-8) / 27));
}

TEST(Poly, ShiftDown) {
  const IntPoly m = P("x^4-10x^3-244x^2-536x+2112");
  EXPECT_EQ(shift_down(m, 1), P("x^3-10x^2-244x-536"));
  EXPECT_EQ(shift_down(m, 2), P("x^2-10x-244"));
  EXPECT_TRUE(shift_down(IntPoly::constant(BigInt(7)), 1).is_zero());
}

TEST(Poly, ParseAndFormatRoundTrip) {
  for (const char* s : {"x^3-39x^2+495x-2049", "x^2-22x+109", "-x+1", "x"}) EXPECT_EQ(format_poly(P(s)), s);
}

TEST(Sturm, RootCounts) {
  EXPECT_EQ(sturm_root_count(P("x^2-22x+109"), RatInterval::real_line()), 2);
  EXPECT_EQ(sturm_root_count(P("x^2+1"), RatInterval::real_line()), 0);
  EXPECT_EQ(sturm_root_count(P("x^3-39x^2+495x-2049"), RatInterval::above(BigRat(-5))), 3);
  // Open interval: a root on the boundary is not counted.
  EXPECT_EQ(sturm_root_count(X(2) * X(5), RatInterval::open(BigRat(2), BigRat(6))), 1);
}

TEST(Sturm, TotallyReal) {
  EXPECT_TRUE(is_totally_real(X(-5) * X(-5) * X(3)));
  EXPECT_FALSE(is_totally_real(P("x^2+x+1")));
  EXPECT_TRUE(is_totally_real(P("x^2-22x+109")));
}

TEST(Sturm, Interlacing) {
  EXPECT_TRUE(interlaces(X(1), X(0) * X(2)));
  EXPECT_FALSE(interlaces(X(3), X(0) * X(2)));
  // Repeated roots: (x+5)^2 interlaces (x+5)^3.
  EXPECT_TRUE(interlaces(pow(X(-5), 2), pow(X(-5), 3)));
}

TEST(Sturm, Type2) {
  EXPECT_TRUE(type2_check(P("x^2+4x+4"), Type2Mode::type2));
  EXPECT_FALSE(type2_check(P("x^2+2x+2"), Type2Mode::type2));
  EXPECT_TRUE(type2_check(P("x^2+2x+2"), Type2Mode::weak));
}

TEST(Factored, ParseStrRoundTrip) {
  for (const char* s : {"(x+5)^42*(x-11)^15*(x-15)^3", "(x+5)^42*(x-11)^10*(x-13)^6*(x^2-22x+109)",
                        "(x+5)^41*(x-11)^13*(x-13)^2*(x^3-36x^2+405x-1382)"}) {
    const auto f = FactoredPolynomial::parse(s);
    EXPECT_EQ(f.str(), s);
    EXPECT_EQ(FactoredPolynomial::parse(f.str()).expand(), f.expand());
  }
}

TEST(Factored, FactorOverBasis) {
  const IntPoly p = pow(X(-5), 3) * X(11) * P("x^2-22x+109");
  const auto f = factor_over(p, {X(-5), X(11), P("x^2-22x+109")});
  EXPECT_EQ(f.str(), "(x+5)^3*(x-11)*(x^2-22x+109)");
  EXPECT_EQ(f.expand(), p);
  EXPECT_EQ(f.min_poly(), X(-5) * X(11) * P("x^2-22x+109"));
  EXPECT_EQ(f.multiplicity_of_root(BigInt(-5)), 3u);
}

TEST(Factored, RejectsGarbage) {
  EXPECT_THROW(FactoredPolynomial::parse("(x+5"), ParseError);
  EXPECT_THROW(FactoredPolynomial::parse(""), ParseError);
}
