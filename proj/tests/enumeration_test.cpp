#include "eigencert/enumeration.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"

using namespace eigencert;

namespace {

std::vector<IntPoly> polys(std::initializer_list<const char*> s) {
  std::vector<IntPoly> out;
  for (const char* p : s) out.push_back(parse_poly(p));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Enumerate, LinearInsideInterval) {
  EnumerationSpec s;
  s.degree = 1;
  s.fixed = {BigInt(1)};
  s.root_lower = BigRat(-3);
  s.root_upper = BigRat(3);
  EXPECT_EQ(enumerate_polynomials(s), polys({"x-2", "x-1", "x", "x+1", "x+2"}));
}

TEST(Enumerate, QuadraticsWithZeroTrace) {
  // x^2 + c: totally real forces c <= 0; |roots| < 3/2 forces c > -9/4.
  EnumerationSpec s;
  s.degree = 2;
  s.fixed = {BigInt(1), BigInt(0)};
  s.root_lower = BigRat(-3) / 2;
  s.root_upper = BigRat(3) / 2;
  EXPECT_EQ(enumerate_polynomials(s), polys({"x^2", "x^2-1", "x^2-2"}));
}

TEST(Enumerate, EveryResultIsTotallyRealWithRootsInside) {
  EnumerationSpec s;
  s.degree = 4;
  s.fixed = {BigInt(1), BigInt(-2)};
  s.root_lower = BigRat(-2);
  s.root_upper = BigRat(3);
  const auto out = enumerate_polynomials(s);
  ASSERT_FALSE(out.empty());
  for (const auto& p : out) {
    EXPECT_TRUE(is_totally_real(p)) << format_poly(p);
    // Sturm counts distinct roots; all of them must be inside.
    const IntPoly r = radical(p);
    EXPECT_EQ(sturm_root_count(r, RatInterval::open(BigRat(-2), BigRat(3))), r.degree()) << format_poly(p);
  }
  EXPECT_TRUE(std::is_sorted(out.begin(), out.end()));
}

TEST(Enumerate, Errors) {
  EnumerationSpec s;
  s.degree = 0;
  s.fixed = {BigInt(1)};
  EXPECT_THROW(enumerate_polynomials(s), SearchSpaceError);
  s.degree = 17;
  EXPECT_THROW(enumerate_polynomials(s), SearchSpaceError);
  s.degree = 3;
  s.fixed = {BigInt(2)};
  EXPECT_THROW(enumerate_polynomials(s), std::invalid_argument);
  s.fixed = {BigInt(1)};
  EXPECT_THROW(enumerate_polynomials(s), SearchSpaceError);  // no root bounds at all
}

TEST(Enumerate, NegativeVarianceIsEmpty) {
  EnumerationSpec s;
  s.degree = 3;
  s.fixed = {BigInt(1), BigInt(0), BigInt(5)};
  EXPECT_TRUE(enumerate_polynomials(s).empty());
}

TEST(Candidates, MatchFixtureAndAreDeterministic) {
  std::ifstream in(std::string(EIGENCERT_FIXTURE_DIR) + "/candidates.json");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto doc = nlohmann::json::parse(ss.str());
  std::vector<IntPoly> want;
  std::vector<IntPoly> basis = linear_factor_basis();
  for (const auto& c : doc.at("candidates")) {
    const auto f = FactoredPolynomial::parse(c.at("polynomial").get<std::string>());
    want.push_back(f.expand());
    for (const auto& x : f.factors())
      if (std::find(basis.begin(), basis.end(), x.poly) == basis.end()) basis.push_back(x.poly);
  }
  const auto a = candidate_charpolys(basis);
  const auto b = candidate_charpolys(basis);
  ASSERT_EQ(a.size(), 44u);
  std::vector<IntPoly> got;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].str(), b[i].str());
    got.push_back(a[i].expand());
    // Every candidate is (x+5)^42 (x-11)^6 phi with trace 0 and a_2 = -C(60,2).
    EXPECT_GE(a[i].multiplicity_of_root(BigInt(-5)), 42u);
    EXPECT_GE(a[i].multiplicity_of_root(BigInt(11)), 6u);
    EXPECT_EQ(got.back()[1], 0);
    EXPECT_EQ(got.back()[2], -1770);
  }
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST(Candidates, PhiIsType2AfterShift) {
  const IntPoly head = pow(IntPoly::linear(BigInt(-5)), 42) * pow(IntPoly::linear(BigInt(11)), 6);
  for (const auto& c : candidate_charpolys()) {
    const IntPoly phi = exact_divide(c.expand(), head);
    EXPECT_TRUE(type2_check(taylor_shift(phi, BigInt(-1)), Type2Mode::type2)) << c.str();
  }
}
