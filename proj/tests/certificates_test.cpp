#include "eigencert/certificates.hpp"

#include <gtest/gtest.h>

using namespace eigencert;

namespace {

const CongruenceClassSet& classes() {
  static const auto s = read_classes(std::string(EIGENCERT_TEST_CACHE) + "/classes-n59-e7-seed20240601.txt");
  if (!s) throw std::runtime_error("class cache missing");
  return *s;
}

Deck deck(const char* p) { return build_deck(FactoredPolynomial::parse(p), &classes()); }

std::vector<BigRat> rats(std::initializer_list<long> v) {
  std::vector<BigRat> out;
  for (long x : v) out.push_back(BigRat(x));
  return out;
}

std::size_t at(const Deck& d, const char* member) {
  const auto i = d.find(FactoredPolynomial::parse(member));
  if (!i) throw std::runtime_error(std::string("not in deck: ") + member);
  return *i;
}

constexpr const char* fourint = "(x+5)^42*(x-9)^3*(x-11)^6*(x-13)^9";
constexpr const char* ev17 = "(x+5)^42*(x-11)^14*(x-13)^3*(x-17)";
constexpr const char* quad = "(x+5)^42*(x-11)^10*(x-13)^6*(x^2-22x+109)";
constexpr const char* fiveint = "(x+5)^42*(x-9)^2*(x-11)^9*(x-13)^6*(x-15)";

}  // namespace

TEST(Deck, FourIntegerCandidate) {
  const Deck d = deck(fourint);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.e, 4);
  for (const auto& m : d.members) {
    EXPECT_TRUE(interlaces(m.member.expand(), d.base.expand())) << m.member.str();
    EXPECT_EQ(m.member.degree(), 59);
  }
  at(d, "(x+5)^41*(x-6)*(x-9)^2*(x-11)^7*(x-13)^8");
  at(d, "(x+5)^41*(x-9)^3*(x-11)^5*(x-13)^8*(x^2-19x+82)");
}

TEST(Deck, Sizes) {
  EXPECT_EQ(deck(ev17).size(), 3u);
  EXPECT_EQ(deck(fiveint).size(), 7u);
  EXPECT_EQ(deck(quad).size(), 11u);
}

TEST(Deck, OddMembersNeedSaturatedClasses) {
  EXPECT_THROW(build_deck(FactoredPolynomial::parse(fourint), nullptr), UnsaturatedClasses);
  CongruenceClassSet partial = build_congruence_classes(59, 7, 100, 1);
  EXPECT_THROW(build_deck(FactoredPolynomial::parse(fourint), &partial), UnsaturatedClasses);
}

TEST(Configurations, FourInteger) {
  const Deck d = deck(fourint);
  const auto c = solve_configurations(d);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(c[0].integral);
  std::vector<BigRat> n = c[0].n;
  std::sort(n.begin(), n.end());
  EXPECT_EQ(n, rats({28, 32}));
}

TEST(Configurations, QuadraticRestrictedIsFractional) {
  const Deck d = deck(quad);
  const std::size_t f1 = at(d, "(x+5)^41*(x-11)^9*(x-13)^5*(x^4-41x^3+609x^2-3871x+8886)");
  const auto prof = SpectrumProfile(d.base);
  std::vector<std::size_t> compat;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (seidel_compatible(prof, d.members[f1].quotient, d.members[i].quotient)) compat.push_back(i);
  ASSERT_EQ(compat.size(), 3u);
  const auto c = solve_configurations(d, compat);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_FALSE(c[0].integral);
  EXPECT_EQ(c[0].n[f1], BigRat(207) / 4);
}

TEST(Compatibility, SelfCompatible) {
  const Deck d = deck(quad);
  const SpectrumProfile prof(d.base);
  for (const auto& m : d.members) EXPECT_TRUE(seidel_compatible(prof, m.quotient, m.quotient));
}

TEST(Certificates, TabulatedEntries) {
  const Deck d39 = deck("(x+5)^42*(x-7)*(x-11)^9*(x-13)^8");
  Certificate c{CertificateKind::infeasibility, std::nullopt, rats({143620, 0, 0, 253})};
  EXPECT_TRUE(verify_certificate(d39, c).accepted);
  // Perturbing a coordinate breaks it.
  c.c[0] = -1;
  EXPECT_FALSE(verify_certificate(d39, c).accepted);

  const Deck d1 = deck("(x+5)^42*(x-11)^12*(x-13)^3*(x^3-39x^2+495x-2049)");
  Certificate c1{CertificateKind::infeasibility, std::nullopt, rats({0, 0, 0, 34294, 10143, 1812})};
  EXPECT_TRUE(verify_certificate(d1, c1).accepted);
  const auto found = find_certificate(d1, CertificateKind::infeasibility);
  ASSERT_TRUE(found.has_value());
  EXPECT_TRUE(verify_certificate(d1, *found).accepted);
}

TEST(Certificates, Warranty) {
  const Deck d = deck(fiveint);
  const std::size_t f1 = at(d, "(x+5)^41*(x-9)*(x-11)^8*(x-13)^5*(x^4-43x^3+673x^2-4529x+11026)");
  Certificate w{CertificateKind::warranty, f1, rats({45911387, 0, 0, 10146, 0})};
  EXPECT_TRUE(verify_certificate(d, w).accepted);
  // The same tuple warrants no other member.
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i == f1) continue;
    w.target = i;
    EXPECT_FALSE(verify_certificate(d, w).accepted) << i;
  }
}

TEST(Certificates, FeasibleDeckHasNoInfeasibilityCertificate) {
  // Every Seidel matrix spectrum is feasible: take the spectrum of J - I.
  const Deck d = build_deck(FactoredPolynomial::parse("(x+1)^4*(x-4)"), nullptr);
  EXPECT_FALSE(find_certificate(d, CertificateKind::infeasibility).has_value());
}

TEST(Extraction, FourIntegerContradiction) {
  const Deck d = deck(fourint);
  const auto v = extraction_pipeline(d, solve_configurations(d).at(0), BigInt(11), BigInt(-5));
  EXPECT_EQ(v.order, 32u);
  EXPECT_EQ(v.k, 28u);
  EXPECT_EQ(v.floor_multiplicity, 14u);
  EXPECT_EQ(v.multiplicity, 6u);
  EXPECT_TRUE(v.trace.contradiction);
}

TEST(Extraction, DegenerateSplitIsHarmless) {
  const Deck d = deck(fourint);
  InterlacingConfiguration none;
  none.n.assign(d.size(), BigRat(0));
  none.n[at(d, "(x+5)^41*(x-9)^3*(x-11)^5*(x-13)^8*(x^2-19x+82)")] = BigRat(60);
  const auto v = extraction_pipeline(d, none, BigInt(11), BigInt(-5));
  EXPECT_FALSE(v.trace.contradiction);
}

TEST(Quadratic, FieldArithmetic) {
  const auto r = QuadraticNumber(BigRat(1), BigRat(2), BigInt(3));  // 1 + 2 sqrt 3
  EXPECT_EQ(r * r, QuadraticNumber(BigRat(13), BigRat(4), BigInt(3)));
  EXPECT_EQ(r - r, QuadraticNumber::rational(BigRat(0)));
}
