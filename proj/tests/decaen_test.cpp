#include "eigencert/decaen.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace eigencert;
using namespace eigencert::decaen;

namespace {

using S = StructureElement;

S random_element(std::mt19937_64& gen) {
  std::uniform_int_distribution<long> d(-9, 9);
  auto p = [&] { return IntPoly{BigInt(d(gen)), BigInt(d(gen)), BigInt(d(gen))}; };
  return S{p(), p(), p(), p()};
}

}  // namespace

TEST(Algebra, ResolventIdentity) {
  EXPECT_TRUE(algebra_verify(x_minus_a() * claimed_resolvent(), S::scalar(minimal_polynomial())));
  EXPECT_EQ(resolvent_from_minimal_polynomial(), claimed_resolvent());
  EXPECT_EQ(minimal_polynomial(), parse_poly("x^4-10x^3-244x^2-536x+2112"));
}

TEST(Algebra, DisplayedReductions) {
  const S a = S::adjacency();
  EXPECT_EQ(a * a * a, cpoly(28) * a - cpoly(48) * S::identity() + cpoly(172) * S::all_ones() - cpoly(12) * S::blocks());
  EXPECT_EQ(a * S::blocks(), cpoly(10) * S::all_ones() - cpoly(8) * S::blocks());
}

TEST(Algebra, AssociativeAndCommutative) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 25; ++t) {
    const S x = random_element(gen), y = random_element(gen), z = random_element(gen);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ(x * (y + z), x * y + x * z);
  }
}

TEST(Algebra, ProjectionM) {
  const S m = projection_m();
  EXPECT_EQ(m, cpoly(3) * S::blocks() - S::all_ones());
  EXPECT_EQ(m * m, cpoly(60) * m);
  EXPECT_EQ(m * S::all_ones(), S{});
}

TEST(Quotient, MatrixAndItsMinimalPolynomial) {
  const auto q = quotient_matrix_solve();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(q[i][j], i == j ? 2 : 10);
  // B has eigenvalues 22, -8, -8: (B - 22)(B + 8) = 0.
  Matrix3 shifted_a = q, shifted_b = q;
  for (int i = 0; i < 3; ++i) {
    shifted_a[i][i] -= 22;
    shifted_b[i][i] += 8;
  }
  const auto prod = mul(shifted_a, shifted_b);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(prod[i][j], 0);
}

TEST(ConditionI, FiveSquaresMatchClosedForm) {
  const auto v = subgraph_condition_I(five_squares(), 0);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.x6_valuation, 5u);
  EXPECT_EQ(v.numerator, closed_form_condition_I({4, 4, 4, 4, 4}));
}

TEST(ConditionI, FourFiveCyclesFail) {
  const auto v = subgraph_condition_I(cycle_union({5, 5, 5, 5}), 0);
  EXPECT_FALSE(v.pass);
  EXPECT_EQ(v.x6_valuation, 4u);
}

TEST(ConditionI, TrianglesPassButOmegaKillsThem) {
  const std::vector<unsigned> l{3, 3, 3, 3, 4, 4};
  EXPECT_TRUE(subgraph_condition_I(cycle_union(l), 0).pass);
  EXPECT_FALSE(omega_can_vanish(l));
}

TEST(ConditionI, OnlyFiveSquaresSurvive) {
  EXPECT_EQ(cycle_partitions(20).size(), 49u);
  EXPECT_EQ(cycle_partition_survivors(), (std::vector<std::vector<unsigned>>{{4, 4, 4, 4, 4}}));
}

TEST(Omega, Values) {
  EXPECT_EQ(omega_minus6({4, 4, 4, 4, 4}, {2, 2, 2, 2, 2}), 0);
  EXPECT_EQ(omega_minus6({4, 4, 4, 4, 4}, {4, 4, 2, 0, 0}), -4);
  // An odd cycle would need half-integral counts.
  EXPECT_FALSE(omega_can_vanish({5, 5, 5, 5}));
}

TEST(Neighbourhoods, CountAndShape) {
  const auto all = neighborhood_enumerate();
  EXPECT_EQ(all.size(), binomial(5, 2) * 4 * 64);
  EXPECT_EQ(all.size(), 2560u);
  const auto x = five_squares();
  for (const auto& v : all) {
    ASSERT_TRUE(valid_neighborhood(v));
    ASSERT_TRUE(induces_three_edges_four_points(x, v.mask));
  }
  EXPECT_EQ(all.front().mask, default_anchor());
}

TEST(Neighbourhoods, AllGiveTheFigureGraph) {
  const auto all = neighborhood_enumerate();
  const auto fig = figure_graph();
  for (std::size_t i = 0; i < all.size(); i += 37) EXPECT_TRUE(isomorphic(attach(five_squares(), all[i].mask), fig)) << i;
  EXPECT_FALSE(isomorphic(attach(five_squares(), all[0].mask), cycle_union({4, 4, 4, 4, 5})));
}

TEST(ConditionII, SingleVertex) {
  const auto s = condition_II_single();
  EXPECT_EQ(s.alpha, 28);
  EXPECT_EQ(s.beta, 6);
  std::vector<Bivariate> basis;
  for (const auto& e : s.equations) basis.push_back(to_bivariate(e));
  EXPECT_TRUE(in_span(basis, to_bivariate({16, -4, 424})));
  EXPECT_TRUE(in_span(basis, to_bivariate({132, 48, 3984})));
  EXPECT_FALSE(in_span(basis, to_bivariate({1, 0, 0})));
}

TEST(ConditionII, Pairs) {
  const auto p = condition_II_pair();
  EXPECT_TRUE(p.factorization_matches);
  EXPECT_TRUE(p.line_proved);
  EXPECT_EQ(normalized(p.line), normalized(LinearEquation{4, 1, 30}));
  EXPECT_EQ(p.pairs, (std::vector<std::pair<unsigned, unsigned>>{{4, 14}, {5, 10}, {6, 6}}));
}

TEST(Gu, SizeValidityAndSymmetry) {
  const auto g = build_Gu(default_anchor());
  ASSERT_EQ(g.size(), 454u);
  const auto x = five_squares();
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_TRUE(valid_neighborhood(make_neighborhood(x, g.vertices[i])));
    EXPECT_FALSE(g.edge(i, i));
    for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(g.edge(i, j), g.edge(j, i));
  }
}

TEST(Gu, FileRoundTrip) {
  const auto g = build_Gu(default_anchor());
  const std::string text = format_gu(g);
  EXPECT_EQ(text.rfind("anchor=", 0), 0u);
  EXPECT_NE(text.find(" n=454\n"), std::string::npos);
  const auto back = parse_gu(text);
  EXPECT_EQ(back.anchor, g.anchor);
  EXPECT_EQ(back.adj, g.adj);
  EXPECT_EQ(format_gu(back), text);
}

TEST(Clique, CompleteGraph) {
  const std::size_t n = 10;
  std::vector<std::vector<std::uint64_t>> adj(n, std::vector<std::uint64_t>(1, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) adj[i][0] |= std::uint64_t(1) << j;
  const auto r = max_clique(adj, n);
  EXPECT_EQ(r.size, 10u);
  EXPECT_EQ(r.witness.size(), 10u);
  EXPECT_EQ(max_clique(adj, n, 9).reaches, true);
  EXPECT_EQ(max_clique(adj, n, 11).reaches, false);
}

TEST(Clique, GuHasNoNineClique) {
  const auto g = build_Gu(default_anchor());
  const auto r = max_clique(g, 9);
  ASSERT_TRUE(r.reaches.has_value());
  EXPECT_FALSE(*r.reaches);
  const auto exact = max_clique(g);
  EXPECT_LE(exact.size, 7u);
  EXPECT_EQ(exact.size, 7u);
  EXPECT_EQ(g.edges(), 18540u);
  for (auto a : exact.witness)
    for (auto b : exact.witness) {
      if (a != b) {
        EXPECT_TRUE(g.edge(a, b));
      }
    }
}

TEST(Clique, InvariantUnderRelabelling) {
  const auto g = build_Gu(default_anchor());
  const std::size_t n = g.size();
  const auto base = max_clique(g).size;
  std::mt19937_64 gen(3);
  for (int t = 0; t < 2; ++t) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<std::vector<std::uint64_t>> adj(n, std::vector<std::uint64_t>((n + 63) / 64, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (g.edge(i, j)) adj[perm[i]][perm[j] / 64] |= std::uint64_t(1) << (perm[j] % 64);
    EXPECT_EQ(max_clique(adj, n).size, base);
  }
}

TEST(Clique, AnchorIndependence) {
  const auto all = neighborhood_enumerate();
  const auto ref = invariant_vector(build_Gu(default_anchor()));
  for (std::size_t i : {std::size_t(1), std::size_t(640), std::size_t(2559)})
    EXPECT_EQ(invariant_vector(build_Gu(all[i].mask)), ref) << i;
}
