#include "eigencert/seidel.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace eigencert;
namespace fs = std::filesystem;

namespace {

Matrix<int> dense(std::initializer_list<std::initializer_list<int>> rows) {
  Matrix<int> m(rows.size(), rows.size(), 0);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (int v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

fs::path cached_classes() {
  return fs::path(EIGENCERT_TEST_CACHE) / "classes-n59-e7-seed20240601.txt";
}

}  // namespace

TEST(Charpoly, SmallMatrices) {
  EXPECT_EQ(charpoly(dense({{0, 1}, {1, 0}})), parse_poly("x^2-1"));
  const auto s = SeidelMatrix::from_matrix(dense({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  EXPECT_EQ(charpoly(s), parse_poly("x^3-3x-2"));
  EXPECT_EQ(charpoly(s), IntPoly::linear(BigInt(2)) * pow(IntPoly::linear(BigInt(-1)), 2));
}

TEST(Charpoly, Residues) {
  const auto s = SeidelMatrix::from_matrix(dense({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  EXPECT_EQ(charpoly_mod(s, 3), (Residues{1, 0, 5, 6}));
  for (unsigned e = 1; e <= 8; ++e) EXPECT_EQ(charpoly_mod(SeidelMatrix(1), e), (Residues{1, 0}));
}

TEST(Charpoly, ResiduesAgreeWithExactPolynomial) {
  std::mt19937_64 gen(7);
  for (int t = 0; t < 20; ++t) {
    const auto s = SeidelMatrix::random(9, gen);
    EXPECT_EQ(charpoly_mod(s, 7), reduce_residues(charpoly(s), 7));
  }
}

TEST(Charpoly, SwitchingPreservesSpectrum) {
  std::mt19937_64 gen(11);
  const auto s = SeidelMatrix::random(8, gen);
  EXPECT_EQ(charpoly(s.switched({1, -1, 1, 1, -1, -1, 1, 1})), charpoly(s));
}

TEST(Seidel, RejectsMalformedMatrices) {
  EXPECT_THROW(SeidelMatrix::from_matrix(dense({{1, 1}, {1, 0}})), std::invalid_argument);
  EXPECT_THROW(SeidelMatrix::from_matrix(dense({{0, 1}, {-1, 0}})), std::invalid_argument);
}

TEST(Classes, BoundValue) { EXPECT_EQ(congruence_class_bound(7), 2048u); }

TEST(Classes, ZeroBudget) {
  const auto s = build_congruence_classes(59, 7, 0, 1);
  EXPECT_EQ(s.size(), 0u);
  EXPECT_FALSE(s.saturated);
}

TEST(Classes, DeterministicAcrossThreadCounts) {
  const auto a = build_congruence_classes(59, 7, 200, 99, 1);
  const auto b = build_congruence_classes(59, 7, 200, 99, 3);
  EXPECT_EQ(format_classes(a), format_classes(b));
  EXPECT_FALSE(a.saturated);
}

TEST(Classes, CachedFileIsSaturated) {
  const auto s = read_classes(cached_classes().string());
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->size(), 2048u);
  EXPECT_TRUE(s->saturated);
  EXPECT_EQ(s->seed, 20240601u);
  EXPECT_EQ(s->n, 59u);
  EXPECT_EQ(s->e, 7u);
}

TEST(Classes, CorruptedFileIsRejected) {
  const fs::path dir = fs::temp_directory_path() / "eigencert-seidel-test";
  fs::create_directories(dir);
  const fs::path copy = dir / "classes.txt";
  fs::copy_file(cached_classes(), copy, fs::copy_options::overwrite_existing);
  fs::copy_file(cached_classes().string() + ".sha256", copy.string() + ".sha256", fs::copy_options::overwrite_existing);
  ASSERT_TRUE(read_classes(copy.string()).has_value());
  {
    std::fstream f(copy, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(-3, std::ios::end);
    f.put('9');
  }
  EXPECT_FALSE(read_classes(copy.string()).has_value());
  fs::remove_all(dir);
}

TEST(Classes, ParseRejectsBadHeader) {
  EXPECT_THROW(parse_classes("n=59 e=7 seed=1\n"), FormatError);
}

TEST(Bridge, RegularGraphSpectrum) {
  const auto s = FactoredPolynomial::parse("(x+5)^42*(x-11)^15*(x-15)^3");
  const auto g = graph_bridge(s, 60, 22, BridgeDirection::seidel_to_graph);
  EXPECT_EQ(g.expand(), FactoredPolynomial::parse("(x-22)*(x-2)^42*(x+6)^15*(x+8)^2").expand());
  EXPECT_EQ(graph_bridge(g, 60, 22, BridgeDirection::graph_to_seidel).expand(), s.expand());
}

TEST(Bridge, EigenvalueArithmetic) {
  // theta = -1 - 2 mu on the complement of the all-ones vector; 60-1-2k on it.
  const auto g = FactoredPolynomial::parse("(x-22)*(x-2)^42*(x+6)^15*(x+8)^2");
  const auto s = graph_bridge(g, 60, 22, BridgeDirection::graph_to_seidel);
  EXPECT_EQ(s.multiplicity_of_root(BigInt(-5)), 42u);
  EXPECT_EQ(s.multiplicity_of_root(BigInt(11)), 15u);
  EXPECT_EQ(s.multiplicity_of_root(BigInt(15)), 3u);
}

TEST(Trace, Contradictions) {
  auto a = trace_contradiction(32, {{BigInt(-5), 14}, {BigInt(11), 6}});
  EXPECT_EQ(a.forced, 1076);
  EXPECT_EQ(a.available, 992);
  EXPECT_TRUE(a.contradiction);
  auto b = trace_contradiction(27, {{BigInt(-5), 9}, {BigInt(13), 3}});
  EXPECT_EQ(b.forced, 732);
  EXPECT_EQ(b.available, 702);
  EXPECT_TRUE(b.contradiction);
  auto c = trace_contradiction(60, {{BigInt(-5), 42}, {BigInt(11), 15}, {BigInt(15), 3}});
  EXPECT_EQ(c.forced, 3540);
  EXPECT_EQ(c.available, 3540);
  EXPECT_FALSE(c.contradiction);
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
