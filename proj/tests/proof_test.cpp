#include "eigencert/proof.hpp"

#include <gtest/gtest.h>

using namespace eigencert;

namespace {

class ProofTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("eigencert-proof-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path shared = EIGENCERT_TEST_CACHE;
    for (const char* f : {"classes-n59-e7-seed20240601.txt", "classes-n59-e7-seed20240601.txt.sha256"})
      fs::copy_file(shared / f, dir / f);
    cfg.cache_dir = dir;
  }
  void TearDown() override { fs::remove_all(dir); }

  fs::path dir;
  RunConfig cfg;
};

const char* const tab39 = "(x+5)^42*(x-7)*(x-11)^9*(x-13)^8";

}  // namespace

TEST_F(ProofTest, FixturesLoad) {
  Workspace ws(cfg);
  EXPECT_EQ(ws.candidates().size(), 44u);
  EXPECT_EQ(ws.certificates().size(), 43u);
  std::map<std::string, unsigned> routes;
  for (const auto& c : ws.candidates()) ++routes[c.route];
  EXPECT_EQ(routes, ProofReport::expected_routes());
  EXPECT_EQ(ws.certificate("fiveint-warranty").kind, CertificateKind::warranty);
}

TEST_F(ProofTest, DeckCacheRoundTripAndRebuild) {
  const auto p = FactoredPolynomial::parse(tab39);
  std::string first;
  {
    Workspace ws(cfg);
    first = deck_members_digest(ws.deck(p));
  }
  const fs::path file = dir / "decks" / (short_digest(p.str()) + ".json");
  ASSERT_TRUE(fs::exists(file));
  const auto j = json::parse(read_file(file));
  EXPECT_EQ(j.at("base"), tab39);
  EXPECT_EQ(j.at("seed"), cfg.seed);
  EXPECT_EQ(j.at("e"), 4);
  EXPECT_EQ(j.at("members").size(), 2u);

  // Tamper with one quotient: the cache must be rejected and rebuilt.
  auto bad = j;
  bad["members"][0]["quotient"][1] = "12345";
  write_file(file, bad.dump());
  ASSERT_FALSE(deck_from_json(bad, p, sha256_hex(read_file(dir / "classes-n59-e7-seed20240601.txt"))).has_value());
  Workspace ws(cfg);
  EXPECT_EQ(deck_members_digest(ws.deck(p)), first);
  EXPECT_EQ(json::parse(read_file(file)), j);
}

TEST_F(ProofTest, ReportIsDeterministic) {
  Workspace a(cfg), b(cfg);
  const auto p = FactoredPolynomial::parse(tab39);
  const auto ra = eliminate(a, Selection::one, p);
  const auto rb = eliminate(b, Selection::one, p);
  EXPECT_EQ(ra.to_json(false), rb.to_json(false));
  EXPECT_EQ(ra.eliminated, 1u);
  EXPECT_FALSE(ra.proved());
  EXPECT_EQ(ra.to_json().at("seed"), cfg.seed);
}

TEST_F(ProofTest, LedgerRecordsFixtureAndSolver) {
  Workspace ws(cfg);
  eliminate(ws, Selection::one, FactoredPolynomial::parse(tab39));
  ws.write_ledger();
  const auto l = json::parse(read_file(dir / "certificates.json"));
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0].at("source"), "paper");
  EXPECT_EQ(l[1].at("source"), "solver");
  for (const auto& e : l) {
    EXPECT_EQ(e.at("verdict"), "accepted");
    EXPECT_EQ(e.at("kind"), "infeasibility");
    EXPECT_TRUE(e.at("tuple")[0].is_string());
  }
}

TEST_F(ProofTest, UnlistedPolynomialFallsBackToSearch) {
  Workspace ws(cfg);
  // The spectrum of J - I: realizable, so no certificate exists.
  const auto r = eliminate(ws, Selection::one, FactoredPolynomial::parse("(x+1)^4*(x-4)"));
  EXPECT_EQ(r.candidates, 1u);
  EXPECT_EQ(r.eliminated, 0u);
  ASSERT_NE(r.first_failure(), nullptr);
  EXPECT_EQ(r.first_failure()->id, "search");
}

TEST_F(ProofTest, BrokenCertificateIsReported) {
  const fs::path fx = dir / "fixtures";
  fs::create_directories(fx);
  fs::copy_file(fs::path(EIGENCERT_FIXTURE_DIR) / "candidates.json", fx / "candidates.json");
  auto certs = json::parse(read_file(fs::path(EIGENCERT_FIXTURE_DIR) / "certificates.json"));
  certs[0]["tuple"][3] = "-1";
  write_file(fx / "certificates.json", certs.dump());
  cfg.fixture_dir = fx;
  Workspace ws(cfg);
  const auto r = eliminate(ws, Selection::one, ws.candidates()[0].polynomial);
  EXPECT_FALSE(r.all_ok());
  ASSERT_NE(r.first_failure(), nullptr);
  EXPECT_EQ(r.first_failure()->id, "candidate-1/certificate");
  EXPECT_NE(r.to_text().find("first failing step: candidate-1/certificate"), std::string::npos);
}

TEST_F(ProofTest, LowBudgetIsABudgetFailure) {
  fs::remove(dir / "classes-n59-e7-seed20240601.txt");
  cfg.budget = 50;
  Workspace ws(cfg);
  EXPECT_THROW(ws.classes(), BudgetFailure);
}

TEST_F(ProofTest, ClassFileIsReusedAndByteIdentical) {
  const fs::path f = dir / "classes-n59-e7-seed20240601.txt";
  const std::string before = read_file(f);
  Workspace ws(cfg);
  EXPECT_EQ(ws.classes().size(), 2048u);
  EXPECT_EQ(format_classes(ws.classes()), before);
}
