#include "eigencert/proof.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace eigencert;

namespace {

constexpr int exit_proved = 0;
constexpr int exit_failed = 1;
constexpr int exit_budget = 2;

struct Options {
  RunConfig cfg;
  fs::path fixtures;
  std::string candidate;
  bool table2 = false;
  bool all = false;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--seed", o.cfg.seed, "sampling seed")->capture_default_str();
  app->add_option("--budget", o.cfg.budget, "sample budget for the class file")->capture_default_str();
  app->add_option("--cache-dir", o.cfg.cache_dir, "artifact directory")->capture_default_str();
  app->add_option("--jobs", o.cfg.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--format", o.cfg.format, "report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app->add_option("--fixtures", o.fixtures, "fixture directory");
}

void emit(const ProofReport& r, const RunConfig& cfg) {
  if (cfg.format == "json")
    std::cout << r.to_json().dump(2) << "\n";
  else
    std::cout << r.to_text();
}

int cmd_classes(Workspace& ws) {
  const auto& s = ws.classes();
  const auto& cfg = ws.config();
  if (cfg.format == "json")
    std::cout << json{{"file", ws.classes_path().string()}, {"seed", s.seed},     {"count", s.size()},
                      {"samples", s.samples},             {"saturated", s.saturated}, {"sha256", ws.classes_digest()}}
                     .dump(2)
              << "\n";
  else
    std::cout << ws.classes_path().string() << ": " << s.size() << " classes from " << s.samples << " samples, seed "
              << s.seed << "\n";
  return exit_proved;
}

int cmd_candidates(Workspace& ws) {
  const auto chk = check_candidates(ws);
  if (ws.config().format == "json") {
    json list = json::array();
    for (const auto& p : chk.enumerated) list.push_back(p.str());
    std::cout << json{{"count", chk.enumerated.size()}, {"candidates", list}, {"missing", chk.missing}, {"extra", chk.extra}}
                     .dump(2)
              << "\n";
  } else {
    for (const auto& p : chk.enumerated) std::cout << p.str() << "\n";
    std::cout << chk.enumerated.size() << " candidates\n";
    for (const auto& m : chk.missing) std::cout << "missing from enumeration: " << m << "\n";
    for (const auto& m : chk.extra) std::cout << "not in fixture: " << m << "\n";
  }
  return chk.matches() ? exit_proved : exit_failed;
}

int finish(Workspace& ws, const ProofReport& r, bool need_proof) {
  ws.write_ledger();
  write_file(ws.config().cache_dir / "report.json", r.to_json().dump(2) + "\n");
  emit(r, ws.config());
  if (need_proof) return r.proved() ? exit_proved : exit_failed;
  return r.all_ok() && r.eliminated == r.candidates ? exit_proved : exit_failed;
}

int cmd_eliminate(Workspace& ws, const Options& o) {
  const int chosen = int(o.all) + int(o.table2) + int(!o.candidate.empty());
  if (chosen != 1) throw CLI::ValidationError("eliminate", "choose exactly one of --all, --table2, --candidate");
  if (o.all) return finish(ws, eliminate(ws, Selection::all), true);
  if (o.table2) return finish(ws, eliminate(ws, Selection::table), false);
  return finish(ws, eliminate(ws, Selection::one, FactoredPolynomial::parse(o.candidate)), false);
}

// Re-renders the stored report; runs the full replay when there is none.
int cmd_report(Workspace& ws) {
  const fs::path p = ws.config().cache_dir / "report.json";
  if (!fs::exists(p)) return finish(ws, eliminate(ws, Selection::all), true);
  const json j = json::parse(read_file(p));
  if (ws.config().format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& s : j.at("steps"))
      std::cout << (s.at("ok").get<bool>() ? "[ok]   " : "[FAIL] ") << s.at("id").get<std::string>() << "  "
                << s.at("verdict").get<std::string>() << "\n";
    std::cout << "overall: " << j.at("verdict").get<std::string>() << "\n";
  }
  return j.at("verdict") == "PROVED" ? exit_proved : exit_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replay the exact verification of the order-60 Seidel spectrum candidates"};
  app.require_subcommand(1);
  Options o;
  auto* classes = app.add_subcommand("classes", "sample and store the characteristic polynomial classes");
  auto* candidates = app.add_subcommand("candidates", "enumerate the candidate characteristic polynomials");
  auto* elim = app.add_subcommand("eliminate", "run elimination routes");
  auto* report = app.add_subcommand("report", "print the stored proof report");
  for (auto* c : {classes, candidates, elim, report}) add_common(c, o);
  elim->add_option("--candidate", o.candidate, "one candidate, as a factored polynomial");
  elim->add_flag("--table2", o.table2, "the 39 tabulated certificate candidates");
  elim->add_flag("--all", o.all, "every candidate");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_proved : exit_failed;
  }

  o.cfg.fixture_dir = o.fixtures;
  try {
    Workspace ws(o.cfg);
    if (*classes) return cmd_classes(ws);
    if (*candidates) return cmd_candidates(ws);
    if (*elim) return cmd_eliminate(ws, o);
    return cmd_report(ws);
  } catch (const BudgetFailure& e) {
    std::cerr << "warning: class set not saturated: " << e.what() << "\n";
    return exit_budget;
  } catch (const CLI::Error& e) {
    app.exit(e);
    return exit_failed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_failed;
  }
}
