#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sattl/catalog.hpp"
#include "sattl/harness.hpp"
#include "sattl/parse.hpp"
#include "sattl/policy.hpp"

using namespace sattl;
using namespace sattl::harness;

TEST_CASE("formula family") {
  const auto atoms = default_atoms(2);
  CHECK(atoms[0].name() == "a");
  CHECK(atoms[1].name() == "b");
  const auto fam = formula_family(atoms);
  CHECK(fam.size() >= 200);
  std::set<std::string> distinct;
  for (const auto& f : fam) {
    CHECK(f.depth() <= 2);
    distinct.insert(format_formula(f));
  }
  CHECK(distinct.size() == fam.size());
  bool has_seq = false, has_choice = false;
  for (const auto& f : fam) {
    has_seq |= f.kind() == TemporalFormula::Kind::Seq;
    has_choice |= f.kind() == TemporalFormula::Kind::Choice;
  }
  CHECK(has_seq);
  CHECK(has_choice);
}

TEST_CASE("random generators respect their bounds") {
  const auto atoms = default_atoms(3);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 300; ++i) {
    const std::size_t d = static_cast<std::size_t>(i % 4);
    CHECK(random_formula(d, atoms, rng).depth() == d);
    CHECK(random_trace(atoms, 6, rng).size() <= 6);
    CHECK_FALSE(random_task(atoms, rng).goal.is_true());
  }
}

TEST_CASE("every suite passes at small scale") {
  FuzzOptions o;
  o.cases = 500;
  o.max_len = 4;
  for (const auto& name : suite_names()) {
    const auto r = run_suite(name, o);
    INFO(r.summary());
    CHECK(r.ok());
    CHECK(r.suite == name);
    CHECK(r.to_json().find("\"disagreements\":0") != std::string::npos);
  }
  CHECK_THROWS(run_suite("nope", o));
}

TEST_CASE("percentiles interpolate") {
  CHECK(percentile({1, 2, 3, 4, 5}, 50) == 3.0);
  CHECK(percentile({5, 1, 4, 2, 3}, 25) == 2.0);
  CHECK(percentile({0, 10}, 75) == 7.5);
  CHECK(percentile({7}, 90) == 7.0);
}

TEST_CASE("campaign output is reproducible") {
  const auto cat = grid::ObjectCatalog::build(0, grid::Mode::Minecraft);
  agents::OraclePolicy oracle_pol(cat);
  agents::RandomPolicy random_pol(grid::Mode::Minecraft);
  const auto dir = std::filesystem::temp_directory_path() / "sattl_campaign_test";
  std::filesystem::remove_all(dir);
  CampaignConfig cfg;
  cfg.eval.sizes = {5};
  cfg.eval.maps_per_size = 10;
  cfg.runs = 3;
  cfg.out = dir / "a";
  const auto rows = campaign_eval({&oracle_pol, &random_pol}, cat, cfg);
  cfg.out = dir / "b";
  const auto again = campaign_eval({&oracle_pol, &random_pol}, cat, cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].normalized == 100.0);
  CHECK(rows[0].p25 <= rows[0].p50);
  CHECK(rows[0].p50 <= rows[0].p75);
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  for (const char* f : {"episodes.csv", "summary.csv"}) {
    const auto a = slurp(dir / "a" / f);
    CHECK_FALSE(a.empty());
    CHECK(a == slurp(dir / "b" / f));
  }
  CHECK(again[1].mean == rows[1].mean);
  std::filesystem::remove_all(dir);
}
