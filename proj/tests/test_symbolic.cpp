#include <doctest.h>

#include <json.hpp>
#include <random>

#include "sattl/errors.hpp"
#include "sattl/harness.hpp"
#include "sattl/parse.hpp"
#include "sattl/semantics.hpp"
#include "sattl/symbolic.hpp"

using namespace sattl;
using namespace sattl::sm;

namespace {

AtomicTask at(const char* s) { return parse_atomic(s); }
TemporalFormula A(const char* s) { return TemporalFormula::atomic(at(s)); }

Trace tr(std::initializer_list<std::initializer_list<const char*>> steps) {
  Trace t;
  for (const auto& s : steps) {
    LabelSet l;
    for (const char* a : s) l.insert(a);
    t.steps.push_back(l);
  }
  return t;
}

}  // namespace

TEST_CASE("extract examples") {
  const auto a1 = at("true U +a"), a2 = at("true U +b"), a3 = at("-c U +d");
  CHECK(extract(TemporalFormula::atomic(a1)) == TaskList{{a1}});
  CHECK(extract(TemporalFormula::seq(TemporalFormula::atomic(a1),
                                     TemporalFormula::choice(TemporalFormula::atomic(a2), TemporalFormula::atomic(a3)))) ==
        TaskList{{a1, a2}, {a1, a3}});
  CHECK(extract(TemporalFormula::choice(TemporalFormula::atomic(a1), TemporalFormula::atomic(a1))) == TaskList{{a1}});
}

TEST_CASE("fold_seq nests to the right") {
  const std::vector<AtomicTask> s{at("true U +a"), at("true U +b"), at("true U +c")};
  const auto f = fold_seq(s);
  REQUIRE(f.kind() == TemporalFormula::Kind::Seq);
  CHECK(f.left().is_atomic());
  CHECK(f.right().kind() == TemporalFormula::Kind::Seq);
  CHECK(extract(f) == TaskList{s});
}

TEST_CASE("reward examples") {
  const auto a = at("- grass U + axe");
  CHECK(reward_of({"axe"}, a).status == Status::GoalReached);
  CHECK(reward_of({"axe"}, a).reward() == 1.0);
  CHECK(reward_of({"grass"}, a).status == Status::Violation);
  CHECK(reward_of({"grass"}, a).reward() == -1.0);
  CHECK(reward_of({}, a).status == Status::Ongoing);
  CHECK(reward_of({}, a).reward() == -0.05);
  // goal first when both fire
  CHECK(reward_of({"axe"}, at("- axe U + axe")).status == Status::GoalReached);
}

TEST_CASE("sm_init examples") {
  const auto a1 = at("true U +a"), a2 = at("true U +b"), a3 = at("true U +c"), a4 = at("true U +d");
  auto s = sm_init(TemporalFormula::atomic(a1));
  CHECK(s.current == a1);
  CHECK(s.remaining == TaskList{{a1}});
  CHECK(sm_init(TemporalFormula::seq(TemporalFormula::atomic(a1), TemporalFormula::atomic(a2))).current == a1);
  auto c = TemporalFormula::choice(TemporalFormula::seq(TemporalFormula::atomic(a1), TemporalFormula::atomic(a2)),
                                   TemporalFormula::seq(TemporalFormula::atomic(a3), TemporalFormula::atomic(a4)));
  CHECK(sm_init(c).current == a1);
}

TEST_CASE("sm_step examples") {
  const auto a1 = at("true U +a"), a2 = at("true U +b"), a3 = at("true U +c");
  auto s = sm_init(TemporalFormula::seq(TemporalFormula::atomic(a1), TemporalFormula::atomic(a2)));
  auto r = sm_step(s, {"a"});
  CHECK(r.event.reward() == 1.0);
  CHECK(r.state.current == a2);
  CHECK_FALSE(r.state.done());

  auto one = sm_step(sm_init(TemporalFormula::atomic(a1)), {"a"});
  CHECK(one.state.outcome == Outcome::Satisfied);
  CHECK(one.event.reward() == 1.0);
  CHECK_THROWS_AS(sm_step(one.state, {}), StateDone);

  auto branch = sm_init(TemporalFormula::seq(TemporalFormula::atomic(a1),
                                             TemporalFormula::choice(TemporalFormula::atomic(a2), TemporalFormula::atomic(a3))));
  auto after = sm_step(branch, {"a"}).state;
  CHECK(after.remaining == TaskList{{a2}, {a3}});
  CHECK(after.current == a2);
}

TEST_CASE("completion discards sequences headed by other tasks") {
  const auto a1 = at("true U +a"), a2 = at("true U +b"), a3 = at("true U +c");
  auto f = TemporalFormula::choice(TemporalFormula::seq(TemporalFormula::atomic(a1), TemporalFormula::atomic(a2)),
                                   TemporalFormula::seq(TemporalFormula::atomic(a3), TemporalFormula::atomic(a2)));
  auto s = sm_step(sm_init(f), {"a"}).state;
  CHECK(s.remaining == TaskList{{a2}});
}

TEST_CASE("violations keep the current task") {
  const auto a = at("-g U +x");
  auto s = sm_step(sm_init(TemporalFormula::atomic(a)), {"g"}).state;
  CHECK(s.current == a);
  CHECK(s.violations == 1);
  CHECK(s.accounting_holds());
}

TEST_CASE("episode_return examples") {
  auto r1 = episode_return(tr({{}, {"axe"}}), A("true U + axe"));
  CHECK(r1.value == 0.95);
  CHECK(r1.outcome == Outcome::Satisfied);
  auto r2 = episode_return(tr({{"grass"}, {}, {"axe"}}), A("- grass U + axe"));
  CHECK(r2.value == -0.05);
  CHECK(r2.violations == 1);
  auto r3 = episode_return(tr({{}, {}}), A("true U + axe"));
  CHECK(r3.value == -0.1);
  CHECK(r3.outcome == Outcome::HorizonReached);
  // the replay stops at completion
  auto r4 = episode_return(tr({{"axe"}, {"grass"}}), A("- grass U + axe"));
  CHECK(r4.statuses.size() == 1);
}

TEST_CASE("reward stream agrees with the restart report") {
  std::mt19937_64 rng(21);
  const auto atoms = harness::default_atoms(3);
  for (int i = 0; i < 2000; ++i) {
    const auto task = harness::random_task(atoms, rng);
    const auto t = harness::random_trace(atoms, 10, rng);
    const auto ret = episode_return(t, TemporalFormula::atomic(task));
    const auto rep = satisfies_with_restarts(t, task);
    REQUIRE(ret.violations == rep.violation_count);
    REQUIRE((ret.outcome == Outcome::Satisfied) == rep.satisfied);
    if (rep.satisfied) {
      REQUIRE(ret.statuses.size() == *rep.completion_index + 1);
      CHECK(ret.statuses.back() == Status::GoalReached);
    }
  }
}

TEST_CASE("accounting identity holds after every step of fuzzed compound episodes") {
  std::mt19937_64 rng(8);
  const auto atoms = harness::default_atoms(3);
  for (int i = 0; i < 500; ++i) {
    const auto f = harness::random_formula(static_cast<std::size_t>(i % 3), atoms, rng);
    auto s = sm_init(f);
    const auto t = harness::random_trace(atoms, 12, rng);
    for (const auto& l : t.steps) {
      if (s.done()) break;
      auto r = sm_step(s, l);
      REQUIRE(r.state.accounting_holds());
      REQUIRE(r.state.reward_units - s.reward_units == r.event.units());
      // purity
      auto again = sm_step(s, l);
      REQUIRE(again.state.reward_units == r.state.reward_units);
      REQUIRE(again.state.remaining == r.state.remaining);
      s = std::move(r.state);
      if (!s.done()) {
        REQUIRE(!s.remaining.empty());
        CHECK(s.current == s.remaining.front().front());
      }
    }
  }
}

TEST_CASE("episode log line shape") {
  const auto line = episode_log_line(3, {"axe"}, RewardEvent{Status::GoalReached}, at("true U +axe"));
  const auto j = nlohmann::json::parse(line);
  CHECK(j.at("t") == 3);
  CHECK(j.at("labels") == nlohmann::json::array({"axe"}));
  CHECK(j.at("reward") == 1.0);
  CHECK(j.at("status") == "GoalReached");
  CHECK(j.at("current_task") == "true U + axe");
}
