#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "sattl/catalog.hpp"
#include "sattl/errors.hpp"
#include "sattl/parse.hpp"
#include "sattl/task_gen.hpp"

using namespace sattl;
using namespace sattl::grid;
using namespace sattl::tasks;

namespace {

std::vector<int> ids_of(const AtomicTask& t, const ObjectCatalog& cat) {
  std::vector<int> out;
  for (const auto* l : {&t.cond, &t.goal})
    for (const auto& e : l->entries()) out.push_back(*cat.find(e.atom.name()));
  return out;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

TEST_CASE("sampled tasks match their template and split") {
  for (auto mode : {Mode::Minecraft, Mode::MiniGrid}) {
    const auto cat = ObjectCatalog::build(11, mode);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 4000; ++i) {
      const auto category = kAllCategories[static_cast<std::size_t>(i % 4)];
      const auto split = (i / 4) % 2 ? Split::Test : Split::Train;
      const auto t = sample_task(category, {split, mode}, cat, rng);
      REQUIRE(matches_category(t, category));
      const auto ids = ids_of(t, cat);
      auto sorted = ids;
      std::sort(sorted.begin(), sorted.end());
      REQUIRE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      const auto pool = cat.pool(split, category);
      for (int id : ids) REQUIRE(contains(pool, id));
      if (mode == Mode::Minecraft) {
        for (int id : ids) REQUIRE(contains(split == Split::Train ? cat.x2() : cat.x3(), id));
      } else if (split == Split::Test) {
        // out of distribution: colors and shapes outside the training pools
        const int which = category == TaskCategory::Reachability ? 1 : 3;
        for (int id : ids) {
          REQUIRE_FALSE(contains(cat.colors(which), ObjectCatalog::color_of(id)));
          REQUIRE_FALSE(contains(cat.shapes(which), ObjectCatalog::shape_of(id)));
        }
      }
    }
  }
}

TEST_CASE("sampling is seed-deterministic") {
  const auto cat = ObjectCatalog::build(1, Mode::Minecraft);
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 50; ++i)
    CHECK(sample_task(TaskCategory::PositiveCond, {}, cat, a) == sample_task(TaskCategory::PositiveCond, {}, cat, b));
}

TEST_CASE("template recognition") {
  CHECK(matches_category(parse_atomic("true U + a"), TaskCategory::Reachability));
  CHECK(matches_category(parse_atomic("true U (- a | - b)"), TaskCategory::NegReachability));
  CHECK(matches_category(parse_atomic("true U - a"), TaskCategory::NegReachability));
  CHECK(matches_category(parse_atomic("+ a U + b"), TaskCategory::PositiveCond));
  CHECK(matches_category(parse_atomic("(+ a | + b) U (+ c | + d)"), TaskCategory::PositiveCond));
  CHECK(matches_category(parse_atomic("- a U (+ b | + c)"), TaskCategory::NegativeCond));
  CHECK(matches_category(parse_atomic("- a U + b"), TaskCategory::NegativeCond));
  CHECK_FALSE(matches_category(parse_atomic("- a U + b"), TaskCategory::PositiveCond));
  CHECK_FALSE(matches_category(parse_atomic("+ a U - b"), TaskCategory::NegativeCond));
}

TEST_CASE("occlusion and deception") {
  const auto t = parse_atomic("- lava U + key");
  CHECK(occlude(t) == parse_atomic("true U + key"));
  CHECK(deceive(t) == parse_atomic("+ lava U + key"));
  const auto mixed = parse_atomic("(+ a | - b) U + c");
  CHECK(deceive(mixed) == parse_atomic("(- a | + b) U + c"));
  CHECK(deceive(deceive(mixed)) == mixed);
  const auto open = parse_atomic("true U + c");
  CHECK(deceive(open) == open);
  CHECK(occlude(open) == open);
}

TEST_CASE("pool too small") {
  const auto cat = ObjectCatalog::build(0, Mode::Minecraft);
  std::mt19937_64 rng(0);
  const std::vector<int> pool{0, 1, 2};
  CHECK_NOTHROW(sample_task_from(TaskCategory::Reachability, pool, cat, rng));
  bool thrown = false;
  for (int i = 0; i < 20 && !thrown; ++i) {
    try {
      sample_task_from(TaskCategory::PositiveCond, pool, cat, rng);
    } catch (const SplitTooSmall&) {
      thrown = true;
    }
  }
  CHECK(thrown);
  CHECK_THROWS_AS(sample_task(TaskCategory::Reachability, {Split::Train, Mode::MiniGrid}, cat, rng), ConfigError);
}

TEST_CASE("random compositions") {
  const auto cat = ObjectCatalog::build(0, Mode::Minecraft);
  std::mt19937_64 rng(9);
  for (int d = 1; d <= 3; ++d) {
    const auto f = compose_random(d, {}, cat, rng);
    CHECK(f.depth() == static_cast<std::size_t>(d));
    CHECK(format_formula(parse_formula(format_formula(f))) == format_formula(f));
  }
}

TEST_CASE("task list io") {
  std::vector<TaskLine> lines{{"true U + a", Split::Train}, {"(- b U + c) ; (true U + d)", Split::Test}};
  std::stringstream ss;
  write_task_list(ss, lines);
  const auto back = read_task_list(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0].formula == lines[0].formula);
  CHECK(back[1].split == Split::Test);
  std::istringstream bad("true U + a\n");
  CHECK_THROWS_AS(read_task_list(bad), ConfigError);
}
