#include "sattl/task_gen.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "sattl/errors.hpp"
#include "sattl/parse.hpp"

namespace sattl::tasks {

namespace {

std::vector<std::string> draw_distinct(const std::vector<int>& pool, std::size_t k, const grid::ObjectCatalog& catalog,
                                       std::mt19937_64& rng) {
  if (pool.size() < k)
    throw SplitTooSmall("split pool has " + std::to_string(pool.size()) + " objects, task needs " + std::to_string(k));
  std::vector<int> ids = pool;
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, ids.size() - 1);
    std::swap(ids[i], ids[pick(rng)]);
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(catalog.name(ids[i]));
  return out;
}

bool coin(std::mt19937_64& rng) { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; }

bool all_sign(const Literal& l, Sign s, std::size_t count) {
  if (l.is_true() || l.entries().size() != count) return false;
  return std::all_of(l.entries().begin(), l.entries().end(), [&](const SignedAtom& e) { return e.sign == s; });
}

}  // namespace

AtomicTask sample_task_from(TaskCategory category, const std::vector<int>& pool, const grid::ObjectCatalog& catalog,
                            std::mt19937_64& rng) {
  const bool alt = coin(rng);
  auto P = [](const std::string& n) { return SignedAtom::pos(n); };
  auto N = [](const std::string& n) { return SignedAtom::neg(n); };
  switch (category) {
    case TaskCategory::Reachability: {
      const auto a = draw_distinct(pool, 1, catalog, rng);
      return {Literal::truth(), Literal::pos(a[0])};
    }
    case TaskCategory::NegReachability: {
      if (alt) {
        const auto a = draw_distinct(pool, 2, catalog, rng);
        return {Literal::truth(), Literal::any_of({N(a[0]), N(a[1])})};
      }
      const auto a = draw_distinct(pool, 1, catalog, rng);
      return {Literal::truth(), Literal::neg(a[0])};
    }
    case TaskCategory::PositiveCond: {
      if (alt) {
        const auto a = draw_distinct(pool, 4, catalog, rng);
        return {Literal::any_of({P(a[0]), P(a[1])}), Literal::any_of({P(a[2]), P(a[3])})};
      }
      const auto a = draw_distinct(pool, 2, catalog, rng);
      return {Literal::pos(a[0]), Literal::pos(a[1])};
    }
    case TaskCategory::NegativeCond: {
      if (alt) {
        const auto a = draw_distinct(pool, 3, catalog, rng);
        return {Literal::neg(a[0]), Literal::any_of({P(a[1]), P(a[2])})};
      }
      const auto a = draw_distinct(pool, 2, catalog, rng);
      return {Literal::neg(a[0]), Literal::pos(a[1])};
    }
  }
  throw std::logic_error("unreachable");
}

AtomicTask sample_task(TaskCategory category, const SplitSpec& split, const grid::ObjectCatalog& catalog,
                       std::mt19937_64& rng) {
  if (split.mode != catalog.mode()) throw ConfigError("split mode does not match the catalog mode");
  return sample_task_from(category, catalog.pool(split.split, category), catalog, rng);
}

AtomicTask occlude(const AtomicTask& task) { return {Literal::truth(), task.goal}; }

AtomicTask deceive(const AtomicTask& task) {
  if (task.cond.is_true()) return task;
  std::vector<SignedAtom> flipped;
  for (const auto& e : task.cond.entries())
    flipped.push_back({e.sign == Sign::Positive ? Sign::Negative : Sign::Positive, e.atom});
  return {Literal::any_of(std::move(flipped)), task.goal};
}

bool matches_category(const AtomicTask& t, TaskCategory category) {
  switch (category) {
    case TaskCategory::Reachability:
      return t.cond.is_true() && all_sign(t.goal, Sign::Positive, 1);
    case TaskCategory::NegReachability:
      return t.cond.is_true() && (all_sign(t.goal, Sign::Negative, 1) || all_sign(t.goal, Sign::Negative, 2));
    case TaskCategory::PositiveCond:
      return (all_sign(t.cond, Sign::Positive, 1) && all_sign(t.goal, Sign::Positive, 1)) ||
             (all_sign(t.cond, Sign::Positive, 2) && all_sign(t.goal, Sign::Positive, 2));
    case TaskCategory::NegativeCond:
      return all_sign(t.cond, Sign::Negative, 1) &&
             (all_sign(t.goal, Sign::Positive, 1) || all_sign(t.goal, Sign::Positive, 2));
  }
  return false;
}

TemporalFormula compose_random(int depth, const SplitSpec& split, const grid::ObjectCatalog& catalog,
                               std::mt19937_64& rng) {
  if (depth <= 0) {
    const auto cat = grid::kAllCategories[std::uniform_int_distribution<std::size_t>(0, 3)(rng)];
    return TemporalFormula::atomic(sample_task(cat, split, catalog, rng));
  }
  // One side carries the full depth, the other is shallower.
  const int other = std::uniform_int_distribution<int>(0, depth - 1)(rng);
  const bool deep_left = coin(rng);
  auto a = compose_random(deep_left ? depth - 1 : other, split, catalog, rng);
  auto b = compose_random(deep_left ? other : depth - 1, split, catalog, rng);
  return coin(rng) ? TemporalFormula::seq(std::move(a), std::move(b))
                   : TemporalFormula::choice(std::move(a), std::move(b));
}

void write_task_list(std::ostream& os, const std::vector<TaskLine>& lines) {
  for (const auto& l : lines) os << l.formula << '\t' << grid::split_name(l.split) << '\n';
}

std::vector<TaskLine> read_task_list(std::istream& is) {
  std::vector<TaskLine> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw ConfigError("task list line lacks a tab-separated split tag");
    TaskLine tl{line.substr(0, tab), grid::parse_split(line.substr(tab + 1))};
    (void)parse_formula(tl.formula);
    out.push_back(std::move(tl));
  }
  return out;
}

}  // namespace sattl::tasks
