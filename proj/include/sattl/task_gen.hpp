#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "sattl/catalog.hpp"
#include "sattl/formula.hpp"

namespace sattl::tasks {

using grid::Split;
using grid::TaskCategory;

struct SplitSpec {
  Split split = Split::Train;
  grid::Mode mode = grid::Mode::Minecraft;
};

/// Draws one atomic task of the category; atoms are distinct and come from
/// the split's object pool. Templates (one picked uniformly):
///   reach      true U +p
///   neg-reach  true U (-p1 | -p2)   or  true U -p
///   pos-cond   +p1 U +p2            or  (+p1 | +p2) U (+p3 | +p4)
///   neg-cond   -p1 U (+p2 | +p3)    or  -p1 U +p2
AtomicTask sample_task(TaskCategory category, const SplitSpec& split, const grid::ObjectCatalog& catalog,
                       std::mt19937_64& rng);

// Same as sample_task but drawing atoms from an explicit pool.
AtomicTask sample_task_from(TaskCategory category, const std::vector<int>& pool, const grid::ObjectCatalog& catalog,
                            std::mt19937_64& rng);

/// Hides the safety condition: cond becomes TRUE, goal is kept.
AtomicTask occlude(const AtomicTask& task);

/// Flips every sign of the safety condition; TRUE stays TRUE.
AtomicTask deceive(const AtomicTask& task);

/// True when the task has the exact shape of one of the category templates.
bool matches_category(const AtomicTask& task, TaskCategory category);

/// Random Seq/Choice composition of sampled atomic tasks with the given depth.
TemporalFormula compose_random(int depth, const SplitSpec& split, const grid::ObjectCatalog& catalog,
                               std::mt19937_64& rng);

struct TaskLine {
  std::string formula;
  Split split = Split::Train;
};

// One formula per line followed by a tab and the split tag.
void write_task_list(std::ostream& os, const std::vector<TaskLine>& lines);
std::vector<TaskLine> read_task_list(std::istream& is);

}  // namespace sattl::tasks
