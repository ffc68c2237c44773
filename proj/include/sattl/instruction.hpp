#pragma once

#include <vector>

#include "sattl/catalog.hpp"
#include "sattl/formula.hpp"

namespace sattl::agents {

/// Feature-level instruction channel: four multi-hot blocks over the catalog
/// object ids (cond-positive, cond-negative, goal-positive, goal-negative)
/// followed by one flag set when the condition is TRUE. Atoms outside the
/// catalog (such as "end") have no slot.
std::size_t instruction_width(const grid::ObjectCatalog& catalog) noexcept;
std::vector<double> instruction_vec(const AtomicTask& task, const grid::ObjectCatalog& catalog);

}  // namespace sattl::agents
