#include "sattl/instruction.hpp"

namespace sattl::agents {

std::size_t instruction_width(const grid::ObjectCatalog& catalog) noexcept {
  return 4 * static_cast<std::size_t>(catalog.object_count()) + 1;
}

std::vector<double> instruction_vec(const AtomicTask& task, const grid::ObjectCatalog& catalog) {
  const auto k = static_cast<std::size_t>(catalog.object_count());
  std::vector<double> v(instruction_width(catalog), 0.0);
  auto mark = [&](const Literal& l, std::size_t pos_block, std::size_t neg_block) {
    for (const auto& e : l.entries()) {
      auto id = catalog.find(e.atom.name());
      if (!id) continue;
      v[(e.sign == Sign::Positive ? pos_block : neg_block) * k + static_cast<std::size_t>(*id)] = 1.0;
    }
  };
  mark(task.cond, 0, 1);
  mark(task.goal, 2, 3);
  if (task.cond.is_true()) v[4 * k] = 1.0;
  return v;
}

}  // namespace sattl::agents
