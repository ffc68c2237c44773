#include "sattl/policy.hpp"

#include "sattl/errors.hpp"
#include "sattl/instruction.hpp"

namespace sattl::agents {

int RandomPolicy::act(const grid::GridMap&, const AtomicTask&, std::mt19937_64& rng) {
  return std::uniform_int_distribution<int>(0, grid::action_count(mode_) - 1)(rng);
}

int OraclePolicy::act(const grid::GridMap& map, const AtomicTask& instruction, std::mt19937_64& rng) {
  const bool stale = !plan_ || !planned_for_ || !(*planned_for_ == instruction) || cursor_ >= plan_->actions.size() ||
                     map.steps != expected_step_ ||
                     expected_pos_ != std::pair{map.agent_row, map.agent_col};
  if (stale) {
    planned_for_ = instruction;
    cursor_ = 0;
    try {
      plan_ = plan_oracle(map, instruction, *catalog_);
    } catch (const Unreachable&) {
      plan_ = Plan{};
    }
  }
  int a;
  if (cursor_ < plan_->actions.size()) {
    a = plan_->actions[cursor_++];
  } else {
    a = std::uniform_int_distribution<int>(0, grid::action_count(map.mode) - 1)(rng);
    plan_.reset();
  }
  grid::GridMap next = map;
  grid::apply_action(next, a);
  expected_step_ = map.steps + 1;
  expected_pos_ = std::pair{next.agent_row, next.agent_col};
  return a;
}

NetPolicy::NetPolicy(std::shared_ptr<const NetParams> params, const grid::ObjectCatalog& catalog,
                     grid::FeatureSpec spec, bool greedy)
    : params_(std::move(params)), catalog_(&catalog), spec_(spec), greedy_(greedy) {
  hidden_.assign(params_->config().recurrent, 0.0);
}

void NetPolicy::begin_episode() { std::fill(hidden_.begin(), hidden_.end(), 0.0); }

int NetPolicy::act(const grid::GridMap& map, const AtomicTask& instruction, std::mt19937_64& rng) {
  const auto fv = grid::feature_view(map, *catalog_, spec_);
  const auto iv = instruction_vec(instruction, *catalog_);
  net_forward_into(*params_, fv.data, iv, hidden_, cache_);
  hidden_ = cache_.h;
  return greedy_ ? argmax_action(cache_.probs) : sample_action(cache_.probs, rng);
}

}  // namespace sattl::agents
