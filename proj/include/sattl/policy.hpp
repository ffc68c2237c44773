#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sattl/env.hpp"
#include "sattl/net.hpp"
#include "sattl/oracle.hpp"

namespace sattl::agents {

/// Acts on the current map and the instruction fed to it. Policies are
/// stateful across an episode; clone() gives an independent copy for
/// another worker.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual void begin_episode() {}
  virtual int act(const grid::GridMap& map, const AtomicTask& instruction, std::mt19937_64& rng) = 0;
  virtual std::unique_ptr<Policy> clone() const = 0;
};

// Uniform over the mode's actions.
class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(grid::Mode mode) : mode_(mode) {}
  std::string name() const override { return "random"; }
  int act(const grid::GridMap& map, const AtomicTask& instruction, std::mt19937_64& rng) override;
  std::unique_ptr<Policy> clone() const override { return std::make_unique<RandomPolicy>(*this); }

 private:
  grid::Mode mode_;
};

/// Follows plan_oracle for the fed instruction, replanning whenever the
/// instruction changes or the map drifts from the plan. Falls back to a
/// random action when the goal cannot be reached.
class OraclePolicy final : public Policy {
 public:
  explicit OraclePolicy(const grid::ObjectCatalog& catalog) : catalog_(&catalog) {}
  std::string name() const override { return "oracle"; }
  void begin_episode() override { plan_.reset(); }
  int act(const grid::GridMap& map, const AtomicTask& instruction, std::mt19937_64& rng) override;
  std::unique_ptr<Policy> clone() const override { return std::make_unique<OraclePolicy>(*this); }

 private:
  const grid::ObjectCatalog* catalog_;
  std::optional<Plan> plan_;
  std::optional<AtomicTask> planned_for_;
  std::size_t cursor_ = 0;
  std::uint64_t expected_step_ = 0;
  std::optional<std::pair<int, int>> expected_pos_;
};

class NetPolicy final : public Policy {
 public:
  NetPolicy(std::shared_ptr<const NetParams> params, const grid::ObjectCatalog& catalog, grid::FeatureSpec spec,
            bool greedy = false);
  std::string name() const override { return greedy_ ? "net-greedy" : "net"; }
  void begin_episode() override;
  int act(const grid::GridMap& map, const AtomicTask& instruction, std::mt19937_64& rng) override;
  std::unique_ptr<Policy> clone() const override { return std::make_unique<NetPolicy>(*this); }
  const StepCache& last() const noexcept { return cache_; }

 private:
  std::shared_ptr<const NetParams> params_;
  const grid::ObjectCatalog* catalog_;
  grid::FeatureSpec spec_;
  bool greedy_;
  std::vector<double> hidden_;
  StepCache cache_;
};

}  // namespace sattl::agents
