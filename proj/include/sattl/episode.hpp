#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "sattl/env.hpp"
#include "sattl/policy.hpp"
#include "sattl/symbolic.hpp"

namespace sattl::agents {

/// What the agent is told about the current atomic task. The reward always
/// follows the true task.
enum class Feed : unsigned char { Reliable, Occluded, Deceptive };
const char* feed_name(Feed f) noexcept;
Feed parse_feed(std::string_view s);
AtomicTask fed_instruction(const AtomicTask& truth, Feed feed);

struct EpisodeResult {
  double ret = 0.0;
  std::int64_t units = 0;
  std::uint64_t steps = 0;
  std::uint64_t violations = 0;
  std::uint64_t completions = 0;
  sm::Outcome outcome = sm::Outcome::HorizonReached;
  bool satisfied() const noexcept { return outcome == sm::Outcome::Satisfied; }
};

/// Runs the policy on a fresh copy of the map until the symbolic module
/// reports completion or the horizon is hit. With `log`, writes one JSON
/// line per step.
EpisodeResult run_episode(Policy& policy, const grid::ObjectCatalog& catalog, const grid::GridMap& map,
                          const TemporalFormula& task, Feed feed, std::mt19937_64& rng, std::ostream* log = nullptr);

/// Where procedural episodes draw their task and map from.
struct EpisodeDraw {
  grid::Mode mode = grid::Mode::Minecraft;
  grid::Split split = grid::Split::Train;
  std::vector<grid::TaskCategory> categories{grid::kAllCategories.begin(), grid::kAllCategories.end()};
  std::optional<std::vector<int>> pool;  // restrict task atoms and distractors to these objects
  int distractor_min = 2, distractor_max = 6;
  std::optional<int> constraint_min, constraint_max;
  std::optional<std::uint64_t> horizon;
};

struct EpisodeSpec {
  TemporalFormula task;
  grid::GridMap map;
};

/// Deterministic in (draw, n, seed). Retries map generation with derived
/// seeds a few times before giving up with UnplaceableError.
EpisodeSpec make_episode(const grid::ObjectCatalog& catalog, const EpisodeDraw& draw, int n, std::uint64_t seed);

// splitmix64 step; used to derive per-episode seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace sattl::agents
