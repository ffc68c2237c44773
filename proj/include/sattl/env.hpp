#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sattl/catalog.hpp"
#include "sattl/formula.hpp"

namespace sattl::grid {

enum class Dir : unsigned char { N, E, S, W };
const char* dir_name(Dir d) noexcept;

// Minecraft: Up, Down, Left, Right. MiniGrid: Forward, TurnLeft, TurnRight.
enum class McAction : int { Up = 0, Down = 1, Left = 2, Right = 3 };
enum class MgAction : int { Forward = 0, TurnLeft = 1, TurnRight = 2 };
int action_count(Mode m) noexcept;

inline constexpr int kEmpty = -1;

struct GridMap {
  Mode mode = Mode::Minecraft;
  int n = 0;
  std::vector<int> cells;  // row-major, object id or kEmpty
  int agent_row = 0;
  int agent_col = 0;
  std::optional<Dir> dir;  // MiniGrid only
  std::uint64_t steps = 0;
  std::uint64_t horizon = 0;
  std::uint64_t seed = 0;

  int at(int r, int c) const { return cells[static_cast<std::size_t>(r * n + c)]; }
  int& at(int r, int c) { return cells[static_cast<std::size_t>(r * n + c)]; }
  bool in_bounds(int r, int c) const noexcept { return r >= 0 && c >= 0 && r < n && c < n; }

  bool operator==(const GridMap&) const = default;
};

std::uint64_t default_horizon(int n) noexcept;

/// Map population. Counts left unset are drawn per map: 1-2 goal objects,
/// 1..max(2, n*n/12) constraint objects when the condition names atoms, and
/// 2-6 distractors from the split's pool.
struct MapConfig {
  Mode mode = Mode::Minecraft;
  int n = 7;
  Split split = Split::Train;
  TaskCategory category = TaskCategory::Reachability;
  int goal_min = 1, goal_max = 2;
  std::optional<int> constraint_min, constraint_max;
  int distractor_min = 2, distractor_max = 6;
  std::optional<std::uint64_t> horizon;
  std::uint64_t seed = 0;
  // Replaces the split/category pool for distractors when set.
  std::optional<std::vector<int>> distractor_pool;
};

/// Places goal, constraint and distractor objects plus the agent (on an
/// empty cell, random heading in MiniGrid). Every cell is traversable, so a
/// placed goal is always reachable. Throws UnplaceableError when the objects
/// do not fit or no cell other than the start can satisfy the goal.
GridMap generate_map(const MapConfig& cfg, const AtomicTask& task, const ObjectCatalog& catalog);

/// L_I: the atom of the occupied cell, if any.
LabelSet labelling(const GridMap& map, const ObjectCatalog& catalog);

/// Single-owner environment over one generated map.
class GridEnv {
 public:
  GridEnv(const ObjectCatalog& catalog, GridMap map);

  struct Step {
    LabelSet labels;
    bool done = false;  // horizon reached on this step
  };

  // Restores the generated map and zeroes the step counter.
  void reset();

  /// Applies one action (clipped at borders), labels the new state and adds
  /// "end" when the step counter reaches the horizon. Throws EpisodeDone
  /// once the horizon is reached or after finish().
  Step step(int action);

  // The symbolic module reports completion.
  void finish() noexcept { finished_ = true; }
  bool done() const noexcept { return finished_ || map_.steps >= map_.horizon; }

  const GridMap& state() const noexcept { return map_; }
  const GridMap& initial() const noexcept { return initial_; }
  const ObjectCatalog& catalog() const noexcept { return *catalog_; }

 private:
  const ObjectCatalog* catalog_;
  GridMap initial_;
  GridMap map_;
  bool finished_ = false;
};

// Pure transition used by the env and by the planners.
void apply_action(GridMap& map, int action);

/// One-hot object channels plus an agent channel and an off-map channel,
/// laid out [row][col][channel].
struct FeatureView {
  int rows = 0, cols = 0, channels = 0;
  std::vector<double> data;
  bool operator==(const FeatureView&) const = default;
};

struct FeatureSpec {
  enum class Frame : unsigned char {
    Allocentric,    // whole map, fixed orientation
    AgentCentered,  // square window centered on the agent, fixed orientation
    Egocentric,     // window ahead of the agent, agent at bottom center
  };
  Frame frame = Frame::AgentCentered;
  int window = 9;

  static FeatureSpec for_mode(Mode m, int max_train_n);
  int rows(int n) const noexcept { return frame == Frame::Allocentric ? n : window; }
};

FeatureView feature_view(const GridMap& map, const ObjectCatalog& catalog, const FeatureSpec& spec);
std::size_t feature_width(const ObjectCatalog& catalog, const FeatureSpec& spec, int n);

// Map coordinates of egocentric window cell (i, j) for a 7x7-style view.
std::pair<int, int> egocentric_cell(const GridMap& map, int window, int i, int j);

}  // namespace sattl::grid
