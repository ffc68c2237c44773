#include "sattl/env.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sattl/errors.hpp"
#include "sattl/semantics.hpp"

namespace sattl::grid {

const char* dir_name(Dir d) noexcept {
  switch (d) {
    case Dir::N: return "N";
    case Dir::E: return "E";
    case Dir::S: return "S";
    case Dir::W: return "W";
  }
  return "?";
}

int action_count(Mode m) noexcept { return m == Mode::Minecraft ? 4 : 3; }

std::uint64_t default_horizon(int n) noexcept {
  return std::max<std::uint64_t>(100, 2 * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n));
}

namespace {

int draw(std::mt19937_64& rng, int lo, int hi) {
  if (hi < lo) std::swap(lo, hi);
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

int lookup(const ObjectCatalog& catalog, const Atom& a) {
  auto id = catalog.find(a.name());
  if (!id) throw ConfigError("task atom '" + a.name() + "' is not an object of the " + mode_name(catalog.mode()) +
                             " catalog");
  return *id;
}

}  // namespace

GridMap generate_map(const MapConfig& cfg, const AtomicTask& task, const ObjectCatalog& catalog) {
  if (cfg.n < 2) throw ConfigError("map size must be at least 2");
  if (cfg.mode != catalog.mode()) throw ConfigError("map mode does not match the catalog mode");
  std::mt19937_64 rng(cfg.seed);

  std::vector<int> goal_ids, cond_ids, task_ids;
  for (const auto& e : task.goal.entries()) {
    if (e.atom.is_end()) continue;
    const int id = lookup(catalog, e.atom);
    task_ids.push_back(id);
    if (e.sign == Sign::Positive) goal_ids.push_back(id);
  }
  for (const auto& e : task.cond.entries()) {
    if (e.atom.is_end()) continue;
    const int id = lookup(catalog, e.atom);
    task_ids.push_back(id);
    cond_ids.push_back(id);
  }

  const int cells = cfg.n * cfg.n;
  const int goals = goal_ids.empty() ? 0 : draw(rng, std::max(1, cfg.goal_min), std::max(1, cfg.goal_max));
  int constraints = 0;
  if (!cond_ids.empty()) {
    const int lo = cfg.constraint_min.value_or(1);
    const int hi = cfg.constraint_max.value_or(std::max(2, cells / 12));
    constraints = draw(rng, lo, hi);
  }
  std::vector<int> pool;
  for (int id : cfg.distractor_pool ? *cfg.distractor_pool : catalog.pool(cfg.split, cfg.category))
    if (std::find(task_ids.begin(), task_ids.end(), id) == task_ids.end()) pool.push_back(id);
  const int distractors = pool.empty() ? 0 : draw(rng, cfg.distractor_min, cfg.distractor_max);

  const int total = goals + constraints + distractors;
  if (total > cells - 1)
    throw UnplaceableError(std::to_string(total) + " objects do not fit in a " + std::to_string(cfg.n) + "x" +
                           std::to_string(cfg.n) + " map with an agent");

  GridMap map;
  map.mode = cfg.mode;
  map.n = cfg.n;
  map.cells.assign(static_cast<std::size_t>(cells), kEmpty);
  map.horizon = cfg.horizon.value_or(default_horizon(cfg.n));
  map.seed = cfg.seed;

  std::vector<int> order(static_cast<std::size_t>(cells));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t next = 0;
  auto place = [&](const std::vector<int>& from, int count) {
    for (int i = 0; i < count; ++i) {
      const int id = from[static_cast<std::size_t>(draw(rng, 0, static_cast<int>(from.size()) - 1))];
      map.cells[static_cast<std::size_t>(order[next++])] = id;
    }
  };
  place(goal_ids, goals);
  place(cond_ids, constraints);
  place(pool, distractors);

  const int start = order[static_cast<std::size_t>(draw(rng, static_cast<int>(next), cells - 1))];
  map.agent_row = start / cfg.n;
  map.agent_col = start % cfg.n;
  if (cfg.mode == Mode::MiniGrid) map.dir = static_cast<Dir>(draw(rng, 0, 3));

  bool solvable = false;
  for (int i = 0; i < cells && !solvable; ++i) {
    if (i == start) continue;
    LabelSet labels;
    if (map.cells[static_cast<std::size_t>(i)] != kEmpty) labels.insert(catalog.name(map.cells[static_cast<std::size_t>(i)]));
    solvable = literal_holds(task.goal, labels);
  }
  if (!solvable) throw UnplaceableError("no cell other than the start satisfies the goal literal");
  return map;
}

LabelSet labelling(const GridMap& map, const ObjectCatalog& catalog) {
  LabelSet out;
  const int id = map.at(map.agent_row, map.agent_col);
  if (id != kEmpty) out.insert(catalog.name(id));
  return out;
}

void apply_action(GridMap& map, int action) {
  if (action < 0 || action >= action_count(map.mode)) throw std::invalid_argument("action out of range");
  int r = map.agent_row, c = map.agent_col;
  if (map.mode == Mode::Minecraft) {
    switch (static_cast<McAction>(action)) {
      case McAction::Up: --r; break;
      case McAction::Down: ++r; break;
      case McAction::Left: --c; break;
      case McAction::Right: ++c; break;
    }
  } else {
    const int d = static_cast<int>(map.dir.value_or(Dir::N));
    switch (static_cast<MgAction>(action)) {
      case MgAction::TurnLeft: map.dir = static_cast<Dir>((d + 3) % 4); return;
      case MgAction::TurnRight: map.dir = static_cast<Dir>((d + 1) % 4); return;
      case MgAction::Forward:
        switch (static_cast<Dir>(d)) {
          case Dir::N: --r; break;
          case Dir::E: ++c; break;
          case Dir::S: ++r; break;
          case Dir::W: --c; break;
        }
        break;
    }
  }
  if (map.in_bounds(r, c)) {
    map.agent_row = r;
    map.agent_col = c;
  }
}

GridEnv::GridEnv(const ObjectCatalog& catalog, GridMap map)
    : catalog_(&catalog), initial_(std::move(map)), map_(initial_) {
  initial_.steps = 0;
  map_.steps = 0;
}

void GridEnv::reset() {
  map_ = initial_;
  finished_ = false;
}

GridEnv::Step GridEnv::step(int action) {
  if (done()) throw EpisodeDone("environment stepped after the episode finished");
  apply_action(map_, action);
  ++map_.steps;
  Step out;
  out.labels = labelling(map_, *catalog_);
  if (map_.steps >= map_.horizon) {
    out.labels.insert("end");
    out.done = true;
  }
  return out;
}

FeatureSpec FeatureSpec::for_mode(Mode m, int max_train_n) {
  if (m == Mode::MiniGrid) return {Frame::Egocentric, 7};
  return {Frame::AgentCentered, 2 * max_train_n - 1};
}

std::pair<int, int> egocentric_cell(const GridMap& map, int window, int i, int j) {
  const int fwd = window - 1 - i;
  const int lat = j - window / 2;
  const int r = map.agent_row, c = map.agent_col;
  switch (map.dir.value_or(Dir::N)) {
    case Dir::N: return {r - fwd, c + lat};
    case Dir::E: return {r + lat, c + fwd};
    case Dir::S: return {r + fwd, c - lat};
    case Dir::W: return {r - lat, c - fwd};
  }
  return {r, c};
}

std::size_t feature_width(const ObjectCatalog& catalog, const FeatureSpec& spec, int n) {
  const auto side = static_cast<std::size_t>(spec.rows(n));
  return side * side * static_cast<std::size_t>(catalog.object_count() + 2);
}

FeatureView feature_view(const GridMap& map, const ObjectCatalog& catalog, const FeatureSpec& spec) {
  FeatureView fv;
  fv.rows = fv.cols = spec.rows(map.n);
  fv.channels = catalog.object_count() + 2;
  const int agent_ch = catalog.object_count();
  const int off_ch = agent_ch + 1;
  fv.data.assign(static_cast<std::size_t>(fv.rows * fv.cols * fv.channels), 0.0);
  auto set = [&](int i, int j, int ch) {
    fv.data[static_cast<std::size_t>((i * fv.cols + j) * fv.channels + ch)] = 1.0;
  };
  for (int i = 0; i < fv.rows; ++i)
    for (int j = 0; j < fv.cols; ++j) {
      int r = i, c = j;
      switch (spec.frame) {
        case FeatureSpec::Frame::Allocentric:
          break;
        case FeatureSpec::Frame::AgentCentered:
          r = map.agent_row + i - fv.rows / 2;
          c = map.agent_col + j - fv.cols / 2;
          break;
        case FeatureSpec::Frame::Egocentric:
          std::tie(r, c) = egocentric_cell(map, fv.rows, i, j);
          break;
      }
      if (!map.in_bounds(r, c)) {
        set(i, j, off_ch);
        continue;
      }
      if (const int id = map.at(r, c); id != kEmpty) set(i, j, id);
      if (r == map.agent_row && c == map.agent_col) set(i, j, agent_ch);
    }
  return fv;
}

}  // namespace sattl::grid
