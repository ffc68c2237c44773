#include "sattl/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <tuple>

#include "sattl/errors.hpp"
#include "sattl/symbolic.hpp"

namespace sattl::agents {
namespace {

using grid::GridMap;

bool mentions_end(const Literal& l) {
  return std::any_of(l.entries().begin(), l.entries().end(), [](const SignedAtom& e) { return e.atom.is_end(); });
}

// Compact state graph: state = cell * headings + heading.
struct Graph {
  int headings = 1;
  int actions = 0;
  int states = 0;
  std::vector<int> next;                 // [state * actions + a]
  std::vector<sm::Status> status;        // entering state, no "end"
  std::vector<sm::Status> status_end;    // entering state on the horizon step
  int start = 0;

  Graph(const GridMap& map, const AtomicTask& task, const grid::ObjectCatalog& catalog) {
    headings = map.mode == grid::Mode::MiniGrid ? 4 : 1;
    actions = grid::action_count(map.mode);
    states = map.n * map.n * headings;
    next.resize(static_cast<std::size_t>(states * actions));
    status.resize(static_cast<std::size_t>(states));
    status_end.resize(static_cast<std::size_t>(states));
    GridMap scratch = map;
    for (int s = 0; s < states; ++s) {
      const int cell = s / headings;
      scratch.agent_row = cell / map.n;
      scratch.agent_col = cell % map.n;
      if (headings == 4) scratch.dir = static_cast<grid::Dir>(s % 4);
      LabelSet labels = grid::labelling(scratch, catalog);
      status[static_cast<std::size_t>(s)] = sm::reward_of(labels, task).status;
      labels.insert("end");
      status_end[static_cast<std::size_t>(s)] = sm::reward_of(labels, task).status;
      for (int a = 0; a < actions; ++a) {
        GridMap m = scratch;
        grid::apply_action(m, a);
        next[static_cast<std::size_t>(s * actions + a)] = encode(m);
      }
    }
    start = encode(map);
  }

  int encode(const GridMap& m) const {
    const int cell = m.agent_row * m.n + m.agent_col;
    return headings == 4 ? cell * 4 + static_cast<int>(m.dir.value_or(grid::Dir::N)) : cell;
  }
};

std::int64_t step_cost(sm::Status s) { return s == sm::Status::Violation ? -sm::kViolationUnits : -sm::kStepUnits; }

Plan finish(Plan p) {
  p.expected_return = sm::units_to_reward(p.return_units);
  return p;
}

Plan induction(const Graph& g, std::uint64_t remaining) {
  const auto S = static_cast<std::size_t>(g.states);
  const auto A = static_cast<std::size_t>(g.actions);
  const auto T = static_cast<std::size_t>(remaining);
  std::vector<std::int64_t> value(S, 0), nxt(S, 0);
  std::vector<std::int8_t> choice(T * S, 0);
  std::vector<std::uint8_t> goal_at(T * S, 0);
  // value[s] after processing t = best return from step t in state s.
  for (std::size_t t = T; t-- > 0;) {
    const bool last = t + 1 == T;
    for (std::size_t s = 0; s < S; ++s) {
      std::int64_t best = std::numeric_limits<std::int64_t>::min();
      for (std::size_t a = 0; a < A; ++a) {
        const auto to = static_cast<std::size_t>(g.next[s * A + a]);
        const sm::Status st = last ? g.status_end[to] : g.status[to];
        std::int64_t v;
        if (st == sm::Status::GoalReached) {
          v = sm::kGoalUnits;
        } else {
          v = -step_cost(st) + (last ? 0 : value[to]);
        }
        if (v > best) {
          best = v;
          choice[t * S + s] = static_cast<std::int8_t>(a);
          goal_at[t * S + s] = st == sm::Status::GoalReached;
        }
      }
      nxt[s] = best;
    }
    std::swap(value, nxt);
  }
  Plan p;
  if (T == 0) return finish(p);
  p.return_units = value[static_cast<std::size_t>(g.start)];
  auto s = static_cast<std::size_t>(g.start);
  for (std::size_t t = 0; t < T; ++t) {
    const auto a = static_cast<std::size_t>(choice[t * S + s]);
    p.actions.push_back(static_cast<int>(a));
    if (goal_at[t * S + s]) {
      p.reaches_goal = true;
      break;
    }
    s = static_cast<std::size_t>(g.next[s * A + a]);
  }
  return finish(p);
}

}  // namespace

Plan plan_by_induction(const GridMap& map, const AtomicTask& task, const grid::ObjectCatalog& catalog) {
  Graph g(map, task, catalog);
  if (std::none_of(g.status.begin(), g.status.end(), [](sm::Status s) { return s == sm::Status::GoalReached; }) &&
      std::none_of(g.status_end.begin(), g.status_end.end(),
                   [](sm::Status s) { return s == sm::Status::GoalReached; }))
    throw Unreachable("no state satisfies the goal " + std::to_string(map.n) + "x" + std::to_string(map.n));
  const std::uint64_t remaining = map.horizon > map.steps ? map.horizon - map.steps : 0;
  return induction(g, remaining);
}

Plan plan_oracle(const GridMap& map, const AtomicTask& task, const grid::ObjectCatalog& catalog) {
  Graph g(map, task, catalog);
  const std::uint64_t remaining = map.horizon > map.steps ? map.horizon - map.steps : 0;
  const auto S = static_cast<std::size_t>(g.states);
  const auto A = static_cast<std::size_t>(g.actions);

  // Lexicographic (cost, steps) Dijkstra; goal transitions cost nothing and
  // end the search.
  using Key = std::tuple<std::int64_t, std::uint64_t, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> pq;
  std::vector<std::int64_t> cost(S, std::numeric_limits<std::int64_t>::max());
  std::vector<std::uint64_t> steps(S, 0);
  std::vector<int> parent(S, -1), via(S, -1);
  std::vector<std::uint8_t> closed(S, 0);
  cost[static_cast<std::size_t>(g.start)] = 0;
  pq.emplace(0, 0, g.start);
  int goal_from = -1, goal_action = -1;
  std::int64_t goal_cost = 0;
  std::uint64_t goal_steps = 0;
  while (!pq.empty()) {
    auto [c, k, s] = pq.top();
    pq.pop();
    const auto su = static_cast<std::size_t>(s);
    if (closed[su]) continue;
    closed[su] = 1;
    for (std::size_t a = 0; a < A && goal_from < 0; ++a) {
      if (g.status[static_cast<std::size_t>(g.next[su * A + a])] == sm::Status::GoalReached) {
        goal_from = s;
        goal_action = static_cast<int>(a);
        goal_cost = c;
        goal_steps = k + 1;
      }
    }
    if (goal_from >= 0) break;
    for (std::size_t a = 0; a < A; ++a) {
      const auto to = static_cast<std::size_t>(g.next[su * A + a]);
      if (closed[to]) continue;
      const std::int64_t nc = c + step_cost(g.status[to]);
      if (nc < cost[to] || (nc == cost[to] && k + 1 < steps[to])) {
        cost[to] = nc;
        steps[to] = k + 1;
        parent[to] = s;
        via[to] = static_cast<int>(a);
        pq.emplace(nc, k + 1, static_cast<int>(to));
      }
    }
  }
  if (goal_from < 0) {
    if (std::none_of(g.status_end.begin(), g.status_end.end(),
                     [](sm::Status s) { return s == sm::Status::GoalReached; }))
      throw Unreachable("goal cannot be reached on this map");
    return induction(g, remaining);
  }

  // Idling out the horizon costs at least one unit per step, so a goal path
  // that fits and costs at most 20 + remaining is optimal. "end" only shows
  // up on the last step, which matters only if the task names it.
  const bool end_matters = mentions_end(task.cond) || mentions_end(task.goal);
  const bool fits = goal_steps <= remaining;
  const bool beats_idling = goal_cost <= sm::kGoalUnits + static_cast<std::int64_t>(remaining);
  if (end_matters || !fits || !beats_idling) return induction(g, remaining);

  Plan p;
  p.reaches_goal = true;
  p.return_units = sm::kGoalUnits - goal_cost;
  p.actions.push_back(goal_action);
  for (int s = goal_from; s != g.start; s = parent[static_cast<std::size_t>(s)])
    p.actions.push_back(via[static_cast<std::size_t>(s)]);
  std::reverse(p.actions.begin(), p.actions.end());
  return finish(p);
}

}  // namespace sattl::agents
