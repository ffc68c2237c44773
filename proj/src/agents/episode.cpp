#include "sattl/episode.hpp"

#include <ostream>

#include "sattl/errors.hpp"
#include "sattl/task_gen.hpp"

namespace sattl::agents {

const char* feed_name(Feed f) noexcept {
  switch (f) {
    case Feed::Reliable: return "reliable";
    case Feed::Occluded: return "occluded";
    case Feed::Deceptive: return "deceptive";
  }
  return "?";
}

Feed parse_feed(std::string_view s) {
  if (s == "reliable") return Feed::Reliable;
  if (s == "occluded") return Feed::Occluded;
  if (s == "deceptive") return Feed::Deceptive;
  throw ConfigError("unknown feed '" + std::string(s) + "'");
}

AtomicTask fed_instruction(const AtomicTask& truth, Feed feed) {
  switch (feed) {
    case Feed::Reliable: return truth;
    case Feed::Occluded: return tasks::occlude(truth);
    case Feed::Deceptive: return tasks::deceive(truth);
  }
  return truth;
}

EpisodeResult run_episode(Policy& policy, const grid::ObjectCatalog& catalog, const grid::GridMap& map,
                          const TemporalFormula& task, Feed feed, std::mt19937_64& rng, std::ostream* log) {
  grid::GridEnv env(catalog, map);
  sm::SmState state = sm::sm_init(task);
  policy.begin_episode();
  EpisodeResult out;
  while (!state.done()) {
    const AtomicTask shown = fed_instruction(state.current, feed);
    const int a = policy.act(env.state(), shown, rng);
    const auto step = env.step(a);
    const AtomicTask judged = state.current;
    auto res = sm::sm_step(state, step.labels);
    state = std::move(res.state);
    if (log) *log << sm::episode_log_line(out.steps, step.labels, res.event, judged) << '\n';
    ++out.steps;
    if (state.done()) {
      env.finish();
    } else if (step.done) {
      state = sm::sm_close(std::move(state));
    }
  }
  out.ret = state.total_reward();
  out.units = state.reward_units;
  out.violations = state.violations;
  out.completions = state.completions;
  out.outcome = state.outcome;
  return out;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

EpisodeSpec make_episode(const grid::ObjectCatalog& catalog, const EpisodeDraw& draw, int n, std::uint64_t seed) {
  if (draw.categories.empty()) throw ConfigError("no task categories to draw from");
  std::mt19937_64 rng(seed);
  const auto cat = draw.categories[std::uniform_int_distribution<std::size_t>(0, draw.categories.size() - 1)(rng)];
  const AtomicTask task = draw.pool ? tasks::sample_task_from(cat, *draw.pool, catalog, rng)
                                    : tasks::sample_task(cat, {draw.split, draw.mode}, catalog, rng);
  grid::MapConfig cfg;
  cfg.mode = draw.mode;
  cfg.n = n;
  cfg.split = draw.split;
  cfg.category = cat;
  cfg.distractor_min = draw.distractor_min;
  cfg.distractor_max = draw.distractor_max;
  cfg.constraint_min = draw.constraint_min;
  cfg.constraint_max = draw.constraint_max;
  cfg.horizon = draw.horizon;
  cfg.distractor_pool = draw.pool;
  for (std::uint64_t attempt = 0;; ++attempt) {
    cfg.seed = mix_seed(seed, attempt);
    try {
      return {TemporalFormula::atomic(task), grid::generate_map(cfg, task, catalog)};
    } catch (const UnplaceableError&) {
      if (attempt >= 15) throw;
    }
  }
}

}  // namespace sattl::agents
