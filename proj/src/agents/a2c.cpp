#include "sattl/a2c.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "sattl/errors.hpp"
#include "sattl/instruction.hpp"
#include "sattl/kernels.hpp"

namespace sattl::agents {

TrainConfig TrainConfig::long_run() {
  TrainConfig c;
  c.lr = 8e-5;
  c.lr_steps = {{30'000'000, 6e-5}, {55'000'000, 4e-5}};
  c.envs = 102;
  c.total_steps = 70'000'000;
  c.eval_interval = 1'000'000;
  c.curriculum_steps = 10'000'000;
  return c;
}

double TrainConfig::lr_at(std::uint64_t step) const noexcept {
  double lr_now = lr;
  for (const auto& [from, v] : lr_steps)
    if (step >= from) lr_now = v;
  return lr_now;
}

void TrainConfig::validate() const {
  // gamma = 0 is allowed for myopic regression checks.
  if (loss.gamma < 0.0 || loss.gamma >= 1.0) throw ConfigError("gamma must be in [0, 1)");
  if (loss.value_weight < 0 || loss.entropy_weight < 0) throw ConfigError("loss weights must be non-negative");
  if (rollout == 0 || envs == 0) throw ConfigError("rollout length and env count must be positive");
  if (eval_interval == 0) throw ConfigError("eval interval must be positive");
  if (lr <= 0) throw ConfigError("learning rate must be positive");
  if (size_min < 2 || size_max < size_min) throw ConfigError("bad training size range");
  if (curriculum_p < 0 || curriculum_p > 1) throw ConfigError("curriculum probability must be in [0, 1]");
}

void rmsprop_step(NetParams& p, const NetParams& g, NetParams& sq, double lr, double decay, double eps) {
  const auto& k = kernels::active();
  auto pt = p.tensors();
  auto gt = g.tensors();
  auto st = sq.tensors();
  for (std::size_t i = 0; i < pt.size(); ++i)
    k.rmsprop(pt[i].values.data(), gt[i].values.data(), st[i].values.data(), pt[i].size(), lr, decay, eps);
}

namespace {

struct Slot {
  std::optional<grid::GridEnv> env;
  TemporalFormula task = TemporalFormula::atomic({Literal::truth(), Literal::pos("a")});
  sm::SmState sm = sm::sm_init(task);
  std::vector<double> hidden;
};

}  // namespace

TrainResult a2c_train(const grid::ObjectCatalog& catalog, const EpisodeDraw& draw, const grid::FeatureSpec& spec,
                      NetConfig net, const TrainConfig& cfg, const TrainProgress& progress) {
  cfg.validate();
  if (draw.mode != catalog.mode()) throw ConfigError("episode mode does not match the catalog");
  net.feature_width = grid::feature_width(catalog, spec, cfg.size_max);
  if (spec.frame == grid::FeatureSpec::Frame::Allocentric && cfg.size_min != cfg.size_max)
    throw ConfigError("allocentric features need a single training size");
  net.instruction_width = instruction_width(catalog);
  net.actions = static_cast<std::size_t>(grid::action_count(catalog.mode()));

  auto params = std::make_shared<NetParams>(NetParams::init(net));
  NetParams grads = NetParams::zeros(net);
  NetParams sq = NetParams::zeros(net);

  std::mt19937_64 rng(mix_seed(cfg.seed, 0x5eed));
  std::uint64_t steps = 0, episodes_started = 0;
  TrainResult result;
  const std::size_t windows = static_cast<std::size_t>(cfg.total_steps / cfg.eval_interval);
  std::vector<double> w_sum(windows, 0.0), w_sq(windows, 0.0);
  std::vector<std::size_t> w_n(windows, 0);
  std::size_t reported = 0;

  auto pick_size = [&]() {
    const std::uint64_t s = mix_seed(cfg.seed, 0x512e + episodes_started);
    std::mt19937_64 r(s);
    if (steps < cfg.curriculum_steps && std::uniform_real_distribution<double>(0, 1)(r) < cfg.curriculum_p)
      return cfg.curriculum_size;
    return std::uniform_int_distribution<int>(cfg.size_min, cfg.size_max)(r);
  };
  auto start = [&](Slot& s) {
    const int n = pick_size();
    EpisodeSpec ep = make_episode(catalog, draw, n, mix_seed(cfg.seed, episodes_started++));
    s.task = ep.task;
    s.env.emplace(catalog, std::move(ep.map));
    s.sm = sm::sm_init(s.task);
    s.hidden.assign(net.recurrent, 0.0);
  };

  std::vector<Slot> slots(cfg.envs);
  for (auto& s : slots) start(s);

  auto flush = [&](bool final) {
    while (reported < windows && (final || (reported + 1) * cfg.eval_interval <= steps)) {
      CurvePoint pt;
      pt.step = (reported + 1) * cfg.eval_interval;
      pt.episodes = w_n[reported];
      if (pt.episodes > 0) {
        pt.mean_return = w_sum[reported] / static_cast<double>(pt.episodes);
        pt.sd = std::sqrt(std::max(0.0, w_sq[reported] / static_cast<double>(pt.episodes) - pt.mean_return * pt.mean_return));
      } else {
        pt.mean_return = std::numeric_limits<double>::quiet_NaN();
      }
      result.curve.push_back(pt);
      if (progress) progress(pt);
      ++reported;
    }
  };

  Rollout ro;
  const double scale = 1.0 / static_cast<double>(cfg.envs * cfg.rollout);
  while (steps < cfg.total_steps) {
    grads.set_zero();
    for (auto& s : slots) {
      ro.steps.resize(cfg.rollout);
      std::size_t used = 0;
      for (; used < cfg.rollout; ++used) {
        RolloutStep& rs = ro.steps[used];
        const auto& map = s.env->state();
        const auto fv = grid::feature_view(map, catalog, spec);
        const auto iv = instruction_vec(fed_instruction(s.sm.current, cfg.feed), catalog);
        net_forward_into(*params, fv.data, iv, s.hidden, rs.cache);
        rs.action = sample_action(rs.cache.probs, rng);
        const auto st = s.env->step(rs.action);
        auto res = sm::sm_step(s.sm, st.labels);
        s.sm = std::move(res.state);
        if (!s.sm.done() && st.done) s.sm = sm::sm_close(std::move(s.sm));
        rs.reward = res.event.reward();
        rs.done = s.sm.done();
        ++steps;
        if (rs.done) {
          const std::size_t w = static_cast<std::size_t>((steps - 1) / cfg.eval_interval);
          if (w < windows) {
            const double r = s.sm.total_reward();
            w_sum[w] += r;
            w_sq[w] += r * r;
            ++w_n[w];
          }
          ++result.episodes;
          start(s);
        } else {
          s.hidden = rs.cache.h;
        }
      }
      ro.steps.resize(used);
      if (ro.steps.back().done) {
        ro.bootstrap = 0.0;
      } else {
        const auto fv = grid::feature_view(s.env->state(), catalog, spec);
        const auto iv = instruction_vec(fed_instruction(s.sm.current, cfg.feed), catalog);
        ro.bootstrap = net_forward(*params, fv.data, iv, s.hidden).value;
      }
      accumulate_gradients(*params, ro, cfg.loss, scale, grads);
    }
    if (cfg.max_grad_norm > 0) {
      const double norm = global_norm(grads);
      if (norm > cfg.max_grad_norm) {
        const double f = cfg.max_grad_norm / norm;
        for (auto& t : grads.tensors())
          for (auto& v : t.values) v *= f;
      }
    }
    rmsprop_step(*params, grads, sq, cfg.lr_at(steps), cfg.rms_decay, cfg.rms_eps);
    ++result.updates;
    flush(false);
  }
  flush(true);
  result.params = std::move(params);
  result.steps = steps;
  return result;
}

}  // namespace sattl::agents
