#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "sattl/a2c.hpp"
#include "sattl/catalog.hpp"
#include "sattl/checkpoint.hpp"
#include "sattl/env.hpp"
#include "sattl/episode.hpp"
#include "sattl/errors.hpp"
#include "sattl/evaluate.hpp"
#include "sattl/instruction.hpp"
#include "sattl/net.hpp"
#include "sattl/oracle.hpp"
#include "sattl/parse.hpp"
#include "sattl/policy.hpp"

using namespace sattl;
using namespace sattl::agents;
using grid::Mode;

namespace {

grid::GridMap blank(int n, int r, int c, Mode mode = Mode::Minecraft) {
  grid::GridMap m;
  m.mode = mode;
  m.n = n;
  m.cells.assign(static_cast<std::size_t>(n * n), grid::kEmpty);
  m.agent_row = r;
  m.agent_col = c;
  if (mode == Mode::MiniGrid) m.dir = grid::Dir::E;
  m.horizon = grid::default_horizon(n);
  return m;
}

double entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double q : p) h -= q * std::log(q);
  return h;
}

}  // namespace

TEST_CASE("instruction encoding") {
  const auto cat = grid::ObjectCatalog::build(0, Mode::Minecraft);
  CHECK(instruction_width(cat) == 221);
  const auto v = instruction_vec(parse_atomic("- obj3 U (+ obj5 | - obj6)"), cat);
  CHECK(std::accumulate(v.begin(), v.end(), 0.0) == 3.0);
  CHECK(v[55 + 3] == 1.0);
  CHECK(v[110 + 5] == 1.0);
  CHECK(v[165 + 6] == 1.0);
  const auto open = instruction_vec(parse_atomic("true U + obj1 | + end"), cat);
  CHECK(open[220] == 1.0);
  CHECK(open[111] == 1.0);
  CHECK(std::accumulate(open.begin(), open.end(), 0.0) == 2.0);
}

TEST_CASE("random policy is uniform") {
  for (auto mode : {Mode::Minecraft, Mode::MiniGrid}) {
    RandomPolicy pol(mode);
    std::mt19937_64 rng(1);
    const auto m = blank(5, 2, 2, mode);
    const auto t = parse_atomic("true U + obj1");
    const int k = grid::action_count(mode);
    std::vector<int> counts(static_cast<std::size_t>(k));
    for (int i = 0; i < 10000; ++i) ++counts[static_cast<std::size_t>(pol.act(m, t, rng))];
    for (int c : counts) CHECK(std::abs(c / 10000.0 - 1.0 / k) < 0.02);
  }
}

TEST_CASE("oracle plans on hand-built maps") {
  const auto cat = grid::ObjectCatalog::build(0, Mode::Minecraft);
  auto m = blank(3, 0, 0);
  m.at(0, 2) = 5;
  auto plan = plan_oracle(m, parse_atomic("true U + obj5"), cat);
  CHECK(plan.reaches_goal);
  CHECK(plan.return_units == 19);
  CHECK(plan.expected_return == 0.95);
  CHECK(plan.actions.size() == 2);

  auto adj = blank(3, 0, 1);
  adj.at(0, 2) = 5;
  CHECK(plan_oracle(adj, parse_atomic("true U + obj5"), cat).expected_return == 1.0);

  // the direct route crosses a hazard; the detour costs two extra steps
  m.at(0, 1) = 7;
  plan = plan_oracle(m, parse_atomic("- obj7 U + obj5"), cat);
  CHECK(plan.return_units == 17);
  CHECK(plan.actions.size() == 4);
  // with no condition the hazard is just a cell
  CHECK(plan_oracle(m, parse_atomic("true U + obj5"), cat).return_units == 19);

  CHECK_THROWS_AS(plan_oracle(blank(3, 0, 0), parse_atomic("true U + obj5"), cat), Unreachable);
}

TEST_CASE("oracle agrees with exhaustive search on tiny maps") {
  for (auto mode : {Mode::Minecraft, Mode::MiniGrid}) {
    const auto cat = grid::ObjectCatalog::build(2, mode);
    int checked = 0;
    for (std::uint64_t s = 0; checked < 40; ++s) {
      EpisodeDraw draw;
      draw.mode = mode;
      draw.distractor_min = 0;
      draw.distractor_max = 3;
      draw.constraint_max = 3;
      draw.horizon = 5 + s % 3;
      EpisodeSpec ep = [&] {
        try {
          return make_episode(cat, draw, 3 + static_cast<int>(s % 2), s);
        } catch (const UnplaceableError&) {
          return EpisodeSpec{TemporalFormula::atomic(parse_atomic("true U +end")), blank(1, 0, 0, mode)};
        }
      }();
      if (ep.map.n < 3) continue;
      const auto& task = ep.task.task();
      const auto plan = plan_oracle(ep.map, task, cat);
      INFO(format_task(task), " seed ", s);
      CHECK(plan.return_units == oracle::best_return_units(cat, ep.map, task));
      CHECK(plan_by_induction(ep.map, task, cat).return_units == plan.return_units);
      ++checked;
    }
  }
}

TEST_CASE("oracle policy follows its plan") {
  const auto cat = grid::ObjectCatalog::build(0, Mode::Minecraft);
  auto m = blank(4, 0, 0);
  m.at(3, 3) = 5;
  m.at(1, 1) = 7;
  OraclePolicy pol(cat);
  std::mt19937_64 rng(0);
  const auto task = TemporalFormula::atomic(parse_atomic("- obj7 U + obj5"));
  const auto res = run_episode(pol, cat, m, task, Feed::Reliable, rng);
  CHECK(res.satisfied());
  CHECK(res.units == 15);
  CHECK(res.violations == 0);
}

TEST_CASE("net forward basics") {
  for (auto arch : {Architecture::LatentGoal, Architecture::Standard}) {
    auto cfg = oracle::small_config(arch, 1);
    const auto zero = NetParams::zeros(cfg);
    const std::vector<double> feat(cfg.feature_width, 0.5), instr(cfg.instruction_width, 1.0),
        h(cfg.recurrent, 0.0);
    const auto out = net_forward(zero, feat, instr, h);
    for (double p : out.probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(out.value == 0.0);

    std::mt19937_64 rng(3);
    const auto p = oracle::random_params(cfg, rng);
    const auto a = net_forward(p, feat, instr, h), b = net_forward(p, feat, instr, h);
    CHECK(a.probs == b.probs);
    CHECK(a.value == b.value);
    CHECK(a.hidden == b.hidden);
    CHECK(std::accumulate(a.probs.begin(), a.probs.end(), 0.0) == doctest::Approx(1.0));

    CHECK_THROWS_AS(net_forward(p, std::vector<double>(3), instr, h), DimensionMismatch);
    CHECK_THROWS_AS(net_forward(p, feat, instr, std::vector<double>(2)), DimensionMismatch);
  }
  auto cfg = oracle::small_config(Architecture::Standard, 0);
  CHECK(NetParams::zeros(cfg)[NetParams::BotW].size() == 0);
  cfg.recurrent = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  NetConfig wide;
  wide.bottleneck = 32;
  CHECK(wide.bottleneck_flagged());
}

TEST_CASE("state branch ignores the instruction") {
  const auto cfg = oracle::small_config(Architecture::LatentGoal, 0);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 200; ++i) {
    const auto p = oracle::random_params(cfg, rng);
    std::vector<double> feat(cfg.feature_width), i1(cfg.instruction_width), i2(cfg.instruction_width),
        h(cfg.recurrent);
    for (auto& v : feat) v = u(rng);
    for (auto& v : i1) v = u(rng);
    for (auto& v : i2) v = u(rng);
    for (auto& v : h) v = u(rng);
    StepCache c1, c2;
    net_forward_into(p, feat, i1, h, c1);
    net_forward_into(p, feat, i2, h, c2);
    REQUIRE(c1.s == c2.s);
    REQUIRE(c1.latent != c2.latent);
  }
}

TEST_CASE("gradients match finite differences") {
  for (auto arch : {Architecture::LatentGoal, Architecture::Standard}) {
    std::mt19937_64 rng(arch == Architecture::LatentGoal ? 11 : 12);
    for (int draw = 0; draw < 3; ++draw) {
      const auto cfg = oracle::small_config(arch, static_cast<std::uint64_t>(draw));
      const auto p = oracle::random_params(cfg, rng);
      const auto r = oracle::random_rollout(cfg, 4, rng);
      LossWeights w;
      w.entropy_weight = 0.05;
      const auto gc = oracle::check_gradients(p, r, w);
      INFO(architecture_name(arch), " draw ", draw);
      CHECK(gc.max_rel_error < 1e-4);
      CHECK(gc.checked == p.parameter_count());
    }
  }
}

TEST_CASE("zero advantage gives zero gradient") {
  const auto cfg = oracle::small_config(Architecture::LatentGoal, 0);
  const auto p = NetParams::zeros(cfg);
  std::mt19937_64 rng(1);
  auto r = oracle::random_rollout(cfg, 5, rng);
  for (auto& s : r.steps) s.reward = 0.0;
  r.bootstrap = 0.0;
  LossWeights w;
  w.entropy_weight = 0.0;
  auto g = NetParams::zeros(cfg);
  accumulate_gradients(p, oracle::to_rollout(p, r), w, 1.0, g);
  CHECK(global_norm(g) == 0.0);
}

TEST_CASE("entropy descent moves toward uniform") {
  const auto cfg = oracle::small_config(Architecture::Standard, 0);
  std::mt19937_64 rng(4);
  const auto p = oracle::random_params(cfg, rng, 1.5);
  auto r = oracle::random_rollout(cfg, 1, rng);
  // isolate the entropy term: the loss is linear in its weight
  LossWeights with{0.99, 0.5, 1.0}, without{0.99, 0.5, 0.0};
  auto g1 = NetParams::zeros(cfg), g0 = NetParams::zeros(cfg);
  const auto ro = oracle::to_rollout(p, r);
  accumulate_gradients(p, ro, with, 1.0, g1);
  accumulate_gradients(p, ro, without, 1.0, g0);
  auto q = p;
  for (std::size_t b = 0; b < NetParams::kBlocks; ++b) {
    const auto blk = static_cast<NetParams::Block>(b);
    for (std::size_t i = 0; i < q[blk].size(); ++i) q[blk].values[i] -= 1e-3 * (g1[blk].values[i] - g0[blk].values[i]);
  }
  const auto before = net_forward(p, r.steps[0].feature, r.steps[0].instr, r.h0);
  const auto after = net_forward(q, r.steps[0].feature, r.steps[0].instr, r.h0);
  CHECK(entropy(after.probs) > entropy(before.probs));
}

TEST_CASE("myopic value regression") {
  auto cfg = oracle::small_config(Architecture::LatentGoal, 0);
  cfg.feature_width = 4;
  cfg.instruction_width = 1;
  auto p = NetParams::init(cfg);
  auto sq = NetParams::zeros(cfg);
  const std::vector<double> target{0.3, -0.5, 0.8, 0.1};
  LossWeights w{0.0, 0.5, 0.0};
  std::mt19937_64 rng(0);
  const std::vector<double> h(cfg.recurrent, 0.0), instr{1.0};
  auto feature = [](std::size_t i) {
    std::vector<double> f(4, 0.0);
    f[i] = 1.0;
    return f;
  };
  for (int it = 0; it < 1500; ++it) {
    Rollout ro;
    for (std::size_t i = 0; i < 4; ++i) {
      RolloutStep st;
      net_forward_into(p, feature(i), instr, h, st.cache);
      st.action = sample_action(st.cache.probs, rng);
      st.reward = target[i];
      st.done = true;
      ro.steps.push_back(std::move(st));
    }
    auto g = NetParams::zeros(cfg);
    accumulate_gradients(p, ro, w, 0.25, g);
    rmsprop_step(p, g, sq, 3e-3, 0.99, 1e-5);
  }
  double mse = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double v = net_forward(p, feature(i), instr, h).value;
    mse += (v - target[i]) * (v - target[i]) / 4.0;
  }
  CHECK(mse < 0.01);
}

TEST_CASE("returns and action helpers") {
  Rollout r;
  r.steps.resize(3);
  r.steps[0].reward = 1.0;
  r.steps[1].reward = 0.0;
  r.steps[1].done = true;
  r.steps[2].reward = 2.0;
  r.bootstrap = 10.0;
  const auto R = rollout_returns(r, 0.5);
  CHECK(R == std::vector<double>{1.0, 0.0, 7.0});
  const std::vector<double> probs{0.1, 0.6, 0.3};
  CHECK(argmax_action(probs) == 1);
  std::mt19937_64 rng(0);
  std::vector<int> counts(3);
  for (int i = 0; i < 20000; ++i) ++counts[static_cast<std::size_t>(sample_action(probs, rng))];
  CHECK(counts[1] / 20000.0 == doctest::Approx(0.6).epsilon(0.05));
}

TEST_CASE("a2c is deterministic and emits one point per window") {
  const auto cat = grid::ObjectCatalog::build(0, Mode::Minecraft);
  EpisodeDraw draw;
  draw.categories = {grid::TaskCategory::Reachability};
  draw.pool = std::vector<int>(cat.x2().begin(), cat.x2().begin() + 3);
  NetConfig net;
  net.cm1_width = net.cm2_width = 16;
  net.recurrent = 16;
  TrainConfig cfg;
  cfg.envs = 4;
  cfg.total_steps = 3000;
  cfg.eval_interval = 1000;
  cfg.size_min = cfg.size_max = 5;
  cfg.seed = 3;
  const auto spec = grid::FeatureSpec::for_mode(Mode::Minecraft, 5);
  const auto a = a2c_train(cat, draw, spec, net, cfg);
  const auto b = a2c_train(cat, draw, spec, net, cfg);
  CHECK(a.curve.size() == 3);
  CHECK(*a.params == *b.params);
  CHECK(a.steps >= 3000);
  for (std::size_t i = 0; i < a.curve.size(); ++i) {
    CHECK(a.curve[i].step == 1000 * (i + 1));
    if (std::isnan(a.curve[i].mean_return)) continue;
    CHECK(a.curve[i].mean_return == b.curve[i].mean_return);
  }

  TrainConfig bad = cfg;
  bad.loss.gamma = 1.0;
  CHECK_THROWS_AS(a2c_train(cat, draw, spec, net, bad), ConfigError);
  const auto big = TrainConfig::long_run();
  CHECK(big.lr_at(0) == 8e-5);
  CHECK(big.lr_at(30'000'000) == 6e-5);
  CHECK(big.lr_at(60'000'000) == 4e-5);
}

TEST_CASE("checkpoint round trip") {
  const auto cfg = oracle::small_config(Architecture::LatentGoal, 5);
  std::mt19937_64 rng(5);
  const auto p = oracle::random_params(cfg, rng);
  std::stringstream ss;
  save_params(ss, p);
  const auto q = load_params(ss);
  CHECK(q == p);
  CHECK(q.config() == p.config());
  std::istringstream junk("{\"format\": \"other\"}");
  CHECK_THROWS(load_params(junk));
}

TEST_CASE("paired evaluation") {
  const auto cat = grid::ObjectCatalog::build(0, Mode::Minecraft);
  OraclePolicy oracle_pol(cat);
  RandomPolicy random_pol(Mode::Minecraft);
  EvalConfig cfg;
  cfg.sizes = {5, 7};
  cfg.maps_per_size = 30;
  cfg.seed = 4;
  const auto t1 = evaluate({&random_pol, &oracle_pol}, cat, cfg);
  cfg.workers = 3;
  const auto t2 = evaluate({&random_pol, &oracle_pol}, cat, cfg);
  REQUIRE(t1.rows.size() == 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t s = 0; s < 2; ++s) CHECK(t1.rows[r].sizes[s].returns == t2.rows[r].sizes[s].returns);
  const auto norm = t1.normalized();
  for (std::size_t s = 0; s < 2; ++s) {
    CHECK(norm[1][s] == 100.0);
    CHECK(norm[0][s] < 100.0);
    CHECK(t1.rows[0].sizes[s].mean < t1.rows[1].sizes[s].mean);
  }
  CHECK(normalized_score(-2.0, -1.0) == 0.0);
  CHECK(normalized_score(0.5, 1.0) == 50.0);
  CHECK(normalized_score(0.0, 0.0) == 100.0);
  std::ostringstream csv;
  t1.write_summary_csv(csv);
  CHECK(csv.str().rfind("policy,size,mean,sd,normalized\n", 0) == 0);
}

TEST_CASE("control experiment ordering with the oracle") {
  const auto cat = grid::ObjectCatalog::build(0, Mode::Minecraft);
  OraclePolicy pol(cat);
  ControlConfig cfg;
  cfg.n_tasks = 100;
  cfg.workers = 2;
  const auto t = control_experiment(pol, cat, cfg);
  CHECK(t.reliable > t.occluded);
  CHECK(t.occluded > t.deceptive);
  CHECK(t.reliable > t.random);
}
