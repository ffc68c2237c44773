// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any failed.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "sattl/a2c.hpp"
#include "sattl/catalog.hpp"
#include "sattl/episode.hpp"
#include "sattl/errors.hpp"
#include "sattl/evaluate.hpp"
#include "sattl/harness.hpp"
#include "sattl/ltlf.hpp"
#include "sattl/oracle.hpp"
#include "sattl/parse.hpp"
#include "sattl/policy.hpp"
#include "sattl/semantics.hpp"
#include "sattl/symbolic.hpp"
#include "sattl/task_gen.hpp"

using namespace sattl;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Every trace over the atoms with length 1..max_len (the empty trace is never satisfied and is included too).
std::vector<Trace> all_traces(std::span<const Atom> atoms, std::size_t max_len) {
  std::vector<LabelSet> sets;
  for (std::size_t m = 0; m < (1u << atoms.size()); ++m) {
    LabelSet s;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (m >> i & 1) s.insert(atoms[i].name());
    sets.push_back(s);
  }
  std::vector<Trace> out{Trace{}};
  std::vector<Trace> layer{Trace{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Trace> next;
    for (const auto& t : layer)
      for (const auto& s : sets) {
        Trace u = t;
        u.steps.push_back(s);
        next.push_back(u);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Verdict truth_preservation() {
  const auto t0 = Clock::now();
  const auto atoms = harness::default_atoms(2);
  const auto family = harness::formula_family(atoms);
  const auto traces = all_traces(atoms, 5);
  std::size_t bad = 0, depth_ok = 0;
  for (const auto& f : family) {
    depth_ok += f.depth() <= 2;
    const auto g = ltlf::translate(f);
    for (const auto& t : traces) bad += satisfies(t, f) != ltlf::eval_ltlf(g, t);
  }
  const double secs = seconds_since(t0);
  // 1364 non-empty traces plus the empty one
  const bool pass = bad == 0 && family.size() >= 200 && depth_ok == family.size() && traces.size() == 1365 && secs < 60;
  return {pass, fmt("%.0f formulas x %.0f traces, %.0f disagreements, %.2fs", static_cast<double>(family.size()),
                    static_cast<double>(traces.size() - 1), static_cast<double>(bad), secs)};
}

Verdict semantics_oracle() {
  const auto atoms = harness::default_atoms(3);
  std::mt19937_64 rng(2024);
  std::size_t bad = 0, cases = 0;
  for (; cases < 12000; ++cases) {
    const auto f = harness::random_formula(cases % 4, atoms, rng);
    const auto t = harness::random_trace(atoms, 8, rng);
    bad += satisfies(t, f) != satisfies_naive(t, f);
  }
  return {bad == 0, fmt("%.0f cases, %.0f disagreements", static_cast<double>(cases), static_cast<double>(bad))};
}

Verdict extractor_soundness() {
  const auto atoms = harness::default_atoms(2);
  const auto family = harness::formula_family(atoms);
  const auto traces = all_traces(atoms, 5);
  std::size_t bad = 0, cases = 0;
  for (const auto& f : family) {
    std::vector<TemporalFormula> seqs;
    for (const auto& s : sm::extract(f)) seqs.push_back(sm::fold_seq(s));
    for (const auto& t : traces) {
      const bool any = std::any_of(seqs.begin(), seqs.end(), [&](const TemporalFormula& g) { return satisfies(t, g); });
      bad += any != satisfies(t, f);
      ++cases;
    }
  }
  return {bad == 0, fmt("%.0f cases, %.0f disagreements", static_cast<double>(cases), static_cast<double>(bad))};
}

Verdict reward_accounting() {
  const auto atoms = harness::default_atoms(3);
  std::mt19937_64 rng(77);
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto task = harness::random_task(atoms, rng);
    const auto t = harness::random_trace(atoms, 12, rng);
    const auto rep = satisfies_with_restarts(t, task);
    // closed form in twentieths: +20 on completion, -20 per violation, -1 per other consumed instant
    const long consumed = rep.satisfied ? static_cast<long>(*rep.completion_index) + 1 : static_cast<long>(t.size());
    const long viol = static_cast<long>(rep.violation_count);
    const long units = (rep.satisfied ? 20 : 0) - 20 * viol - (consumed - viol - (rep.satisfied ? 1 : 0));
    const auto ret = sm::episode_return(t, TemporalFormula::atomic(task));
    bad += ret.units != units || ret.value != static_cast<double>(units) / 20.0;
  }
  return {bad == 0, fmt("1000 episodes, %.0f mismatches", static_cast<double>(bad))};
}

Verdict planner_optimality() {
  std::size_t bad = 0, maps = 0, end_tasks = 0;
  for (auto mode : {grid::Mode::Minecraft, grid::Mode::MiniGrid}) {
    const auto cat = grid::ObjectCatalog::build(3, mode);
    for (std::uint64_t s = 0; maps < (mode == grid::Mode::Minecraft ? 100u : 200u); ++s) {
      agents::EpisodeDraw draw;
      draw.mode = mode;
      draw.distractor_min = 0;
      draw.distractor_max = 3;
      draw.constraint_max = 4;
      draw.horizon = 4 + s % 5;
      agents::EpisodeSpec ep{TemporalFormula::atomic(parse_atomic("true U +end")), {}};
      try {
        ep = agents::make_episode(cat, draw, 3 + static_cast<int>(s % 2), s);
      } catch (const UnplaceableError&) {
        continue;
      }
      AtomicTask task = ep.task.task();
      if (s % 4 == 3) {
        // survive to the horizon, or get there through the goal
        std::vector<SignedAtom> g(task.goal.entries().begin(), task.goal.entries().end());
        g.push_back(SignedAtom::pos("end"));
        task.goal = Literal::any_of(g);
        ++end_tasks;
      }
      const auto plan = agents::plan_oracle(ep.map, task, cat);
      const auto best = oracle::best_return_units(cat, ep.map, task);
      if (plan.return_units != best) {
        ++bad;
        std::cerr << "planner mismatch: " << format_task(task) << " seed " << s << " plan " << plan.return_units
                  << " exhaustive " << best << '\n';
      }
      ++maps;
    }
  }
  return {bad == 0, fmt("%.0f maps (%.0f with end), %.0f mismatches", static_cast<double>(maps),
                        static_cast<double>(end_tasks), static_cast<double>(bad))};
}

Verdict gradient_check() {
  double worst = 0.0;
  for (auto arch : {agents::Architecture::Standard, agents::Architecture::LatentGoal}) {
    std::mt19937_64 rng(arch == agents::Architecture::Standard ? 101 : 202);
    for (int d = 0; d < 20; ++d) {
      const auto cfg = oracle::small_config(arch, static_cast<std::uint64_t>(d));
      const auto p = oracle::random_params(cfg, rng);
      const auto r = oracle::random_rollout(cfg, 5, rng);
      agents::LossWeights w;
      w.entropy_weight = 0.01;
      worst = std::max(worst, oracle::check_gradients(p, r, w).max_rel_error);
    }
  }
  return {worst < 1e-4, fmt("max relative error %.3g over 40 draws", worst)};
}

Verdict structural_invariance() {
  const auto cat = grid::ObjectCatalog::build(0, grid::Mode::Minecraft);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1, 1);
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    auto cfg = oracle::small_config(agents::Architecture::LatentGoal, static_cast<std::uint64_t>(i));
    cfg.instruction_width = 4 * static_cast<std::size_t>(cat.object_count()) + 1;
    const auto p = i % 2 ? oracle::random_params(cfg, rng) : agents::NetParams::init(cfg);
    std::vector<double> feat(cfg.feature_width), h(cfg.recurrent);
    for (auto& v : feat) v = u(rng);
    for (auto& v : h) v = u(rng);
    std::vector<double> i1(cfg.instruction_width), i2(cfg.instruction_width);
    for (auto& v : i1) v = std::bernoulli_distribution(0.05)(rng);
    for (auto& v : i2) v = u(rng);
    agents::StepCache c1, c2;
    agents::net_forward_into(p, feat, i1, h, c1);
    agents::net_forward_into(p, feat, i2, h, c2);
    bad += c1.s != c2.s;
  }
  return {bad == 0, fmt("1000 draws, %.0f differences", static_cast<double>(bad))};
}

Verdict desk_learning() {
  const auto t0 = Clock::now();
  const auto cat = grid::ObjectCatalog::build(0, grid::Mode::Minecraft);
  agents::EpisodeDraw draw;
  draw.categories = {grid::TaskCategory::Reachability};
  auto pool = cat.pool(grid::Split::Train, grid::TaskCategory::Reachability);
  pool.resize(3);
  draw.pool = pool;
  draw.distractor_min = draw.distractor_max = 2;
  agents::NetConfig net;  // latent-goal, b = 16
  net.seed = 1;
  agents::TrainConfig cfg;
  cfg.loss = {0.99, 0.5, 1e-3};
  cfg.total_steps = 200'000;
  cfg.eval_interval = 20'000;
  cfg.size_min = cfg.size_max = 5;
  cfg.seed = 1;
  const auto spec = grid::FeatureSpec::for_mode(grid::Mode::Minecraft, 5);
  const auto res = agents::a2c_train(cat, draw, spec, net, cfg);

  agents::EvalConfig ec;
  ec.sizes = {5};
  ec.maps_per_size = 200;
  ec.draw = draw;
  ec.seed = 0xe7a1;
  agents::NetPolicy learned(res.params, cat, spec);
  agents::RandomPolicy walker(grid::Mode::Minecraft);
  const auto t = agents::evaluate({&learned, &walker}, cat, ec);
  const double mean = t.rows[0].sizes[0].mean, rnd = t.rows[1].sizes[0].mean;
  const double secs = seconds_since(t0);
  return {mean >= 0.5 && mean - rnd >= 0.5 && secs < 900,
          fmt("eval mean %.3f, random %.3f, %.0f steps, %.1fs", mean, rnd, static_cast<double>(res.steps), secs)};
}

Verdict control_ordering() {
  const auto cat = grid::ObjectCatalog::build(0, grid::Mode::Minecraft);
  agents::OraclePolicy pol(cat);
  agents::ControlConfig cfg;
  cfg.n_tasks = 500;
  cfg.workers = 4;
  const auto t = agents::control_experiment(pol, cat, cfg);
  const bool pass = t.reliable - t.occluded >= 0.05 && t.occluded - t.deceptive >= 0.05;
  return {pass, fmt("reliable %.3f, occluded %.3f, deceptive %.3f, random %.3f", t.reliable, t.occluded, t.deceptive,
                    t.random)};
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

Verdict catalog_and_hygiene() {
  std::vector<std::string> broken;
  auto need = [&](bool ok, const char* what) {
    if (!ok) broken.push_back(what);
  };
  auto subset = [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::all_of(a.begin(), a.end(), [&](int x) { return contains(b, x); });
  };
  auto disjoint = [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::none_of(a.begin(), a.end(), [&](int x) { return contains(b, x); });
  };
  const auto mc = grid::ObjectCatalog::build(0, grid::Mode::Minecraft);
  need(mc.object_count() == 55, "|X|");
  need(mc.x1().size() == 35, "|X1|");
  need(mc.x2().size() == 20, "|X2|");
  need(mc.x3().size() == 20, "|X3|");
  need(subset(mc.x2(), mc.x1()), "X2 in X1");
  need(disjoint(mc.x1(), mc.x3()), "X1/X3 disjoint");
  need(mc.x1().size() + mc.x3().size() == 55, "X1 u X3 = X");
  const auto mg = grid::ObjectCatalog::build(0, grid::Mode::MiniGrid);
  need(mg.object_count() == 88, "|C x F|");
  need(mg.colors(1).size() == 8 && mg.colors(3).size() == 8, "|C1|,|C3|");
  need(mg.shapes(1).size() == 6 && mg.shapes(3).size() == 6, "|F1|,|F3|");
  need(mg.colors(1).size() + mg.colors(2).size() == 11 && disjoint(mg.colors(1), mg.colors(2)), "C1/C2 partition");
  need(mg.colors(3).size() + mg.colors(4).size() == 11 && disjoint(mg.colors(3), mg.colors(4)), "C3/C4 partition");
  need(mg.shapes(1).size() + mg.shapes(2).size() == 8 && disjoint(mg.shapes(1), mg.shapes(2)), "F1/F2 partition");
  need(mg.shapes(3).size() + mg.shapes(4).size() == 8 && disjoint(mg.shapes(3), mg.shapes(4)), "F3/F4 partition");
  need(subset(mg.colors(2), mg.colors(3)) && subset(mg.colors(4), mg.colors(1)), "C2 in C3, C4 in C1");
  need(subset(mg.shapes(2), mg.shapes(3)) && subset(mg.shapes(4), mg.shapes(1)), "F2 in F3, F4 in F1");

  std::size_t leaks = 0;
  std::mt19937_64 rng(10);
  for (int i = 0; i < 10000; ++i) {
    const auto mode = i % 2 ? grid::Mode::MiniGrid : grid::Mode::Minecraft;
    const auto& cat = i % 2 ? mg : mc;
    const auto split = (i / 2) % 2 ? grid::Split::Test : grid::Split::Train;
    const auto category = grid::kAllCategories[static_cast<std::size_t>((i / 4) % 4)];
    const auto task = tasks::sample_task(category, {split, mode}, cat, rng);
    for (const auto* l : {&task.cond, &task.goal})
      for (const auto& e : l->entries()) {
        const int id = *cat.find(e.atom.name());
        bool ok;
        if (mode == grid::Mode::Minecraft) {
          ok = contains(split == grid::Split::Train ? mc.x2() : mc.x3(), id);
        } else {
          const bool reach = category == grid::TaskCategory::Reachability;
          const int which = reach ? (split == grid::Split::Train ? 1 : 2) : (split == grid::Split::Train ? 3 : 4);
          ok = contains(mg.colors(which), grid::ObjectCatalog::color_of(id)) &&
               contains(mg.shapes(which), grid::ObjectCatalog::shape_of(id));
        }
        leaks += !ok;
      }
  }
  std::string detail = "10000 tasks, " + std::to_string(leaks) + " leaks";
  for (const auto& b : broken) detail += "; broken " + b;
  return {broken.empty() && leaks == 0, detail};
}

}  // namespace

int main(int argc, char** argv) {
  // optional: run a subset, e.g. `acceptance 1 5 9`
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::stoi(argv[i]));
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"truth preservation", truth_preservation},
      {"semantics vs naive oracle", semantics_oracle},
      {"extractor soundness", extractor_soundness},
      {"reward accounting", reward_accounting},
      {"planner optimality", planner_optimality},
      {"gradient check", gradient_check},
      {"latent-goal state branch invariance", structural_invariance},
      {"desk-scale learning", desk_learning},
      {"control experiment ordering", control_ordering},
      {"catalog and split hygiene", catalog_and_hygiene},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first << "): " << v.detail
              << std::endl;
  }
  return failed ? 1 : 0;
}
