// sattl: command-line front end for the toolkit and the gridworld testbed.
#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>

#include "sattl/a2c.hpp"
#include "sattl/checkpoint.hpp"
#include "sattl/errors.hpp"
#include "sattl/evaluate.hpp"
#include "sattl/harness.hpp"
#include "sattl/instruction.hpp"
#include "sattl/kernels.hpp"
#include "sattl/ltlf.hpp"
#include "sattl/parse.hpp"
#include "sattl/render.hpp"
#include "sattl/semantics.hpp"
#include "sattl/snapshot.hpp"
#include "sattl/symbolic.hpp"
#include "sattl/task_gen.hpp"
#include "sattl/trace_io.hpp"

using namespace sattl;
using nlohmann::json;

namespace {

// Failure that should exit nonzero without being an error (e.g. a fuzz
// disagreement): the report has already been printed.
struct ChecksFailed {};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + path);
  return file;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<grid::TaskCategory> parse_categories(const std::string& s) {
  if (s == "all" || s.empty()) return {grid::kAllCategories.begin(), grid::kAllCategories.end()};
  std::vector<grid::TaskCategory> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(grid::parse_category(item));
  return out;
}

grid::FeatureSpec spec_for(const agents::NetConfig& cfg, const grid::ObjectCatalog& catalog) {
  if (catalog.mode() == grid::Mode::MiniGrid) return {grid::FeatureSpec::Frame::Egocentric, 7};
  const auto per_cell = static_cast<std::size_t>(catalog.object_count() + 2);
  const auto side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(cfg.feature_width / per_cell))));
  if (static_cast<std::size_t>(side * side) * per_cell != cfg.feature_width)
    throw DimensionMismatch("checkpoint feature width does not match the catalog");
  return {grid::FeatureSpec::Frame::AgentCentered, side};
}

// random | oracle | net:<checkpoint> | net-greedy:<checkpoint>
std::unique_ptr<agents::Policy> make_policy(const std::string& id, const grid::ObjectCatalog& catalog) {
  if (id == "random") return std::make_unique<agents::RandomPolicy>(catalog.mode());
  if (id == "oracle") return std::make_unique<agents::OraclePolicy>(catalog);
  const auto colon = id.find(':');
  if (colon != std::string::npos) {
    const std::string kind = id.substr(0, colon);
    if (kind == "net" || kind == "net-greedy") {
      auto params = std::make_shared<const agents::NetParams>(agents::load_params_file(id.substr(colon + 1)));
      const auto spec = spec_for(params->config(), catalog);
      if (params->config().instruction_width != agents::instruction_width(catalog))
        throw DimensionMismatch("checkpoint instruction width does not match the catalog");
      return std::make_unique<agents::NetPolicy>(params, catalog, spec, kind == "net-greedy");
    }
  }
  throw ConfigError("unknown policy '" + id + "' (random, oracle, net:<file>, net-greedy:<file>)");
}

struct Common {
  std::string mode = "minecraft";
  std::uint64_t seed = 0;
  std::uint64_t catalog_seed = 0;
  grid::ObjectCatalog catalog() const { return grid::ObjectCatalog::build(catalog_seed, grid::parse_mode(mode)); }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--mode", c.mode, "minecraft | minigrid")->capture_default_str();
  sub->add_option("--seed", c.seed, "run seed")->capture_default_str();
  sub->add_option("--catalog-seed", c.catalog_seed, "object catalog / split seed")->capture_default_str();
  sub->set_config("--config", "", "flat key=value file with any of these options");
}

// ---- gen-task ------------------------------------------------------------

struct GenTaskArgs {
  Common c;
  std::string split = "train", category = "all", out;
  std::size_t count = 10, depth = 0;
};

void run_gen_task(const GenTaskArgs& a) {
  const auto catalog = a.c.catalog();
  const auto split = grid::parse_split(a.split);
  const auto cats = parse_categories(a.category);
  std::mt19937_64 rng(a.c.seed);
  std::vector<tasks::TaskLine> lines;
  for (std::size_t i = 0; i < a.count; ++i) {
    if (a.depth == 0) {
      const auto cat = cats[std::uniform_int_distribution<std::size_t>(0, cats.size() - 1)(rng)];
      lines.push_back({format_formula(TemporalFormula::atomic(tasks::sample_task(cat, {split, catalog.mode()}, catalog, rng))), split});
    } else {
      lines.push_back({format_formula(tasks::compose_random(static_cast<int>(a.depth), {split, catalog.mode()}, catalog, rng)), split});
    }
  }
  std::ofstream f;
  tasks::write_task_list(open_out(a.out, f), lines);
}

// ---- gen-map -------------------------------------------------------------

struct GenMapArgs {
  Common c;
  int size = 7;
  std::string split = "train", category = "reach", formula, out, render, image;
  std::optional<std::uint64_t> horizon;
};

std::pair<AtomicTask, grid::GridMap> build_map(const Common& c, const grid::ObjectCatalog& catalog, int size,
                                               const std::string& split, const std::string& category,
                                               const std::string& formula, std::optional<std::uint64_t> horizon) {
  if (formula.empty()) {
    agents::EpisodeDraw draw;
    draw.mode = catalog.mode();
    draw.split = grid::parse_split(split);
    draw.categories = parse_categories(category);
    draw.horizon = horizon;
    auto ep = agents::make_episode(catalog, draw, size, c.seed);
    return {ep.task.task(), ep.map};
  }
  const AtomicTask task = parse_atomic(formula);
  grid::MapConfig cfg;
  cfg.mode = catalog.mode();
  cfg.n = size;
  cfg.split = grid::parse_split(split);
  cfg.category = grid::parse_category(category == "all" ? "reach" : category);
  cfg.seed = c.seed;
  cfg.horizon = horizon;
  return {task, grid::generate_map(cfg, task, catalog)};
}

void write_image(const grid::Image& img, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  img.write_pnm(f);
}

void run_gen_map(const GenMapArgs& a) {
  const auto catalog = a.c.catalog();
  auto [task, map] = build_map(a.c, catalog, a.size, a.split, a.category, a.formula, a.horizon);
  std::ofstream f;
  auto& os = open_out(a.out, f);
  json j = json::parse(grid::map_to_json(map));
  j["task"] = format_task(task);
  os << j.dump() << '\n';
  if (a.render == "ascii") std::cerr << grid::render_ascii(map, catalog);
  if (a.render == "pixels" || !a.image.empty()) {
    if (a.image.empty()) throw ConfigError("--render pixels needs --image <file.pgm|ppm>");
    write_image(grid::render_pixels(map, catalog), a.image);
  }
}

// ---- play ----------------------------------------------------------------

struct PlayArgs {
  Common c;
  std::string map_file, formula, actions_file, policy = "random", render, frames, log, split = "train",
                                                category = "all", feed = "reliable";
  int size = 7;
};

std::vector<int> read_actions(const std::string& path, grid::Mode mode) {
  std::istringstream in(read_file(path));
  std::vector<int> out;
  std::string tok;
  static const std::vector<std::string> mc{"up", "down", "left", "right"};
  static const std::vector<std::string> mg{"forward", "left", "right"};
  const auto& names = mode == grid::Mode::Minecraft ? mc : mg;
  while (in >> tok) {
    const auto it = std::find(names.begin(), names.end(), tok);
    if (it != names.end()) {
      out.push_back(static_cast<int>(it - names.begin()));
      continue;
    }
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 0 || v >= grid::action_count(mode)) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("bad action '" + tok + "' in " + path);
    }
  }
  return out;
}

class ScriptedPolicy final : public agents::Policy {
 public:
  explicit ScriptedPolicy(std::vector<int> a) : actions_(std::move(a)) {}
  std::string name() const override { return "scripted"; }
  void begin_episode() override { next_ = 0; }
  int act(const grid::GridMap&, const AtomicTask&, std::mt19937_64&) override {
    if (next_ >= actions_.size()) throw ConfigError("action script ran out before the episode ended");
    return actions_[next_++];
  }
  std::unique_ptr<Policy> clone() const override { return std::make_unique<ScriptedPolicy>(*this); }

 private:
  std::vector<int> actions_;
  std::size_t next_ = 0;
};

// Wraps a policy to render every state it is asked to act on.
class RenderingPolicy final : public agents::Policy {
 public:
  RenderingPolicy(agents::Policy& inner, const grid::ObjectCatalog& catalog, std::string mode, std::string frames)
      : inner_(&inner), catalog_(&catalog), mode_(std::move(mode)), frames_(std::move(frames)) {}
  std::string name() const override { return inner_->name(); }
  void begin_episode() override { inner_->begin_episode(); }
  int act(const grid::GridMap& map, const AtomicTask& instr, std::mt19937_64& rng) override {
    show(map, instr);
    return inner_->act(map, instr, rng);
  }
  void show(const grid::GridMap& map, const AtomicTask& instr) {
    if (mode_ == "ascii") {
      std::cerr << "t=" << map.steps << "  " << format_task(instr) << '\n' << grid::render_ascii(map, *catalog_) << '\n';
    } else if (mode_ == "pixels") {
      const auto img = grid::render_observation(map, *catalog_, instr);
      std::ostringstream name;
      name << frames_ << "/frame_" << std::setw(4) << std::setfill('0') << map.steps
           << (img.channels == 3 ? ".ppm" : ".pgm");
      write_image(img, name.str());
    }
  }
  std::unique_ptr<Policy> clone() const override { return std::make_unique<RenderingPolicy>(*this); }

 private:
  agents::Policy* inner_;
  const grid::ObjectCatalog* catalog_;
  std::string mode_, frames_;
};

void run_play(const PlayArgs& a) {
  const auto catalog = a.c.catalog();
  TemporalFormula task = TemporalFormula::atomic({Literal::truth(), Literal::truth()});
  grid::GridMap map;
  if (!a.map_file.empty()) {
    const std::string text = read_file(a.map_file);
    map = grid::map_from_json(text);
    const json j = json::parse(text);
    if (!a.formula.empty()) task = parse_formula(a.formula);
    else if (j.contains("task")) task = parse_formula(j.at("task").get<std::string>());
    else throw ConfigError("--formula is required when the map file has no task");
  } else if (!a.formula.empty()) {
    task = parse_formula(a.formula);
    if (!task.is_atomic()) throw ConfigError("generating a map needs an atomic --formula; pass --map for composites");
    auto built = build_map(a.c, catalog, a.size, a.split, a.category, a.formula, std::nullopt);
    map = built.second;
  } else {
    auto built = build_map(a.c, catalog, a.size, a.split, a.category, "", std::nullopt);
    task = TemporalFormula::atomic(built.first);
    map = built.second;
  }
  if (map.mode != catalog.mode()) throw ConfigError("map mode does not match --mode");
  if (a.render == "pixels" && a.frames.empty()) throw ConfigError("--render pixels needs --frames <dir>");
  if (!a.frames.empty()) std::filesystem::create_directories(a.frames);

  std::unique_ptr<agents::Policy> policy;
  if (!a.actions_file.empty()) policy = std::make_unique<ScriptedPolicy>(read_actions(a.actions_file, map.mode));
  else policy = make_policy(a.policy, catalog);
  RenderingPolicy shown(*policy, catalog, a.render, a.frames);

  std::ofstream logf;
  std::ostream* log = nullptr;
  if (!a.log.empty()) log = &open_out(a.log, logf);
  std::mt19937_64 rng(agents::mix_seed(a.c.seed, 0x91a7));
  const auto r = agents::run_episode(shown, catalog, map, task, agents::parse_feed(a.feed), rng, log);
  json out{{"formula", format_formula(task)}, {"policy", policy->name()},  {"return", r.ret},
           {"steps", r.steps},                {"violations", r.violations}, {"completions", r.completions},
           {"outcome", sm::outcome_name(r.outcome)}};
  std::cout << out.dump() << '\n';
}

// ---- train ---------------------------------------------------------------

struct TrainArgs {
  Common c;
  std::string split = "train", category = "all", arch = "latent-goal", activation = "tanh", checkpoint, curve,
              feed = "reliable", lr_schedule = "constant";
  std::uint64_t steps = 200'000, eval_interval = 10'000, curriculum_steps = 0;
  std::size_t envs = 16, rollout = 5, bottleneck = 16, width = 64, recurrent = 64, objects = 0, eval_maps = 200;
  int size_min = 7, size_max = 10, distractor_min = 2, distractor_max = 6;
  double lr = 1e-3, gamma = 0.99, value_weight = 0.5, entropy = 1e-3, max_grad_norm = 0.0, curriculum_p = 0.7;
  bool quiet = false;
};

void run_train(const TrainArgs& a) {
  const auto catalog = a.c.catalog();
  agents::EpisodeDraw draw;
  draw.mode = catalog.mode();
  draw.split = grid::parse_split(a.split);
  draw.categories = parse_categories(a.category);
  draw.distractor_min = a.distractor_min;
  draw.distractor_max = a.distractor_max;
  if (a.objects > 0) {
    // The first `objects` ids of the reachability pool.
    auto pool = catalog.pool(draw.split, grid::TaskCategory::Reachability);
    if (pool.size() < a.objects) throw SplitTooSmall("pool has only " + std::to_string(pool.size()) + " objects");
    pool.resize(a.objects);
    draw.pool = pool;
  }
  agents::NetConfig net;
  net.arch = agents::parse_architecture(a.arch);
  net.activation = agents::parse_activation(a.activation);
  net.bottleneck = a.bottleneck;
  net.cm1_width = net.cm2_width = a.width;
  net.recurrent = a.recurrent;
  net.seed = agents::mix_seed(a.c.seed, 0x4e7);
  agents::TrainConfig cfg = a.lr_schedule == "long-run" ? agents::TrainConfig::long_run() : agents::TrainConfig{};
  if (a.lr_schedule != "long-run" && a.lr_schedule != "constant") throw ConfigError("--lr-schedule is constant or long-run");
  if (a.lr_schedule == "constant") cfg.lr = a.lr;
  cfg.loss = {a.gamma, a.value_weight, a.entropy};
  cfg.envs = a.envs;
  cfg.rollout = a.rollout;
  cfg.total_steps = a.steps;
  cfg.eval_interval = a.eval_interval;
  cfg.size_min = a.size_min;
  cfg.size_max = a.size_max;
  cfg.curriculum_p = a.curriculum_p;
  cfg.curriculum_steps = a.curriculum_steps;
  cfg.max_grad_norm = a.max_grad_norm;
  cfg.feed = agents::parse_feed(a.feed);
  cfg.seed = a.c.seed;
  if (net.bottleneck_flagged())
    std::cerr << json{{"warning", "bottleneck wider than 16"}, {"bottleneck", net.bottleneck}}.dump() << '\n';

  const auto spec = grid::FeatureSpec::for_mode(catalog.mode(), a.size_max);
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = agents::a2c_train(catalog, draw, spec, net, cfg, [&](const agents::CurvePoint& p) {
    if (!a.quiet)
      std::cerr << json{{"step", p.step}, {"mean_return", p.mean_return}, {"episodes", p.episodes}}.dump() << '\n';
  });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!a.checkpoint.empty()) agents::save_params_file(a.checkpoint, *res.params);
  if (!a.curve.empty()) {
    std::ofstream f;
    agents::write_curve_csv(open_out(a.curve, f), res.curve);
  }
  json out{{"steps", res.steps}, {"episodes", res.episodes}, {"updates", res.updates}, {"seconds", secs},
           {"kernels", kernels::backend_name(kernels::active_backend())}};
  if (a.eval_maps > 0) {
    agents::EvalConfig ec;
    ec.sizes = {a.size_max};
    ec.maps_per_size = a.eval_maps;
    ec.draw = draw;
    ec.seed = agents::mix_seed(a.c.seed, 0xe7a1);
    agents::NetPolicy learned(res.params, catalog, spec);
    agents::RandomPolicy walker(catalog.mode());
    const auto t = agents::evaluate({&learned, &walker}, catalog, ec);
    out["eval_mean"] = t.rows[0].sizes[0].mean;
    out["random_mean"] = t.rows[1].sizes[0].mean;
  }
  std::cout << out.dump() << '\n';
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  Common c;
  std::vector<std::string> policies{"oracle", "random"};
  std::vector<int> sizes{7, 14, 22};
  std::size_t maps = 500, runs = 5;
  unsigned workers = 1;
  std::string split = "test", category = "all", out, feed = "reliable";
};

void run_eval(const EvalArgs& a) {
  const auto catalog = a.c.catalog();
  std::vector<std::unique_ptr<agents::Policy>> owned;
  std::vector<const agents::Policy*> ps;
  for (const auto& id : a.policies) {
    owned.push_back(make_policy(id, catalog));
    ps.push_back(owned.back().get());
  }
  harness::CampaignConfig cfg;
  cfg.eval.sizes = a.sizes;
  cfg.eval.maps_per_size = a.maps;
  cfg.eval.draw.mode = catalog.mode();
  cfg.eval.draw.split = grid::parse_split(a.split);
  cfg.eval.draw.categories = parse_categories(a.category);
  cfg.eval.feed = agents::parse_feed(a.feed);
  cfg.eval.seed = a.c.seed;
  cfg.eval.workers = a.workers;
  cfg.runs = a.runs;
  cfg.out = a.out;
  const auto rows = harness::campaign_eval(ps, catalog, cfg);
  for (const auto& r : rows)
    std::cout << json{{"policy", r.policy}, {"size", r.size},   {"mean", r.mean},
                      {"p25", r.p25},       {"p50", r.p50},     {"p75", r.p75},
                      {"normalized", r.normalized}}.dump()
              << '\n';
}

// ---- control-exp ---------------------------------------------------------

struct ControlArgs {
  Common c;
  std::string policy = "oracle";
  std::size_t tasks = 500;
  int size = 7, hazard_min = 8, hazard_max = 14;
  unsigned workers = 1;
};

void run_control(const ControlArgs& a) {
  const auto catalog = a.c.catalog();
  const auto p = make_policy(a.policy, catalog);
  agents::ControlConfig cfg;
  cfg.n_tasks = a.tasks;
  cfg.n = a.size;
  cfg.hazard_min = a.hazard_min;
  cfg.hazard_max = a.hazard_max;
  cfg.seed = a.c.seed;
  cfg.workers = a.workers;
  const auto t = agents::control_experiment(*p, catalog, cfg);
  std::cout << json{{"policy", p->name()},     {"reliable", t.reliable}, {"occluded", t.occluded},
                    {"deceptive", t.deceptive}, {"random", t.random}}.dump()
            << '\n';
}

// ---- check-trace ---------------------------------------------------------

struct CheckArgs {
  std::string formula, trace;
};

// Accepts either one episode per line ({"labels": [[...], ...]}) or the
// per-step log written by `play --log` ({"t": i, "labels": [...]}), which is
// read as a single trace.
std::vector<TraceRecord> load_traces(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string first;
  while (std::getline(in, first) && first.find_first_not_of(" \t\r") == std::string::npos) {
  }
  bool step_log = false;
  try {
    const json j = json::parse(first);
    step_log = j.is_object() && j.contains("t");
  } catch (const json::exception&) {
  }
  if (!step_log) {
    std::istringstream all(text);
    return read_trace_jsonl(all);
  }
  TraceRecord rec;
  std::istringstream all(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(all, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      rec.trace.steps.push_back(j.at("labels").get<LabelSet>());
    } catch (const json::exception& e) {
      throw TraceFormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  rec.trace.check_end_contract();
  return {rec};
}

void run_check(const CheckArgs& a) {
  const auto f = parse_formula(a.formula);
  const auto recs = load_traces(a.trace);
  std::size_t i = 0;
  for (const auto& r : recs) {
    json out{{"trace", i++}, {"length", r.trace.size()}, {"satisfied", satisfies(r.trace, f)}};
    if (f.is_atomic()) {
      const auto rep = satisfies_with_restarts(r.trace, f.task());
      out["relaxed_satisfied"] = rep.satisfied;
      out["completion_index"] = rep.completion_index ? json(*rep.completion_index) : json(nullptr);
      out["violations"] = rep.violation_count;
      out["violation_indices"] = rep.violation_indices;
    }
    const auto ret = sm::episode_return(r.trace, f);
    out["return"] = ret.value;
    std::cout << out.dump() << '\n';
  }
}

// ---- translate -----------------------------------------------------------

void run_translate(const std::string& formula) {
  std::cout << ltlf::format_ltlf(ltlf::translate(parse_formula(formula))) << '\n';
}

// ---- fuzz ----------------------------------------------------------------

struct FuzzArgs {
  std::vector<std::string> suites{"all"};
  harness::FuzzOptions o;
};

void run_fuzz(const FuzzArgs& a) {
  std::vector<std::string> names;
  for (const auto& s : a.suites) {
    if (s == "all") names.insert(names.end(), harness::suite_names().begin(), harness::suite_names().end());
    else names.push_back(s);
  }
  bool ok = true;
  for (const auto& n : names) {
    const auto r = harness::run_suite(n, a.o);
    std::cout << r.summary() << '\n';
    std::cerr << r.to_json() << '\n';
    ok = ok && r.ok();
  }
  if (!ok) throw ChecksFailed{};
}

void print_error(const std::string& kind, const std::string& message, json extra = json::object()) {
  extra["error"] = kind;
  extra["message"] = message;
  std::cerr << extra.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SATTL task logic toolkit and gridworld testbed"};
  app.require_subcommand(1);

  std::string kernel_choice;
  app.add_option("--kernels", kernel_choice, "dense kernel backend: scalar | avx2 | neon");

  GenTaskArgs gt;
  auto* s_gt = app.add_subcommand("gen-task", "sample instructions from a split");
  add_common(s_gt, gt.c);
  s_gt->add_option("--split", gt.split)->capture_default_str();
  s_gt->add_option("--category", gt.category, "reach,neg-reach,pos-cond,neg-cond or all")->capture_default_str();
  s_gt->add_option("--count", gt.count)->capture_default_str();
  s_gt->add_option("--depth", gt.depth, "0 for atomic tasks")->capture_default_str();
  s_gt->add_option("--out", gt.out, "output file (default stdout)");

  GenMapArgs gm;
  auto* s_gm = app.add_subcommand("gen-map", "generate a map for a task");
  add_common(s_gm, gm.c);
  s_gm->add_option("--size", gm.size)->capture_default_str();
  s_gm->add_option("--split", gm.split)->capture_default_str();
  s_gm->add_option("--category", gm.category)->capture_default_str();
  s_gm->add_option("--formula", gm.formula, "atomic task; sampled when omitted");
  s_gm->add_option("--horizon", gm.horizon);
  s_gm->add_option("--out", gm.out, "map JSON (default stdout)");
  s_gm->add_option("--render", gm.render, "ascii | pixels")->check(CLI::IsMember({"ascii", "pixels"}));
  s_gm->add_option("--image", gm.image, "PGM/PPM path for --render pixels");

  PlayArgs pl;
  auto* s_pl = app.add_subcommand("play", "run one episode with a script or a policy");
  add_common(s_pl, pl.c);
  s_pl->add_option("--map", pl.map_file, "map JSON from gen-map");
  s_pl->add_option("--formula", pl.formula);
  s_pl->add_option("--size", pl.size)->capture_default_str();
  s_pl->add_option("--split", pl.split)->capture_default_str();
  s_pl->add_option("--category", pl.category)->capture_default_str();
  s_pl->add_option("--actions", pl.actions_file, "file of actions (names or indices)");
  s_pl->add_option("--policy", pl.policy, "random | oracle | net:<file> | net-greedy:<file>")->capture_default_str();
  s_pl->add_option("--feed", pl.feed, "reliable | occluded | deceptive")->capture_default_str();
  s_pl->add_option("--render", pl.render, "ascii | pixels")->check(CLI::IsMember({"ascii", "pixels"}));
  s_pl->add_option("--frames", pl.frames, "directory for pixel frames");
  s_pl->add_option("--log", pl.log, "per-step JSONL episode log");

  TrainArgs tr;
  auto* s_tr = app.add_subcommand("train", "train an agent with A2C");
  add_common(s_tr, tr.c);
  s_tr->add_option("--split", tr.split)->capture_default_str();
  s_tr->add_option("--category", tr.category)->capture_default_str();
  s_tr->add_option("--objects", tr.objects, "restrict tasks and distractors to this many objects (0 = pool)");
  s_tr->add_option("--size-min", tr.size_min)->capture_default_str();
  s_tr->add_option("--size-max", tr.size_max)->capture_default_str();
  s_tr->add_option("--distractor-min", tr.distractor_min)->capture_default_str();
  s_tr->add_option("--distractor-max", tr.distractor_max)->capture_default_str();
  s_tr->add_option("--steps", tr.steps)->capture_default_str();
  s_tr->add_option("--eval-interval", tr.eval_interval)->capture_default_str();
  s_tr->add_option("--envs", tr.envs)->capture_default_str();
  s_tr->add_option("--rollout", tr.rollout)->capture_default_str();
  s_tr->add_option("--lr", tr.lr)->capture_default_str();
  s_tr->add_option("--lr-schedule", tr.lr_schedule, "constant | long-run")->capture_default_str();
  s_tr->add_option("--gamma", tr.gamma)->capture_default_str();
  s_tr->add_option("--value-weight", tr.value_weight)->capture_default_str();
  s_tr->add_option("--entropy", tr.entropy)->capture_default_str();
  s_tr->add_option("--max-grad-norm", tr.max_grad_norm)->capture_default_str();
  s_tr->add_option("--curriculum-p", tr.curriculum_p)->capture_default_str();
  s_tr->add_option("--curriculum-steps", tr.curriculum_steps)->capture_default_str();
  s_tr->add_option("--arch", tr.arch, "latent-goal | standard")->capture_default_str();
  s_tr->add_option("--activation", tr.activation, "tanh | relu")->capture_default_str();
  s_tr->add_option("--bottleneck", tr.bottleneck)->capture_default_str();
  s_tr->add_option("--width", tr.width)->capture_default_str();
  s_tr->add_option("--recurrent", tr.recurrent)->capture_default_str();
  s_tr->add_option("--feed", tr.feed)->capture_default_str();
  s_tr->add_option("--checkpoint", tr.checkpoint, "write the trained parameters here");
  s_tr->add_option("--curve", tr.curve, "learning curve CSV");
  s_tr->add_option("--eval-maps", tr.eval_maps, "fresh maps for the final evaluation (0 skips)")->capture_default_str();
  s_tr->add_flag("--quiet", tr.quiet);

  EvalArgs ev;
  auto* s_ev = app.add_subcommand("eval", "paired evaluation campaign");
  add_common(s_ev, ev.c);
  s_ev->add_option("--policy", ev.policies, "repeatable")->capture_default_str();
  s_ev->add_option("--sizes", ev.sizes)->delimiter(',')->capture_default_str();
  s_ev->add_option("--maps-per-size", ev.maps)->capture_default_str();
  s_ev->add_option("--runs", ev.runs)->capture_default_str();
  s_ev->add_option("--workers", ev.workers)->capture_default_str();
  s_ev->add_option("--split", ev.split)->capture_default_str();
  s_ev->add_option("--category", ev.category)->capture_default_str();
  s_ev->add_option("--feed", ev.feed)->capture_default_str();
  s_ev->add_option("--out", ev.out, "directory for episodes.csv and summary.csv");

  ControlArgs ce;
  auto* s_ce = app.add_subcommand("control-exp", "reliable / occluded / deceptive instructions");
  add_common(s_ce, ce.c);
  s_ce->add_option("--policy", ce.policy)->capture_default_str();
  s_ce->add_option("--tasks", ce.tasks)->capture_default_str();
  s_ce->add_option("--size", ce.size)->capture_default_str();
  s_ce->add_option("--hazard-min", ce.hazard_min)->capture_default_str();
  s_ce->add_option("--hazard-max", ce.hazard_max)->capture_default_str();
  s_ce->add_option("--workers", ce.workers)->capture_default_str();

  CheckArgs ck;
  auto* s_ck = app.add_subcommand("check-trace", "satisfaction and restart report of traces");
  s_ck->add_option("--formula", ck.formula)->required();
  s_ck->add_option("--trace", ck.trace, "JSONL file")->required();

  std::string tl_formula;
  auto* s_tl = app.add_subcommand("translate", "print the LTLf translation");
  s_tl->add_option("--formula", tl_formula)->required();

  FuzzArgs fz;
  auto* s_fz = app.add_subcommand("fuzz", "equivalence and soundness suites");
  s_fz->add_option("--suite", fz.suites, "repeatable; all | " + [] {
    std::string s;
    for (const auto& n : harness::suite_names()) s += (s.empty() ? "" : " | ") + n;
    return s;
  }())->capture_default_str();
  s_fz->add_option("--cases", fz.o.cases)->capture_default_str();
  s_fz->add_option("--seed", fz.o.seed)->capture_default_str();
  s_fz->add_option("--atoms", fz.o.atoms)->capture_default_str();
  s_fz->add_option("--max-len", fz.o.max_len)->capture_default_str();
  s_fz->add_option("--depth", fz.o.depth)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return 2;
  }

  try {
    if (!kernel_choice.empty()) kernels::select(kernels::parse_backend(kernel_choice));
    if (s_gt->parsed()) run_gen_task(gt);
    else if (s_gm->parsed()) run_gen_map(gm);
    else if (s_pl->parsed()) run_play(pl);
    else if (s_tr->parsed()) run_train(tr);
    else if (s_ev->parsed()) run_eval(ev);
    else if (s_ce->parsed()) run_control(ce);
    else if (s_ck->parsed()) run_check(ck);
    else if (s_tl->parsed()) run_translate(tl_formula);
    else if (s_fz->parsed()) run_fuzz(fz);
  } catch (const ChecksFailed&) {
    return 1;
  } catch (const SyntaxError& e) {
    print_error(e.kind(), e.what(), {{"offset", e.offset()}, {"expected", e.expected()}});
    return 1;
  } catch (const Error& e) {
    print_error(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
    return 1;
  }
  return 0;
}
