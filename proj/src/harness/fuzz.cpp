#include "sattl/harness.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "sattl/catalog.hpp"
#include "sattl/errors.hpp"
#include "sattl/ltlf.hpp"
#include "sattl/parse.hpp"
#include "sattl/semantics.hpp"
#include "sattl/symbolic.hpp"
#include "sattl/task_gen.hpp"

namespace sattl::harness {

std::string FuzzReport::summary() const {
  std::ostringstream os;
  os << suite << ": ";
  if (traces && formulas) os << traces << " traces x " << formulas << " formulas, ";
  os << cases << " cases, " << disagreements << " disagreements (seed " << seed << ")";
  return os.str();
}

std::string FuzzReport::to_json() const {
  nlohmann::json j{{"suite", suite},     {"seed", seed},
                   {"cases", cases},     {"formulas", formulas},
                   {"traces", traces},   {"disagreements", disagreements},
                   {"ok", ok()}};
  if (counterexample) j["counterexample"] = *counterexample;
  return j.dump();
}

namespace {

std::string show_trace(const Trace& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    s += i ? ", {" : "{";
    bool first = true;
    for (const auto& l : t[i]) {
      s += first ? "" : ",";
      s += l;
      first = false;
    }
    s += "}";
  }
  return s + "]";
}

FuzzReport report(const char* suite, std::uint64_t seed) {
  FuzzReport r;
  r.suite = suite;
  r.seed = seed;
  return r;
}

void record(FuzzReport& r, const TemporalFormula& f, const Trace& t) {
  ++r.disagreements;
  if (!r.counterexample) r.counterexample = format_formula(f) + " on " + show_trace(t);
}

}  // namespace

FuzzReport fuzz_dp_vs_naive(const FuzzOptions& o) {
  FuzzReport r = report("dp-vs-naive", o.seed);
  const auto atoms = default_atoms(std::max<std::size_t>(o.atoms, 1));
  std::mt19937_64 rng(o.seed);
  const std::size_t max_len = std::min(o.max_len, kNaiveMaxTrace);
  for (std::size_t i = 0; i < o.cases; ++i) {
    const auto depth = std::uniform_int_distribution<std::size_t>(0, o.depth)(rng);
    const auto f = random_formula(depth, atoms, rng);
    const auto t = random_trace(atoms, max_len, rng);
    ++r.cases;
    if (satisfies(t, f) != satisfies_naive(t, f)) record(r, f, t);
  }
  return r;
}

FuzzReport fuzz_round_trip(const FuzzOptions& o) {
  FuzzReport r = report("round-trip", o.seed);
  auto atoms = default_atoms(std::max<std::size_t>(o.atoms, 1));
  atoms.push_back(Atom("grass_2"));
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < o.cases; ++i) {
    const auto depth = std::uniform_int_distribution<std::size_t>(0, o.depth)(rng);
    const auto f = random_formula(depth, atoms, rng);
    ++r.cases;
    try {
      if (!(parse_formula(format_formula(f)) == f)) record(r, f, Trace{});
    } catch (const Error&) {
      record(r, f, Trace{});
    }
  }
  return r;
}

FuzzReport fuzz_truth_preservation(const FuzzOptions& o) {
  FuzzReport r = report("truth-preservation", o.seed);
  const auto atoms = default_atoms(o.atoms);
  const auto family = formula_family(atoms);
  r.formulas = family.size();
  for (const auto& f : family) {
    const auto rep = ltlf::check_truth_preservation(f, atoms, o.max_len);
    r.traces = rep.cases;
    r.cases += rep.cases;
    for (const auto& t : rep.disagreements) record(r, f, t);
  }
  return r;
}

FuzzReport fuzz_extractor_soundness(const FuzzOptions& o) {
  FuzzReport r = report("extractor-soundness", o.seed);
  const auto atoms = default_atoms(o.atoms);
  const auto family = formula_family(atoms);
  const auto traces = ltlf::enumerate_traces(atoms, o.max_len);
  r.formulas = family.size();
  r.traces = traces.size();
  for (const auto& f : family) {
    std::vector<TemporalFormula> seqs;
    for (const auto& s : sm::extract(f)) seqs.push_back(sm::fold_seq(s));
    for (const auto& t : traces) {
      ++r.cases;
      const bool any = std::any_of(seqs.begin(), seqs.end(), [&](const TemporalFormula& s) { return satisfies(t, s); });
      if (any != satisfies(t, f)) record(r, f, t);
    }
  }
  return r;
}

FuzzReport fuzz_reward_accounting(const FuzzOptions& o) {
  FuzzReport r = report("reward-accounting", o.seed);
  const auto atoms = default_atoms(std::max<std::size_t>(o.atoms, 1));
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < o.cases; ++i) {
    const AtomicTask task = random_task(atoms, rng);
    const auto f = TemporalFormula::atomic(task);
    const auto t = random_trace(atoms, std::max<std::size_t>(o.max_len, 1), rng);
    ++r.cases;
    const auto ret = sm::episode_return(t, f);
    const auto rep = satisfies_with_restarts(t, task);
    const std::int64_t consumed = rep.satisfied ? static_cast<std::int64_t>(*rep.completion_index) + 1
                                                : static_cast<std::int64_t>(t.size());
    const auto viol = static_cast<std::int64_t>(rep.violation_count);
    const std::int64_t ordinary = consumed - viol - (rep.satisfied ? 1 : 0);
    const std::int64_t closed = (rep.satisfied ? sm::kGoalUnits : 0) + viol * sm::kViolationUnits + ordinary * sm::kStepUnits;
    if (ret.units != closed || ret.value != sm::units_to_reward(closed)) record(r, f, t);
  }
  return r;
}

FuzzReport fuzz_split_hygiene(const FuzzOptions& o) {
  FuzzReport r = report("split-hygiene", o.seed);
  std::mt19937_64 rng(o.seed);
  for (auto mode : {grid::Mode::Minecraft, grid::Mode::MiniGrid}) {
    const auto catalog = grid::ObjectCatalog::build(o.seed, mode);
    for (std::size_t i = 0; i < o.cases / 2; ++i) {
      const auto split = std::uniform_int_distribution<int>(0, 1)(rng) ? grid::Split::Test : grid::Split::Train;
      const auto cat = grid::kAllCategories[std::uniform_int_distribution<std::size_t>(0, 3)(rng)];
      const auto task = tasks::sample_task(cat, {split, mode}, catalog, rng);
      const auto pool = catalog.pool(split, cat);
      ++r.cases;
      bool leak = !tasks::matches_category(task, cat);
      for (const Literal* l : {&task.cond, &task.goal})
        for (const auto& e : l->entries()) {
          const auto id = catalog.find(e.atom.name());
          if (!id || std::find(pool.begin(), pool.end(), *id) == pool.end()) leak = true;
        }
      if (leak) {
        ++r.disagreements;
        if (!r.counterexample)
          r.counterexample = std::string(grid::split_name(split)) + " " + grid::category_name(cat) + ": " + format_task(task);
      }
    }
  }
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"dp-vs-naive", "round-trip", "truth-preservation", "extractor-soundness",
                                              "reward-accounting", "split-hygiene"};
  return names;
}

FuzzReport run_suite(std::string_view name, const FuzzOptions& o) {
  if (name == "dp-vs-naive") return fuzz_dp_vs_naive(o);
  if (name == "round-trip") return fuzz_round_trip(o);
  if (name == "truth-preservation") return fuzz_truth_preservation(o);
  if (name == "extractor-soundness") return fuzz_extractor_soundness(o);
  if (name == "reward-accounting") return fuzz_reward_accounting(o);
  if (name == "split-hygiene") return fuzz_split_hygiene(o);
  throw ConfigError("unknown fuzz suite '" + std::string(name) + "'");
}

}  // namespace sattl::harness
