#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sattl/evaluate.hpp"
#include "sattl/formula.hpp"

namespace sattl::harness {

/// Fixed formula family over the given atoms: every atomic task built from a
/// small literal set, then Seq/Choice compositions up to depth 2. At least
/// 200 formulas for two atoms.
std::vector<TemporalFormula> formula_family(std::span<const Atom> atoms);
std::vector<Atom> default_atoms(std::size_t count);  // a, b, c, ...

Literal random_literal(std::span<const Atom> atoms, std::mt19937_64& rng, bool allow_true);
AtomicTask random_task(std::span<const Atom> atoms, std::mt19937_64& rng);
// Depth exactly `depth` along at least one branch.
TemporalFormula random_formula(std::size_t depth, std::span<const Atom> atoms, std::mt19937_64& rng);
Trace random_trace(std::span<const Atom> atoms, std::size_t max_len, std::mt19937_64& rng);

struct FuzzReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t formulas = 0;
  std::size_t traces = 0;
  std::size_t disagreements = 0;
  std::optional<std::string> counterexample;
  bool ok() const noexcept { return disagreements == 0; }
  std::string summary() const;
  std::string to_json() const;
};

struct FuzzOptions {
  std::size_t cases = 10'000;
  std::uint64_t seed = 0;
  std::size_t atoms = 2;
  std::size_t max_len = 5;
  std::size_t depth = 3;
};

// satisfies vs satisfies_naive on random formulas and traces.
FuzzReport fuzz_dp_vs_naive(const FuzzOptions& o);
// parse(format(f)) == f.
FuzzReport fuzz_round_trip(const FuzzOptions& o);
// satisfies vs eval_ltlf(translate(f)) on every trace up to max_len, over the family.
FuzzReport fuzz_truth_preservation(const FuzzOptions& o);
// satisfies(trace, f) iff some extracted sequence is satisfied, same traces and family.
FuzzReport fuzz_extractor_soundness(const FuzzOptions& o);
// episode_return against the closed form from the restart report on random atomic tasks.
FuzzReport fuzz_reward_accounting(const FuzzOptions& o);
// Sampled tasks only mention atoms of their split pool (catalog from seed).
FuzzReport fuzz_split_hygiene(const FuzzOptions& o);

const std::vector<std::string>& suite_names();
FuzzReport run_suite(std::string_view name, const FuzzOptions& o);

struct CampaignConfig {
  agents::EvalConfig eval;
  std::size_t runs = 5;
  std::filesystem::path out;
};

struct CampaignSummaryRow {
  std::string policy;
  int size = 0;
  double p25 = 0.0, p50 = 0.0, p75 = 0.0;  // over per-run means
  double mean = 0.0;                       // over runs
  double normalized = 0.0;                 // of `mean`, best = 100 per size
};

/// Evaluates every policy `runs` times (run r seeds its episodes with
/// mix(seed, r)); all policies share the episodes of a run. Writes
/// episodes.csv and summary.csv under `out` when it is non-empty.
std::vector<CampaignSummaryRow> campaign_eval(const std::vector<const agents::Policy*>& policies,
                                              const grid::ObjectCatalog& catalog, const CampaignConfig& cfg);

// Linear-interpolated percentile of an unsorted sample, q in [0, 100].
double percentile(std::vector<double> v, double q);

}  // namespace sattl::harness
