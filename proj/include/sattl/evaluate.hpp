#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sattl/episode.hpp"

namespace sattl::agents {

struct SizeResult {
  int n = 0;
  double mean = 0.0;
  double sd = 0.0;
  std::vector<double> returns;  // in episode order
};

struct PolicyResult {
  std::string policy;
  std::vector<SizeResult> sizes;
};

struct ResultTable {
  std::vector<int> sizes;
  std::vector<PolicyResult> rows;
  // normalized[row][size]: 100 + 100 * (mean - best) / |best|, best = max mean in that size.
  std::vector<std::vector<double>> normalized() const;
  void write_csv(std::ostream& os) const;             // policy,size,episode,return
  void write_summary_csv(std::ostream& os) const;     // policy,size,mean,sd,normalized
};

double normalized_score(double mean, double best) noexcept;

struct EvalConfig {
  std::vector<int> sizes{7, 14, 22};
  std::size_t maps_per_size = 500;
  EpisodeDraw draw;
  Feed feed = Feed::Reliable;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Every policy sees the same (map, task) pairs: episode i of size n uses
/// seed mix(mix(seed, n), i) for its task, map and action sampling.
ResultTable evaluate(const std::vector<const Policy*>& policies, const grid::ObjectCatalog& catalog,
                     const EvalConfig& cfg);
ResultTable evaluate(const Policy& policy, const grid::ObjectCatalog& catalog, const EvalConfig& cfg);

struct ControlConfig {
  std::size_t n_tasks = 500;
  int n = 7;
  int hazard_min = 8, hazard_max = 14;  // dense constraint objects
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct ControlTable {
  double reliable = 0.0, occluded = 0.0, deceptive = 0.0, random = 0.0;
};

/// NegativeCond tasks on hazard-dense maps; reward from the true task, the
/// policy fed the reliable, occluded or deceived instruction; plus a random
/// walker on the same maps.
ControlTable control_experiment(const Policy& policy, const grid::ObjectCatalog& catalog, const ControlConfig& cfg);

}  // namespace sattl::agents
