#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "sattl/episode.hpp"
#include "sattl/net.hpp"

namespace sattl::agents {

struct TrainConfig {
  LossWeights loss;
  std::size_t rollout = 5;
  std::size_t envs = 16;  // parallel episodes; batch = envs * rollout
  double lr = 1e-3;
  // Piecewise-constant overrides: from env step `first`, use `second`.
  std::vector<std::pair<std::uint64_t, double>> lr_steps;
  double rms_decay = 0.99;
  double rms_eps = 1e-5;
  double max_grad_norm = 0.0;  // 0 disables clipping
  std::uint64_t total_steps = 200'000;
  std::uint64_t eval_interval = 10'000;
  int size_min = 7, size_max = 10;
  // During the first curriculum_steps env steps, maps of curriculum_size are
  // drawn with probability curriculum_p.
  int curriculum_size = 7;
  double curriculum_p = 0.7;
  std::uint64_t curriculum_steps = 0;
  Feed feed = Feed::Reliable;
  std::uint64_t seed = 0;

  // Long-run schedule: 8e-5, 6e-5 from 30M steps, 4e-5 from 55M; batch 512 (rollout 5 x ~102 envs).
  static TrainConfig long_run();
  double lr_at(std::uint64_t step) const noexcept;
  void validate() const;
};

struct CurvePoint {
  std::uint64_t step = 0;  // end of the window
  double mean_return = 0.0;
  double sd = 0.0;
  std::size_t episodes = 0;
};

struct TrainResult {
  std::shared_ptr<const NetParams> params;
  std::vector<CurvePoint> curve;  // total_steps / eval_interval windows
  std::uint64_t steps = 0;
  std::uint64_t episodes = 0;
  std::uint64_t updates = 0;
};

using TrainProgress = std::function<void(const CurvePoint&)>;

/// Synchronous advantage actor-critic over envs parallel episodes stepped in
/// a fixed order on one thread; bit-reproducible from the seeds. The net
/// config's input widths are filled in from the catalog and feature spec.
TrainResult a2c_train(const grid::ObjectCatalog& catalog, const EpisodeDraw& draw, const grid::FeatureSpec& spec,
                      NetConfig net, const TrainConfig& cfg, const TrainProgress& progress = {});

// Root-mean-square scaled step over every tensor; `sq` has the params' shape.
void rmsprop_step(NetParams& p, const NetParams& g, NetParams& sq, double lr, double decay, double eps);

}  // namespace sattl::agents
