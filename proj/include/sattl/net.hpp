#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sattl::agents {

enum class Architecture : unsigned char {
  LatentGoal,  // CM1 on [state, instruction] -> linear bottleneck; CM2 on state; fused into the recurrent cell
  Standard,    // one dense layer on [state, instruction] feeding the recurrent cell
};
const char* architecture_name(Architecture a) noexcept;
Architecture parse_architecture(std::string_view s);

enum class Activation : unsigned char { Tanh, Relu };
const char* activation_name(Activation a) noexcept;
Activation parse_activation(std::string_view s);

inline constexpr std::size_t kDefaultBottleneck = 16;

struct NetConfig {
  std::size_t feature_width = 0;
  std::size_t instruction_width = 0;
  std::size_t actions = 4;
  std::size_t cm1_width = 64;  // also the Standard dense layer
  std::size_t cm2_width = 64;
  std::size_t bottleneck = kDefaultBottleneck;
  std::size_t recurrent = 64;
  Architecture arch = Architecture::LatentGoal;
  Activation activation = Activation::Tanh;
  std::uint64_t seed = 0;

  // Throws ConfigError: zero widths, bottleneck > cm1_width, fewer than 2 actions.
  void validate() const;
  // Bottlenecks wider than the default are allowed but reported.
  bool bottleneck_flagged() const noexcept { return arch == Architecture::LatentGoal && bottleneck > kDefaultBottleneck; }
  std::size_t input_width() const noexcept { return feature_width + instruction_width; }
  std::size_t fused_width() const noexcept {
    return arch == Architecture::LatentGoal ? cm2_width + bottleneck : cm1_width;
  }
  bool operator==(const NetConfig&) const = default;
};

struct Tensor {
  std::string name;
  std::size_t rows = 0, cols = 0;
  std::vector<double> values;
  std::size_t size() const noexcept { return values.size(); }
};

/// Parameter blocks, in a fixed order. Input layers (cm1.w, cm2.w) are
/// stored input-major (rows = inputs) so sparse one-hot inputs touch only
/// their own rows; every other weight is output-major.
class NetParams {
 public:
  enum Block : std::size_t {
    Cm1W, Cm1B, BotW, BotB, Cm2W, Cm2B,
    Wz, Uz, Bz, Wc, Uc, Bc,
    ActW, ActB, CriW, CriB,
    kBlocks
  };

  static NetParams zeros(const NetConfig& cfg);
  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, zero biases, seeded by cfg.seed.
  static NetParams init(const NetConfig& cfg);

  const NetConfig& config() const noexcept { return cfg_; }
  Tensor& operator[](Block b) { return tensors_[b]; }
  const Tensor& operator[](Block b) const { return tensors_[b]; }
  std::span<Tensor> tensors() noexcept { return tensors_; }
  std::span<const Tensor> tensors() const noexcept { return tensors_; }
  Tensor* find(std::string_view name);
  std::size_t parameter_count() const noexcept;
  void set_zero();
  bool operator==(const NetParams& o) const;

 private:
  NetConfig cfg_;
  std::vector<Tensor> tensors_;
};

/// Everything the backward pass needs from one forward step.
struct StepCache {
  std::vector<std::uint32_t> nz_in;  // nonzero positions of [feature, instruction]
  std::vector<double> val_in;
  std::vector<std::uint32_t> nz_feat;  // nonzero positions of feature (LatentGoal)
  std::vector<double> val_feat;
  std::vector<double> a1;      // CM1 / dense activations
  std::vector<double> latent;  // bottleneck output
  std::vector<double> s;       // CM2 activations
  std::vector<double> u;       // fused input to the cell
  std::vector<double> h_prev, z, c, h;
  std::vector<double> logits, probs;
  double value = 0.0;
};

struct NetOutput {
  std::vector<double> probs;
  double value = 0.0;
  std::vector<double> hidden;
};

/// One step. `hidden` must have the recurrent width (zeros at episode start).
/// Throws DimensionMismatch on wrong input sizes.
NetOutput net_forward(const NetParams& p, std::span<const double> feature, std::span<const double> instruction,
                      std::span<const double> hidden, StepCache* cache = nullptr);
void net_forward_into(const NetParams& p, std::span<const double> feature, std::span<const double> instruction,
                      std::span<const double> hidden, StepCache& cache);

struct RolloutStep {
  StepCache cache;
  int action = 0;
  double reward = 0.0;
  bool done = false;  // the episode ended on this step; the next step starts from a zero hidden state
};

struct Rollout {
  std::vector<RolloutStep> steps;
  double bootstrap = 0.0;  // V of the state after the last step, 0 when that step was terminal
};

struct LossWeights {
  double gamma = 0.99;
  double value_weight = 0.5;
  double entropy_weight = 1e-3;
};

struct LossStats {
  double policy = 0.0;
  double value = 0.0;
  double entropy = 0.0;
  std::size_t steps = 0;
};

/// n-step returns R_t = r_t + gamma * R_{t+1} (cut at done steps, seeded with
/// the bootstrap).
std::vector<double> rollout_returns(const Rollout& r, double gamma);

/// Adds scale * d/dtheta of
///   sum_t  -A_t log pi(a_t) + value_weight (R_t - V_t)^2 - entropy_weight H(pi_t)
/// to `grads`, with A_t = R_t - V_t held constant, backpropagating through
/// the recurrent cell across the rollout.
LossStats accumulate_gradients(const NetParams& p, const Rollout& r, const LossWeights& w, double scale,
                               NetParams& grads);

double global_norm(const NetParams& g);

int sample_action(std::span<const double> probs, std::mt19937_64& rng);
int argmax_action(std::span<const double> probs);

}  // namespace sattl::agents
