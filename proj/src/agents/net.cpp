#include "sattl/net.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sattl/errors.hpp"
#include "sattl/kernels.hpp"

namespace sattl::agents {

const char* architecture_name(Architecture a) noexcept {
  return a == Architecture::LatentGoal ? "latent-goal" : "standard";
}

Architecture parse_architecture(std::string_view s) {
  if (s == "latent-goal" || s == "latent") return Architecture::LatentGoal;
  if (s == "standard") return Architecture::Standard;
  throw ConfigError("unknown architecture '" + std::string(s) + "'");
}

const char* activation_name(Activation a) noexcept { return a == Activation::Tanh ? "tanh" : "relu"; }

Activation parse_activation(std::string_view s) {
  if (s == "tanh") return Activation::Tanh;
  if (s == "relu") return Activation::Relu;
  throw ConfigError("unknown activation '" + std::string(s) + "'");
}

void NetConfig::validate() const {
  if (feature_width == 0 || instruction_width == 0) throw ConfigError("net input widths must be positive");
  if (cm1_width == 0 || recurrent == 0) throw ConfigError("net layer widths must be positive");
  if (actions < 2) throw ConfigError("net needs at least 2 actions");
  if (arch == Architecture::LatentGoal) {
    if (cm2_width == 0 || bottleneck == 0) throw ConfigError("net layer widths must be positive");
    if (bottleneck > cm1_width)
      throw ConfigError("bottleneck " + std::to_string(bottleneck) + " wider than cm1 " + std::to_string(cm1_width));
  }
}

namespace {

struct Shape {
  const char* name;
  std::size_t rows, cols;
};

std::vector<Shape> shapes(const NetConfig& c) {
  const bool lg = c.arch == Architecture::LatentGoal;
  const std::size_t U = c.fused_width(), R = c.recurrent;
  return {
      {"cm1.w", c.input_width(), c.cm1_width},
      {"cm1.b", 1, c.cm1_width},
      {"bottleneck.w", lg ? c.bottleneck : 0, lg ? c.cm1_width : 0},
      {"bottleneck.b", lg ? 1u : 0u, lg ? c.bottleneck : 0},
      {"cm2.w", lg ? c.feature_width : 0, lg ? c.cm2_width : 0},
      {"cm2.b", lg ? 1u : 0u, lg ? c.cm2_width : 0},
      {"cell.wz", R, U},
      {"cell.uz", R, R},
      {"cell.bz", 1, R},
      {"cell.wc", R, U},
      {"cell.uc", R, R},
      {"cell.bc", 1, R},
      {"actor.w", c.actions, R},
      {"actor.b", 1, c.actions},
      {"critic.w", 1, R},
      {"critic.b", 1, 1},
  };
}

}  // namespace

NetParams NetParams::zeros(const NetConfig& cfg) {
  cfg.validate();
  NetParams p;
  p.cfg_ = cfg;
  for (const auto& s : shapes(cfg)) p.tensors_.push_back({s.name, s.rows, s.cols, std::vector<double>(s.rows * s.cols, 0.0)});
  return p;
}

NetParams NetParams::init(const NetConfig& cfg) {
  NetParams p = zeros(cfg);
  std::mt19937_64 rng(cfg.seed);
  auto fill = [&](Block b, std::size_t fan_in, double gain) {
    const double lim = gain / std::sqrt(static_cast<double>(std::max<std::size_t>(fan_in, 1)));
    std::uniform_real_distribution<double> d(-lim, lim);
    for (auto& v : p.tensors_[b].values) v = d(rng);
  };
  fill(Cm1W, cfg.input_width(), 1.0);
  if (cfg.arch == Architecture::LatentGoal) {
    fill(BotW, cfg.cm1_width, 1.0);
    fill(Cm2W, cfg.feature_width, 1.0);
  }
  fill(Wz, cfg.fused_width(), 1.0);
  fill(Uz, cfg.recurrent, 1.0);
  fill(Wc, cfg.fused_width(), 1.0);
  fill(Uc, cfg.recurrent, 1.0);
  fill(ActW, cfg.recurrent, 0.1);
  fill(CriW, cfg.recurrent, 1.0);
  return p;
}

Tensor* NetParams::find(std::string_view name) {
  for (auto& t : tensors_)
    if (t.name == name) return &t;
  return nullptr;
}

std::size_t NetParams::parameter_count() const noexcept {
  std::size_t n = 0;
  for (const auto& t : tensors_) n += t.size();
  return n;
}

void NetParams::set_zero() {
  for (auto& t : tensors_) std::fill(t.values.begin(), t.values.end(), 0.0);
}

bool NetParams::operator==(const NetParams& o) const {
  if (!(cfg_ == o.cfg_) || tensors_.size() != o.tensors_.size()) return false;
  for (std::size_t i = 0; i < tensors_.size(); ++i)
    if (tensors_[i].values != o.tensors_[i].values) return false;
  return true;
}

namespace {

using B = NetParams::Block;

void gather(std::span<const double> x, std::size_t offset, std::vector<std::uint32_t>& nz, std::vector<double>& val) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) {
      nz.push_back(static_cast<std::uint32_t>(offset + i));
      val.push_back(x[i]);
    }
}

// y = b + sum_j x_j W[j, :] over the nonzero inputs.
void sparse_in(const Tensor& w, const Tensor& b, const std::vector<std::uint32_t>& nz, const std::vector<double>& val,
               std::vector<double>& y) {
  const auto& k = kernels::active();
  y.assign(b.values.begin(), b.values.end());
  for (std::size_t i = 0; i < nz.size(); ++i) k.axpy(val[i], &w.values[nz[i] * w.cols], y.data(), w.cols);
}

void activate(Activation a, std::vector<double>& y) {
  if (a == Activation::Tanh)
    for (auto& v : y) v = std::tanh(v);
  else
    for (auto& v : y) v = std::max(v, 0.0);
}

// dy *= act'(y), with y the activation output.
void activate_back(Activation a, const std::vector<double>& y, std::vector<double>& dy) {
  if (a == Activation::Tanh)
    for (std::size_t i = 0; i < y.size(); ++i) dy[i] *= 1.0 - y[i] * y[i];
  else
    for (std::size_t i = 0; i < y.size(); ++i) dy[i] = y[i] > 0.0 ? dy[i] : 0.0;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void dense(const Tensor& w, const Tensor& b, std::span<const double> x, std::vector<double>& y) {
  y.resize(w.rows);
  kernels::active().gemv(w.values.data(), x.data(), b.values.data(), y.data(), w.rows, w.cols);
}

}  // namespace

void net_forward_into(const NetParams& p, std::span<const double> feature, std::span<const double> instruction,
                      std::span<const double> hidden, StepCache& c) {
  const NetConfig& cfg = p.config();
  if (feature.size() != cfg.feature_width)
    throw DimensionMismatch("feature width " + std::to_string(feature.size()) + " != " + std::to_string(cfg.feature_width));
  if (instruction.size() != cfg.instruction_width)
    throw DimensionMismatch("instruction width " + std::to_string(instruction.size()) +
                            " != " + std::to_string(cfg.instruction_width));
  if (hidden.size() != cfg.recurrent)
    throw DimensionMismatch("hidden width " + std::to_string(hidden.size()) + " != " + std::to_string(cfg.recurrent));
  const auto& k = kernels::active();

  c.nz_in.clear();
  c.val_in.clear();
  gather(feature, 0, c.nz_in, c.val_in);
  gather(instruction, cfg.feature_width, c.nz_in, c.val_in);
  sparse_in(p[B::Cm1W], p[B::Cm1B], c.nz_in, c.val_in, c.a1);
  activate(cfg.activation, c.a1);

  if (cfg.arch == Architecture::LatentGoal) {
    dense(p[B::BotW], p[B::BotB], c.a1, c.latent);  // linear
    c.nz_feat.clear();
    c.val_feat.clear();
    gather(feature, 0, c.nz_feat, c.val_feat);
    sparse_in(p[B::Cm2W], p[B::Cm2B], c.nz_feat, c.val_feat, c.s);
    activate(cfg.activation, c.s);
    c.u.assign(c.s.begin(), c.s.end());
    c.u.insert(c.u.end(), c.latent.begin(), c.latent.end());
  } else {
    c.u = c.a1;
  }

  const std::size_t R = cfg.recurrent;
  c.h_prev.assign(hidden.begin(), hidden.end());
  std::vector<double> tmp(R);
  dense(p[B::Wz], p[B::Bz], c.u, c.z);
  k.gemv(p[B::Uz].values.data(), c.h_prev.data(), nullptr, tmp.data(), R, R);
  for (std::size_t i = 0; i < R; ++i) c.z[i] = sigmoid(c.z[i] + tmp[i]);
  dense(p[B::Wc], p[B::Bc], c.u, c.c);
  k.gemv(p[B::Uc].values.data(), c.h_prev.data(), nullptr, tmp.data(), R, R);
  for (std::size_t i = 0; i < R; ++i) c.c[i] = std::tanh(c.c[i] + tmp[i]);
  c.h.resize(R);
  for (std::size_t i = 0; i < R; ++i) c.h[i] = (1.0 - c.z[i]) * c.h_prev[i] + c.z[i] * c.c[i];

  dense(p[B::ActW], p[B::ActB], c.h, c.logits);
  const double mx = *std::max_element(c.logits.begin(), c.logits.end());
  c.probs.resize(c.logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < c.logits.size(); ++i) sum += c.probs[i] = std::exp(c.logits[i] - mx);
  for (auto& v : c.probs) v /= sum;
  c.value = k.dot(p[B::CriW].values.data(), c.h.data(), R) + p[B::CriB].values[0];
}

NetOutput net_forward(const NetParams& p, std::span<const double> feature, std::span<const double> instruction,
                      std::span<const double> hidden, StepCache* cache) {
  StepCache local;
  StepCache& c = cache ? *cache : local;
  net_forward_into(p, feature, instruction, hidden, c);
  return {c.probs, c.value, c.h};
}

std::vector<double> rollout_returns(const Rollout& r, double gamma) {
  std::vector<double> R(r.steps.size());
  double next = r.bootstrap;
  for (std::size_t t = r.steps.size(); t-- > 0;) {
    const auto& s = r.steps[t];
    next = s.reward + (s.done ? 0.0 : gamma * next);
    R[t] = next;
  }
  return R;
}

LossStats accumulate_gradients(const NetParams& p, const Rollout& r, const LossWeights& w, double scale,
                               NetParams& g) {
  const NetConfig& cfg = p.config();
  if (!(g.config() == cfg)) throw DimensionMismatch("gradient buffer has a different net config");
  const auto& k = kernels::active();
  const std::size_t R = cfg.recurrent, U = cfg.fused_width(), A = cfg.actions;
  const std::vector<double> returns = rollout_returns(r, w.gamma);

  LossStats stats;
  std::vector<double> dh(R, 0.0), dh_carry(R, 0.0), dz(R), dc(R), du(U), dlogits(A), da1(cfg.cm1_width), ds;
  for (std::size_t t = r.steps.size(); t-- > 0;) {
    const RolloutStep& st = r.steps[t];
    const StepCache& c = st.cache;
    if (st.action < 0 || static_cast<std::size_t>(st.action) >= A) throw DimensionMismatch("action out of range");
    const double V = c.value;
    const double adv = returns[t] - V;
    double entropy = 0.0;
    for (double q : c.probs)
      if (q > 0.0) entropy -= q * std::log(q);
    stats.policy += -adv * std::log(std::max(c.probs[static_cast<std::size_t>(st.action)], 1e-300));
    stats.value += (returns[t] - V) * (returns[t] - V);
    stats.entropy += entropy;
    ++stats.steps;

    // heads
    for (std::size_t i = 0; i < A; ++i) {
      const double q = c.probs[i];
      const double onehot = static_cast<std::size_t>(st.action) == i ? 1.0 : 0.0;
      const double ent = q > 0.0 ? w.entropy_weight * q * (std::log(q) + entropy) : 0.0;
      dlogits[i] = scale * (adv * (q - onehot) + ent);
    }
    const double dv = scale * (-2.0 * w.value_weight * (returns[t] - V));

    // Gradient reaching h_t: from step t+1 (unless this step ended the episode) and the heads.
    if (st.done) std::fill(dh_carry.begin(), dh_carry.end(), 0.0);
    dh = dh_carry;
    k.ger_acc(dlogits.data(), c.h.data(), g[B::ActW].values.data(), A, R);
    for (std::size_t i = 0; i < A; ++i) g[B::ActB].values[i] += dlogits[i];
    k.gemv_t_acc(p[B::ActW].values.data(), dlogits.data(), dh.data(), A, R);
    k.axpy(dv, c.h.data(), g[B::CriW].values.data(), R);
    g[B::CriB].values[0] += dv;
    k.axpy(dv, p[B::CriW].values.data(), dh.data(), R);

    // cell
    std::fill(dh_carry.begin(), dh_carry.end(), 0.0);
    for (std::size_t i = 0; i < R; ++i) {
      dh_carry[i] = dh[i] * (1.0 - c.z[i]);
      dz[i] = dh[i] * (c.c[i] - c.h_prev[i]) * c.z[i] * (1.0 - c.z[i]);
      dc[i] = dh[i] * c.z[i] * (1.0 - c.c[i] * c.c[i]);
    }
    k.ger_acc(dz.data(), c.u.data(), g[B::Wz].values.data(), R, U);
    k.ger_acc(dz.data(), c.h_prev.data(), g[B::Uz].values.data(), R, R);
    k.axpy(1.0, dz.data(), g[B::Bz].values.data(), R);
    k.ger_acc(dc.data(), c.u.data(), g[B::Wc].values.data(), R, U);
    k.ger_acc(dc.data(), c.h_prev.data(), g[B::Uc].values.data(), R, R);
    k.axpy(1.0, dc.data(), g[B::Bc].values.data(), R);
    k.gemv_t_acc(p[B::Uz].values.data(), dz.data(), dh_carry.data(), R, R);
    k.gemv_t_acc(p[B::Uc].values.data(), dc.data(), dh_carry.data(), R, R);
    std::fill(du.begin(), du.end(), 0.0);
    k.gemv_t_acc(p[B::Wz].values.data(), dz.data(), du.data(), R, U);
    k.gemv_t_acc(p[B::Wc].values.data(), dc.data(), du.data(), R, U);

    // encoders
    if (cfg.arch == Architecture::LatentGoal) {
      ds.assign(du.begin(), du.begin() + static_cast<std::ptrdiff_t>(cfg.cm2_width));
      const double* dlat = du.data() + cfg.cm2_width;
      activate_back(cfg.activation, c.s, ds);
      auto& cm2w = g[B::Cm2W];
      for (std::size_t j = 0; j < c.nz_feat.size(); ++j)
        k.axpy(c.val_feat[j], ds.data(), &cm2w.values[c.nz_feat[j] * cm2w.cols], cm2w.cols);
      k.axpy(1.0, ds.data(), g[B::Cm2B].values.data(), cfg.cm2_width);
      k.ger_acc(dlat, c.a1.data(), g[B::BotW].values.data(), cfg.bottleneck, cfg.cm1_width);
      k.axpy(1.0, dlat, g[B::BotB].values.data(), cfg.bottleneck);
      std::fill(da1.begin(), da1.end(), 0.0);
      k.gemv_t_acc(p[B::BotW].values.data(), dlat, da1.data(), cfg.bottleneck, cfg.cm1_width);
    } else {
      da1.assign(du.begin(), du.end());
    }
    activate_back(cfg.activation, c.a1, da1);
    auto& cm1w = g[B::Cm1W];
    for (std::size_t j = 0; j < c.nz_in.size(); ++j)
      k.axpy(c.val_in[j], da1.data(), &cm1w.values[c.nz_in[j] * cm1w.cols], cm1w.cols);
    k.axpy(1.0, da1.data(), g[B::Cm1B].values.data(), cfg.cm1_width);
  }
  return stats;
}

double global_norm(const NetParams& g) {
  double s = 0.0;
  for (const auto& t : g.tensors()) s += kernels::active().dot(t.values.data(), t.values.data(), t.size());
  return std::sqrt(s);
}

int sample_action(std::span<const double> probs, std::mt19937_64& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

int argmax_action(std::span<const double> probs) {
  return static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

}  // namespace sattl::agents
