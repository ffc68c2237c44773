#include "sattl/evaluate.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "sattl/errors.hpp"

namespace sattl::agents {

double normalized_score(double mean, double best) noexcept {
  if (mean == best) return 100.0;
  const double denom = std::abs(best) > 1e-12 ? std::abs(best) : 1.0;
  return 100.0 + 100.0 * (mean - best) / denom;
}

std::vector<std::vector<double>> ResultTable::normalized() const {
  std::vector<std::vector<double>> out(rows.size(), std::vector<double>(sizes.size(), 0.0));
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) best = std::max(best, r.sizes[j].mean);
    for (std::size_t i = 0; i < rows.size(); ++i) out[i][j] = normalized_score(rows[i].sizes[j].mean, best);
  }
  return out;
}

void ResultTable::write_csv(std::ostream& os) const {
  os << "policy,size,episode,return\n";
  for (const auto& r : rows)
    for (const auto& s : r.sizes)
      for (std::size_t i = 0; i < s.returns.size(); ++i) os << r.policy << ',' << s.n << ',' << i << ',' << s.returns[i] << '\n';
}

void ResultTable::write_summary_csv(std::ostream& os) const {
  const auto norm = normalized();
  os << "policy,size,mean,sd,normalized\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < sizes.size(); ++j)
      os << rows[i].policy << ',' << sizes[j] << ',' << rows[i].sizes[j].mean << ',' << rows[i].sizes[j].sd << ','
         << norm[i][j] << '\n';
}

namespace {

// Runs `count` jobs over a bounded pool; job i writes only slot i.
template <class Job>
void parallel_for(std::size_t count, unsigned workers, const Job& job) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) job(0u, i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) job(w, i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void summarize(SizeResult& s) {
  const auto n = static_cast<double>(s.returns.size());
  if (s.returns.empty()) return;
  double sum = 0.0;
  for (double r : s.returns) sum += r;
  s.mean = sum / n;
  double var = 0.0;
  for (double r : s.returns) var += (r - s.mean) * (r - s.mean);
  s.sd = std::sqrt(var / n);
}

}  // namespace

ResultTable evaluate(const std::vector<const Policy*>& policies, const grid::ObjectCatalog& catalog,
                     const EvalConfig& cfg) {
  ResultTable table;
  table.sizes = cfg.sizes;
  // Episodes are generated once per size and shared across policies.
  for (const Policy* p : policies) table.rows.push_back({p->name(), {}});
  for (int n : cfg.sizes) {
    const std::uint64_t size_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(n));
    std::vector<std::optional<EpisodeSpec>> eps(cfg.maps_per_size);
    parallel_for(cfg.maps_per_size, cfg.workers,
                 [&](unsigned, std::size_t i) { eps[i] = make_episode(catalog, cfg.draw, n, mix_seed(size_seed, i)); });
    for (std::size_t pi = 0; pi < policies.size(); ++pi) {
      SizeResult sr;
      sr.n = n;
      sr.returns.assign(cfg.maps_per_size, 0.0);
      std::vector<std::unique_ptr<Policy>> clones;
      for (unsigned w = 0; w < std::max(1u, cfg.workers); ++w) clones.push_back(policies[pi]->clone());
      parallel_for(cfg.maps_per_size, cfg.workers, [&](unsigned w, std::size_t i) {
        std::mt19937_64 rng(mix_seed(mix_seed(size_seed, i), 0xac7));
        sr.returns[i] = run_episode(*clones[w], catalog, eps[i]->map, eps[i]->task, cfg.feed, rng).ret;
      });
      summarize(sr);
      table.rows[pi].sizes.push_back(std::move(sr));
    }
  }
  return table;
}

ResultTable evaluate(const Policy& policy, const grid::ObjectCatalog& catalog, const EvalConfig& cfg) {
  return evaluate(std::vector<const Policy*>{&policy}, catalog, cfg);
}

ControlTable control_experiment(const Policy& policy, const grid::ObjectCatalog& catalog, const ControlConfig& cfg) {
  EpisodeDraw draw;
  draw.mode = catalog.mode();
  draw.split = grid::Split::Train;
  draw.categories = {grid::TaskCategory::NegativeCond};
  draw.constraint_min = cfg.hazard_min;
  draw.constraint_max = cfg.hazard_max;
  draw.distractor_min = 0;
  draw.distractor_max = 2;

  std::vector<std::optional<EpisodeSpec>> eps(cfg.n_tasks);
  parallel_for(cfg.n_tasks, cfg.workers,
               [&](unsigned, std::size_t i) { eps[i] = make_episode(catalog, draw, cfg.n, mix_seed(cfg.seed, i)); });

  RandomPolicy walker(catalog.mode());
  auto mean_of = [&](const Policy& p, Feed feed) {
    std::vector<double> r(cfg.n_tasks, 0.0);
    std::vector<std::unique_ptr<Policy>> clones;
    for (unsigned w = 0; w < std::max(1u, cfg.workers); ++w) clones.push_back(p.clone());
    parallel_for(cfg.n_tasks, cfg.workers, [&](unsigned w, std::size_t i) {
      std::mt19937_64 rng(mix_seed(mix_seed(cfg.seed, i), 0xac7));
      r[i] = run_episode(*clones[w], catalog, eps[i]->map, eps[i]->task, feed, rng).ret;
    });
    double s = 0.0;
    for (double v : r) s += v;
    return cfg.n_tasks ? s / static_cast<double>(cfg.n_tasks) : 0.0;
  };
  ControlTable t;
  t.reliable = mean_of(policy, Feed::Reliable);
  t.occluded = mean_of(policy, Feed::Occluded);
  t.deceptive = mean_of(policy, Feed::Deceptive);
  t.random = mean_of(walker, Feed::Reliable);
  return t;
}

}  // namespace sattl::agents
