#include "sattl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "sattl/errors.hpp"

namespace sattl::harness {

double percentile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const double pos = q / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::vector<CampaignSummaryRow> campaign_eval(const std::vector<const agents::Policy*>& policies,
                                              const grid::ObjectCatalog& catalog, const CampaignConfig& cfg) {
  if (cfg.runs == 0) throw ConfigError("runs must be positive");
  std::vector<agents::ResultTable> tables;
  for (std::size_t run = 0; run < cfg.runs; ++run) {
    agents::EvalConfig ec = cfg.eval;
    ec.seed = agents::mix_seed(cfg.eval.seed, run);
    tables.push_back(agents::evaluate(policies, catalog, ec));
  }

  std::vector<CampaignSummaryRow> rows;
  for (std::size_t p = 0; p < policies.size(); ++p)
    for (std::size_t s = 0; s < cfg.eval.sizes.size(); ++s) {
      std::vector<double> means;
      for (const auto& t : tables) means.push_back(t.rows[p].sizes[s].mean);
      CampaignSummaryRow row;
      row.policy = policies[p]->name();
      row.size = cfg.eval.sizes[s];
      row.p25 = percentile(means, 25);
      row.p50 = percentile(means, 50);
      row.p75 = percentile(means, 75);
      double sum = 0.0;
      for (double m : means) sum += m;
      row.mean = sum / static_cast<double>(means.size());
      rows.push_back(row);
    }
  for (std::size_t s = 0; s < cfg.eval.sizes.size(); ++s) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < policies.size(); ++p) best = std::max(best, rows[p * cfg.eval.sizes.size() + s].mean);
    for (std::size_t p = 0; p < policies.size(); ++p) {
      auto& r = rows[p * cfg.eval.sizes.size() + s];
      r.normalized = agents::normalized_score(r.mean, best);
    }
  }

  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    std::ofstream ep(cfg.out / "episodes.csv");
    if (!ep) throw ConfigError("cannot write " + (cfg.out / "episodes.csv").string());
    ep << "run,policy,size,episode,return\n";
    for (std::size_t run = 0; run < tables.size(); ++run)
      for (const auto& r : tables[run].rows)
        for (const auto& s : r.sizes)
          for (std::size_t i = 0; i < s.returns.size(); ++i)
            ep << run << ',' << r.policy << ',' << s.n << ',' << i << ',' << s.returns[i] << '\n';
    std::ofstream sm(cfg.out / "summary.csv");
    if (!sm) throw ConfigError("cannot write " + (cfg.out / "summary.csv").string());
    sm << "policy,size,mean,p25,p50,p75,normalized\n";
    for (const auto& r : rows)
      sm << r.policy << ',' << r.size << ',' << r.mean << ',' << r.p25 << ',' << r.p50 << ',' << r.p75 << ','
         << r.normalized << '\n';
  }
  return rows;
}

}  // namespace sattl::harness
