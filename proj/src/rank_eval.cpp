#include "topo/rank_eval.hpp"

#include <algorithm>
#include <cmath>

#include "topo/error.hpp"

namespace topo {

namespace {

double tau_impl(const std::vector<double>& scores, const std::vector<double>& truths,
                bool weighted) {
  if (scores.size() != truths.size()) throw data_error("score/truth length mismatch");
  if (scores.size() < 2) throw data_error("correlation needs at least 2 items");
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i]) || !std::isfinite(truths[i]))
      throw data_error("non-finite value in correlation input");
  }
  bool truths_vary = false;
  for (std::size_t i = 1; i < truths.size(); ++i) truths_vary |= truths[i] != truths[0];
  if (!truths_vary)
    throw numeric_error("correlation undefined: all ground-truth values are equal");

  const std::size_t n = scores.size();
  // 0-based ranks under the ground-truth ordering, best truth first.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return truths[a] != truths[b] ? truths[a] > truths[b] : a < b;
  });
  std::vector<double> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[order[k]] = static_cast<double>(k);

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (truths[i] == truths[j] || scores[i] == scores[j]) continue;  // tied pair
      double w = weighted ? 1.0 / (rank[i] + 1.0) + 1.0 / (rank[j] + 1.0) : 1.0;
      bool concordant = (truths[i] - truths[j]) * (scores[i] - scores[j]) > 0.0;
      num += concordant ? w : -w;
      den += w;
    }
  }
  if (den == 0.0) return 0.0;  // every scored pair tied
  return num / den;
}

}  // namespace

double weighted_kendall_tau(const std::vector<double>& scores,
                            const std::vector<double>& truths) {
  return tau_impl(scores, truths, true);
}

double kendall_tau(const std::vector<double>& scores, const std::vector<double>& truths) {
  return tau_impl(scores, truths, false);
}

RankingReport evaluate_zoo(const ZooScores& zoo, const std::map<std::string, double>& truths) {
  RankingReport report;
  std::vector<double> s, t;
  for (const auto& f : zoo.fused) {
    auto it = truths.find(f.model_id);
    if (it == truths.end())
      throw data_error("missing ground truth for model '" + f.model_id + "'");
    report.pairs.push_back({f.model_id, f.fused, it->second});
    s.push_back(f.fused);
    t.push_back(it->second);
  }
  report.tau_weighted = weighted_kendall_tau(s, t);
  report.tau_plain = kendall_tau(s, t);
  return report;
}

}  // namespace topo
