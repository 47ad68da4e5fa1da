#pragma once

#include <map>
#include <string>
#include <vector>

#include "topo/fusion.hpp"

namespace topo {

// Hyperbolic additive-weighted Kendall correlation. Each pair (i, j) is
// weighted by 1/(r_i + 1) + 1/(r_j + 1) where r is the 0-based rank under
// the ground-truth ordering (best truth = rank 0, ties broken by index).
// Pairs tied in either list contribute to neither numerator nor
// denominator. Throws when truths are all equal (correlation undefined);
// returns 0 when every scored pair is tied.
double weighted_kendall_tau(const std::vector<double>& scores,
                            const std::vector<double>& truths);

// Plain (unit-weight) Kendall's tau with the same tie rule.
double kendall_tau(const std::vector<double>& scores, const std::vector<double>& truths);

struct RankingReport {
  struct Pair {
    std::string model_id;
    double score = 0.0;
    double ground_truth = 0.0;
  };
  std::vector<Pair> pairs;
  double tau_weighted = 0.0;
  double tau_plain = 0.0;
};

RankingReport evaluate_zoo(const ZooScores& zoo, const std::map<std::string, double>& truths);

}  // namespace topo
