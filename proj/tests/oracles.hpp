#pragma once

// Test-only oracles, independent of the library's algorithm choices:
// exhaustive spanning-tree enumeration (Prufer sequences) and a direct
// pair-enumeration weighted tau.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "topo/core_types.hpp"

namespace oracles {

inline std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int n) {
  std::vector<int> deg(static_cast<std::size_t>(n), 1);
  for (int s : seq) deg[static_cast<std::size_t>(s)]++;
  std::vector<std::pair<int, int>> edges;
  for (int s : seq) {
    for (int j = 0; j < n; ++j) {
      if (deg[static_cast<std::size_t>(j)] == 1) {
        edges.emplace_back(j, s);
        deg[static_cast<std::size_t>(j)]--;
        deg[static_cast<std::size_t>(s)]--;
        break;
      }
    }
  }
  int u = -1, v = -1;
  for (int j = 0; j < n; ++j) {
    if (deg[static_cast<std::size_t>(j)] == 1) (u < 0 ? u : v) = j;
  }
  edges.emplace_back(u, v);
  return edges;
}

// Minimum total weight over all n^(n-2) labeled spanning trees of K_n.
inline double mst_bruteforce(int n, const std::function<double(int, int)>& w) {
  if (n < 2) throw std::runtime_error("mst_bruteforce needs n >= 2");
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> seq(static_cast<std::size_t>(std::max(0, n - 2)), 0);
  for (;;) {
    double total = 0.0;
    for (auto [a, b] : prufer_decode(seq, n)) total += w(a, b);
    best = std::min(best, total);
    int k = static_cast<int>(seq.size()) - 1;
    while (k >= 0 && seq[static_cast<std::size_t>(k)] == n - 1) {
      seq[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
    seq[static_cast<std::size_t>(k)]++;
  }
  return best;
}

// Direct transcription of the hyperbolic additive weighting.
inline double weighted_tau_oracle(const std::vector<double>& scores,
                                  const std::vector<double>& truths) {
  const std::size_t n = scores.size();
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
      if (truths[i] == truths[j] || scores[i] == scores[j]) continue;
      double w = 1.0 / (rank[i] + 1.0) + 1.0 / (rank[j] + 1.0);
      bool conc = (truths[i] - truths[j]) * (scores[i] - scores[j]) > 0.0;
      num += conc ? w : -w;
      den += w;
    }
  }
  return den == 0.0 ? 0.0 : num / den;
}

inline topo::SampleSet make_set(const std::vector<std::vector<double>>& feats,
                                const std::vector<int>& labels, int num_classes) {
  topo::SampleSet set;
  set.feature_dim = static_cast<int>(feats.at(0).size());
  set.num_classes = num_classes;
  for (std::size_t i = 0; i < feats.size(); ++i) {
    topo::LabeledPoint p;
    p.features = feats[i];
    p.label = labels.at(i);
    p.voxel = {0, 0, static_cast<std::int64_t>(i)};
    set.points.push_back(std::move(p));
  }
  return set;
}

}  // namespace oracles
