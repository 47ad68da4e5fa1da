#pragma once

#include <string>
#include <vector>

#include "topo/core_types.hpp"

namespace topo {

struct FusionConfig {
  double gamma = 1.0;
  double beta = 0.0;
  int num_classes = 1;
};

// Task-complexity gate: sigmoid(gamma * ln(num_classes) + beta). Natural
// log; strictly increasing in num_classes for gamma > 0.
double gate(const FusionConfig& cfg);

// (v - min) / (max - min); a degenerate range maps every value to 0.5.
std::vector<double> minmax_normalize(const std::vector<double>& values);

struct ZooEntry {
  std::string model_id;
  double grtd = 0.0;
  double lbtc = 0.0;
};

struct FusedScore {
  std::string model_id;
  double fused = 0.0;
};

struct ZooScores {
  std::vector<ZooEntry> entries;
  std::vector<FusedScore> fused;
  double alpha = 0.5;
};

// Convex blend of the min-max-normalized metric columns:
// S = alpha * N(grtd) + (1 - alpha) * N(lbtc).
ZooScores fuse(const std::vector<ZooEntry>& zoo, const FusionConfig& cfg);

struct PilotModel {
  std::string model_id;
  double grtd = 0.0;
  double lbtc = 0.0;
  double ground_truth = 0.0;
};

std::vector<std::pair<double, double>> default_calibration_grid();

// Picks the (gamma, beta) grid point whose fused ranking maximizes weighted
// Kendall's tau against the pilot ground truth; ties resolve toward the
// point nearest (1, 0), then lexicographically.
FusionConfig calibrate_pilot(const std::vector<PilotModel>& pilot, int num_classes,
                             const std::vector<std::pair<double, double>>& grid);

}  // namespace topo
