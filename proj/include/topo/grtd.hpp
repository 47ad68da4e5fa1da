#pragma once

#include <vector>

#include "topo/core_types.hpp"

namespace topo {

// Lambda policy for the semantic graph: a fixed value, or the median
// inter-class distance of the stage's sample set (scale-adaptive default).
struct LambdaMode {
  bool median = true;
  double value = 0.0;

  static LambdaMode median_interclass() { return {true, 0.0}; }
  static LambdaMode fixed(double v) { return {false, v}; }
};

struct GrtdConfig {
  LambdaMode lambda = LambdaMode::median_interclass();
};

struct GrtdStage {
  StageRole stage;
  double feat_weight = 0.0;
  double sem_weight = 0.0;
  double divergence = 0.0;  // -(|feat_weight - sem_weight|), always <= 0
};

struct GrtdResult {
  std::vector<GrtdStage> per_stage;
  double score = 0.0;  // mean of per-stage divergences, <= 0
};

// Global topology divergence: per stage, the negated absolute difference
// between native and semantic MST total weights; averaged uniformly over
// stages. Closer to 0 means better feature-label alignment.
GrtdResult grtd_score(const std::vector<std::pair<StageRole, SampleSet>>& sets,
                      const GrtdConfig& cfg);

}  // namespace topo
