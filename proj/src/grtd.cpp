#include "topo/grtd.hpp"

#include <algorithm>
#include <cmath>

#include "topo/error.hpp"
#include "topo/graph_mst.hpp"

namespace topo {

GrtdResult grtd_score(const std::vector<std::pair<StageRole, SampleSet>>& sets,
                      const GrtdConfig& cfg) {
  if (sets.empty()) throw data_error("grtd: no decoder stages configured");
  GrtdResult r;
  for (const auto& [stage, set] : sets) {
    if (set.size() < 2) throw data_error("grtd: stage " + stage.to_string() + " has < 2 points");
    DistanceMatrix m(set);

    double feat_weight = mst_dense_native(m).total_weight;
    double lambda = cfg.lambda.median ? median_interclass_distance(m) : cfg.lambda.value;
    double sem_weight;
    if (lambda == 0.0) {
      // All inter-class distances collapse to the clip value; every
      // semantic edge is 0.
      sem_weight = 0.0;
    } else {
      sem_weight = mst_dense_semantic(m, lambda).total_weight;
    }

    GrtdStage s;
    s.stage = stage;
    s.feat_weight = feat_weight;
    s.sem_weight = sem_weight;
    s.divergence = -std::abs(feat_weight - sem_weight);
    r.per_stage.push_back(s);
  }
  std::sort(r.per_stage.begin(), r.per_stage.end(),
            [](const GrtdStage& a, const GrtdStage& b) { return a.stage < b.stage; });
  double sum = 0.0;
  for (const auto& s : r.per_stage) sum += s.divergence;
  r.score = sum / static_cast<double>(r.per_stage.size());
  return r;
}

}  // namespace topo
