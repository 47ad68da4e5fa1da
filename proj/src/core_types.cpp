#include "topo/core_types.hpp"

#include <cmath>

namespace topo {

ValidationIssue validate_sample_set(const SampleSet& set) {
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    const LabeledPoint& p = set.points[i];
    if (static_cast<int>(p.features.size()) != set.feature_dim || set.feature_dim < 1) {
      return {ValidationIssue::Kind::DimensionMismatch, i,
              "point " + std::to_string(i) + ": feature length " +
                  std::to_string(p.features.size()) + " != feature_dim " +
                  std::to_string(set.feature_dim)};
    }
    for (double v : p.features) {
      if (!std::isfinite(v)) {
        return {ValidationIssue::Kind::NonFiniteFeature, i,
                "point " + std::to_string(i) + ": non-finite feature value"};
      }
    }
    if (p.label < 0 || p.label >= set.num_classes) {
      return {ValidationIssue::Kind::LabelOutOfRange, i,
              "point " + std::to_string(i) + ": label " + std::to_string(p.label) +
                  " out of range for " + std::to_string(set.num_classes) + " classes"};
    }
  }
  return {};
}

}  // namespace topo
