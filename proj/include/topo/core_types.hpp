#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace topo {

// A network stage a feature dump came from. Decoder stages feed the global
// divergence score; encoder stages feed the boundary-consistency score.
struct StageRole {
  enum class Kind { Decoder, Encoder };
  Kind kind = Kind::Decoder;
  int index = 0;

  friend bool operator==(const StageRole& a, const StageRole& b) {
    return a.kind == b.kind && a.index == b.index;
  }
  friend bool operator<(const StageRole& a, const StageRole& b) {
    return std::tie(a.kind, a.index) < std::tie(b.kind, b.index);
  }
  std::string to_string() const {
    return (kind == Kind::Decoder ? "decoder" : "encoder") + std::to_string(index);
  }
};

using VoxelIndex = std::array<std::int64_t, 3>;

// One sampled feature vector with its class label and spatial origin.
struct LabeledPoint {
  std::vector<double> features;
  int label = 0;
  VoxelIndex voxel{0, 0, 0};
  StageRole stage;
};

// Ordered collection of points sharing a feature dimension; point order is
// deterministic (sorted by (stage, voxel_index)) so all downstream
// tie-breaking is reproducible.
struct SampleSet {
  std::vector<LabeledPoint> points;
  int feature_dim = 0;
  int num_classes = 1;

  std::size_t size() const { return points.size(); }
};

struct TransferabilityScore {
  std::string model_id;
  double grtd = 0.0;   // <= 0
  double lbtc = 0.0;   // in [0, 1]
  double alpha = 0.5;  // in (0, 1)
  double fused = 0.0;  // in [0, 1] after zoo normalization
};

struct ValidationIssue {
  enum class Kind { Ok, DimensionMismatch, NonFiniteFeature, LabelOutOfRange };
  Kind kind = Kind::Ok;
  std::size_t point_index = 0;
  std::string message;

  bool ok() const { return kind == Kind::Ok; }
};

// Total over all finite inputs; reports the first violated invariant.
ValidationIssue validate_sample_set(const SampleSet& set);

}  // namespace topo
