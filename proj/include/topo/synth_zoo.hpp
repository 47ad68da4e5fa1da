#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "topo/core_types.hpp"
#include "topo/io_ingest.hpp"

namespace topo {

// Target-topology regime: Fragmented scatters many small foreground blobs
// (lesion-like), Structured places few large contiguous regions
// (organ-like).
struct SynthRegime {
  enum class Kind { Fragmented, Structured };
  Kind kind = Kind::Structured;
  int num_classes = 2;   // including background
  int components = 1;    // foreground blob count
  double noise_sigma = 1.2;
  double separation = 6.0;  // mutual distance between class centroids

  static SynthRegime fragmented(int classes = 2) {
    return {Kind::Fragmented, classes, 12, 1.2, 6.0};
  }
  static SynthRegime structured(int classes = 5) {
    return {Kind::Structured, classes, classes - 1, 1.2, 6.0};
  }
};

struct SynthModelSpec {
  std::string model_id;
  double quality = 0.5;  // in [0, 1]; drives cluster tightness and boundary sharpness
  // Per-model stream for the regime-dependent corruption that is
  // deliberately uncorrelated with quality.
  std::uint64_t scramble_seed = 0;
};

struct SynthTask {
  SynthRegime regime;
  std::vector<std::int32_t> labels;
  std::array<std::int64_t, 3> shape{0, 0, 0};
};

SynthTask generate_task(const SynthRegime& regime, const std::array<std::int64_t, 3>& shape,
                        std::uint64_t seed);

// Per-voxel features: class centroid + Gaussian noise whose sigma shrinks
// with quality; boundary voxels flip to the adjacent class centroid with
// probability proportional to (1 - quality). On Fragmented tasks the
// decoder stages also carry a quality-independent per-model noise floor,
// and on Structured tasks the encoder stages carry quality-independent
// extra boundary flips, reproducing the regimes where one metric is
// informative and the other is not.
StageFeatureDump generate_model_features(const SynthTask& task, const SynthModelSpec& spec,
                                         const StageRole& stage, int feature_dim,
                                         std::uint64_t seed);

struct SynthZooConfig {
  SynthRegime regime = SynthRegime::structured();
  int num_models = 7;
  std::array<std::int64_t, 3> shape{32, 32, 32};
  int feature_dim = 16;
  int num_cases = 1;
  std::uint64_t seed = 0;
};

// Emits label volumes, per-model stage dumps (one decoder stage, one
// encoder stage) and a zoo.json manifest with quality-derived Dice values.
// Returns the manifest path. Model quality is strictly increasing in model
// index.
std::string write_synth_zoo(const std::string& out_dir, const SynthZooConfig& cfg);

}  // namespace topo
