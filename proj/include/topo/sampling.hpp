#pragma once

#include <cstdint>

#include "topo/core_types.hpp"
#include "topo/io_ingest.hpp"

namespace topo {

struct SamplingConfig {
  std::size_t budget = 1000;          // total samples per stage per case
  double foreground_fraction = 0.5;   // in (0, 1)
  std::uint64_t seed = 0;
  bool zscore = false;  // optional per-stage z-scoring of sampled features
};

// Maps a label-grid voxel to the nearest feature-grid voxel, center-aligned,
// coordinates scaled proportionally, ties toward the lower index.
VoxelIndex map_to_grid(const VoxelIndex& v, const std::array<std::int64_t, 3>& from,
                       const std::array<std::int64_t, 3>& to);

// Stratified sampling: a foreground quota of round(budget * fg_fraction) is
// split equally across present foreground classes (remainders to the rarest
// classes first); background fills the rest. Short strata hand their
// shortfall to background, then back to foreground, so the output size is
// always min(budget, total voxels). Uniform without replacement per stratum;
// output sorted by voxel index.
SampleSet stratified_sample(const StageFeatureDump& dump, const SamplingConfig& cfg);

}  // namespace topo
