#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "topo/core_types.hpp"
#include "topo/io_ingest.hpp"

namespace topo {

enum class Connectivity { Face6, Full26 };

// A voxel on the morphological gradient of the label field: at least one
// neighbor under the configured connectivity carries a different label.
struct BoundaryAnchor {
  VoxelIndex voxel{0, 0, 0};
  std::set<int> classes_adjacent;  // own label plus every differing neighbor label
};

struct LocalPatch {
  BoundaryAnchor anchor;
  SampleSet points;  // >= 2 points, >= 2 distinct labels
  int radius = 0;
};

struct LbtcConfig {
  int num_patches = 64;  // per stage per case
  int radius = 2;        // Chebyshev radius, 5x5x5 window by default
  Connectivity connectivity = Connectivity::Face6;
  std::uint64_t seed = 0;
};

// All boundary voxels of the label field, sorted by voxel index. A uniform
// volume yields an empty list.
std::vector<BoundaryAnchor> extract_boundary_anchors(
    const std::vector<std::int32_t>& labels, const std::array<std::int64_t, 3>& shape,
    Connectivity connectivity);

// Draws min(num_patches, |anchors|) anchors uniformly without replacement,
// gathers each Chebyshev window (clipped at volume bounds), and keeps only
// patches with >= 2 points and >= 2 distinct labels; discarded windows are
// replaced from the remaining anchors until the quota is met or anchors run
// out. Throws when not a single valid patch can be formed.
std::vector<LocalPatch> sample_patches(const std::vector<BoundaryAnchor>& anchors,
                                       const StageFeatureDump& dump, const LbtcConfig& cfg);

// Topological leakage rate: fraction of local native-MST edges whose
// endpoints carry different labels.
double leakage_rate(const LocalPatch& patch);

struct PatchLeak {
  VoxelIndex anchor{0, 0, 0};
  double rho = 0.0;
};

struct LbtcResult {
  std::vector<PatchLeak> per_patch;
  double score = 0.0;  // 1 - mean(rho), in [0, 1]
};

// Aggregates leakage over all retained patches across the given encoder
// stage dumps (stage-major, then case order via the dumps vector). Sub-seeds
// per dump are derived deterministically from cfg.seed and the dump's
// position.
LbtcResult lbtc_score(const std::vector<StageFeatureDump>& dumps, const LbtcConfig& cfg);

}  // namespace topo
