#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "topo/core_types.hpp"

namespace topo {

// Feature tensor for one (model, stage, case) plus the case's label volume.
// The tensor may sit on a coarser grid than the labels; spatial shapes must
// be equal or strictly proportional (same scale on every axis).
struct StageFeatureDump {
  std::vector<float> tensor;               // channels-first, z fastest
  std::array<std::int64_t, 4> tensor_shape{0, 0, 0, 0};  // c, x, y, z
  std::vector<std::int32_t> labels;        // z fastest
  std::array<std::int64_t, 3> label_shape{0, 0, 0};      // x, y, z
  StageRole stage;
  int num_classes = 1;

  int feature_dim() const { return static_cast<int>(tensor_shape[0]); }
  std::array<std::int64_t, 3> feature_grid() const {
    return {tensor_shape[1], tensor_shape[2], tensor_shape[3]};
  }
  std::int64_t num_voxels() const {
    return label_shape[0] * label_shape[1] * label_shape[2];
  }
  std::int32_t label_at(const VoxelIndex& v) const {
    return labels[(v[0] * label_shape[1] + v[1]) * label_shape[2] + v[2]];
  }
  // Channel vector at a feature-grid position, promoted to f64.
  std::vector<double> feature_at(const VoxelIndex& g) const;
};

struct StageRef {
  StageRole role;
  std::vector<std::string> paths;  // one tensor blob per case
};

struct ModelEntry {
  std::string model_id;
  std::vector<StageRef> stages;
  std::optional<double> dice;  // ground-truth fine-tuning performance
};

struct TaskDescriptor {
  std::string name;
  int num_classes = 1;
  std::vector<std::string> label_volume_paths;  // one per case

  int num_cases() const { return static_cast<int>(label_volume_paths.size()); }
};

struct ZooManifest {
  TaskDescriptor task;
  std::vector<ModelEntry> models;
  std::string root_dir;  // manifest directory; relative paths resolve here
};

// Raw blob + JSON sidecar format. `path` names the .bin file; the sidecar
// is the same path with .json substituted for the extension.
struct TensorHeader {
  std::vector<std::int64_t> shape;
  std::string dtype;  // "f32" | "i32"
  std::string order;  // "cxyz" | "xyz"
};

void write_f32_tensor(const std::string& bin_path, const std::array<std::int64_t, 4>& shape,
                      const std::vector<float>& data);
void write_i32_volume(const std::string& bin_path, const std::array<std::int64_t, 3>& shape,
                      const std::vector<std::int32_t>& data);

std::pair<TensorHeader, std::vector<float>> load_f32_tensor(const std::string& bin_path);
std::pair<TensorHeader, std::vector<std::int32_t>> load_i32_volume(const std::string& bin_path);

// Parses zoo.json, resolves paths against the manifest directory, and checks
// every invariant eagerly (file existence, unique model ids, stage coverage,
// label ranges, shape proportionality).
ZooManifest load_manifest(const std::string& path);

StageFeatureDump load_stage_dump(const ZooManifest& manifest, const ModelEntry& entry,
                                 const StageRole& stage, int case_index);

}  // namespace topo
