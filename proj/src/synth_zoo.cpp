#include "topo/synth_zoo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "topo/error.hpp"
#include "topo/lbtc.hpp"
#include "topo/rng.hpp"

namespace fs = std::filesystem;

namespace topo {

namespace {

constexpr double kSigmaMin = 0.25;
constexpr double kFlipBase = 0.45;

std::size_t linear(const std::array<std::int64_t, 3>& shape, std::int64_t x, std::int64_t y,
                   std::int64_t z) {
  return static_cast<std::size_t>((x * shape[1] + y) * shape[2] + z);
}

void carve_ball(std::vector<std::int32_t>& labels, const std::array<std::int64_t, 3>& shape,
                const std::array<std::int64_t, 3>& center, double radius, std::int32_t cls) {
  std::int64_t r = static_cast<std::int64_t>(std::ceil(radius));
  for (std::int64_t x = std::max<std::int64_t>(0, center[0] - r);
       x <= std::min(shape[0] - 1, center[0] + r); ++x)
    for (std::int64_t y = std::max<std::int64_t>(0, center[1] - r);
         y <= std::min(shape[1] - 1, center[1] + r); ++y)
      for (std::int64_t z = std::max<std::int64_t>(0, center[2] - r);
           z <= std::min(shape[2] - 1, center[2] + r); ++z) {
        double dx = static_cast<double>(x - center[0]);
        double dy = static_cast<double>(y - center[1]);
        double dz = static_cast<double>(z - center[2]);
        if (dx * dx + dy * dy + dz * dz <= radius * radius)
          labels[linear(shape, x, y, z)] = cls;
      }
}

}  // namespace

SynthTask generate_task(const SynthRegime& regime, const std::array<std::int64_t, 3>& shape,
                        std::uint64_t seed) {
  for (auto d : shape)
    if (d < 8) throw data_error("synthetic volume dimensions must be >= 8");
  if (regime.num_classes < 2) throw usage_error("synthetic task needs at least 2 classes");
  int fg_classes = regime.num_classes - 1;
  if (regime.components < fg_classes)
    throw usage_error("component count must cover every foreground class");

  SynthTask task;
  task.regime = regime;
  task.shape = shape;
  task.labels.assign(static_cast<std::size_t>(shape[0] * shape[1] * shape[2]), 0);
  SplitMix64 rng(SplitMix64::mix(seed, 0x7a51));

  if (regime.kind == SynthRegime::Kind::Structured) {
    // One large ball per component on jittered octant centers; octant
    // spacing keeps the regions disjoint.
    std::vector<std::array<std::int64_t, 3>> octants;
    for (int ox = 0; ox < 2; ++ox)
      for (int oy = 0; oy < 2; ++oy)
        for (int oz = 0; oz < 2; ++oz)
          octants.push_back({shape[0] / 4 + ox * shape[0] / 2, shape[1] / 4 + oy * shape[1] / 2,
                             shape[2] / 4 + oz * shape[2] / 2});
    if (regime.components > static_cast<int>(octants.size()))
      throw usage_error("structured regime supports at most 8 components");
    rng.shuffle(octants);
    double radius = static_cast<double>(*std::min_element(shape.begin(), shape.end())) / 5.5;
    for (int i = 0; i < regime.components; ++i) {
      std::array<std::int64_t, 3> c = octants[static_cast<std::size_t>(i)];
      for (auto& v : c) v += static_cast<std::int64_t>(rng.bounded(3)) - 1;
      carve_ball(task.labels, shape, c, radius, 1 + i % fg_classes);
    }
  } else {
    // Small balls on a lattice with spacing 6: radius <= 2 keeps every
    // pair of blobs separated by at least one background voxel.
    std::vector<std::array<std::int64_t, 3>> cells;
    for (std::int64_t x = 3; x < shape[0] - 2; x += 6)
      for (std::int64_t y = 3; y < shape[1] - 2; y += 6)
        for (std::int64_t z = 3; z < shape[2] - 2; z += 6) cells.push_back({x, y, z});
    if (regime.components > static_cast<int>(cells.size()))
      throw usage_error("fragmented regime: too many components for this volume size");
    rng.shuffle(cells);
    for (int i = 0; i < regime.components; ++i) {
      double radius = 1.0 + static_cast<double>(rng.bounded(2));
      carve_ball(task.labels, shape, cells[static_cast<std::size_t>(i)], radius,
                 1 + i % fg_classes);
    }
  }
  return task;
}

StageFeatureDump generate_model_features(const SynthTask& task, const SynthModelSpec& spec,
                                         const StageRole& stage, int feature_dim,
                                         std::uint64_t seed) {
  const auto& shape = task.shape;
  const auto& regime = task.regime;
  if (feature_dim < regime.num_classes)
    throw usage_error("feature_dim must be >= num_classes for centroid placement");

  const double q = std::clamp(spec.quality, 0.0, 1.0);
  double sigma = regime.noise_sigma * (1.0 - q) + kSigmaMin;
  // Probability that a boundary voxel's feature is drawn around the
  // adjacent class centroid instead of its own.
  double flip = kFlipBase * (1.0 - q);

  // Regime-dependent corruption, uncorrelated with quality.
  SplitMix64 scramble(SplitMix64::mix(spec.scramble_seed, 0xc0de));
  double scramble_u = scramble.uniform01();
  if (regime.kind == SynthRegime::Kind::Fragmented && stage.kind == StageRole::Kind::Decoder) {
    sigma += 0.4 + 2.6 * scramble_u;
  }
  if (regime.kind == SynthRegime::Kind::Structured && stage.kind == StageRole::Kind::Encoder) {
    flip = std::min(0.5, flip + 0.45 * scramble_u);
  }

  // Class centroids on scaled axis directions: pairwise distance equals
  // regime.separation exactly.
  const double coord = regime.separation / std::numbers::sqrt2;
  auto centroid = [&](int cls, int k) { return k == cls ? coord : 0.0; };

  // Boundary voxels and their adjacent classes.
  auto anchors = extract_boundary_anchors(task.labels, shape, Connectivity::Face6);
  std::vector<std::int32_t> mix_target(task.labels.size(), -1);
  for (const auto& a : anchors) {
    int own = task.labels[linear(shape, a.voxel[0], a.voxel[1], a.voxel[2])];
    for (int c : a.classes_adjacent) {
      if (c != own) {
        mix_target[linear(shape, a.voxel[0], a.voxel[1], a.voxel[2])] = c;
        break;  // smallest differing class, deterministic
      }
    }
  }

  StageFeatureDump dump;
  dump.stage = stage;
  dump.num_classes = regime.num_classes;
  dump.label_shape = shape;
  dump.labels = task.labels;
  dump.tensor_shape = {feature_dim, shape[0], shape[1], shape[2]};
  const std::size_t plane = static_cast<std::size_t>(shape[0] * shape[1] * shape[2]);
  dump.tensor.assign(static_cast<std::size_t>(feature_dim) * plane, 0.0f);

  SplitMix64 rng(SplitMix64::mix(seed, 0xfea7));
  for (std::size_t v = 0; v < plane; ++v) {
    int own = task.labels[v];
    int other = mix_target[v];
    int source = own;
    if (other >= 0 && rng.uniform01() < flip) source = other;
    for (int k = 0; k < feature_dim; ++k) {
      double value = centroid(source, k) + sigma * rng.normal();
      dump.tensor[static_cast<std::size_t>(k) * plane + v] = static_cast<float>(value);
    }
  }
  return dump;
}

std::string write_synth_zoo(const std::string& out_dir, const SynthZooConfig& cfg) {
  if (cfg.num_models < 2) throw usage_error("synthetic zoo needs at least 2 models");
  if (cfg.num_cases < 1) throw usage_error("synthetic zoo needs at least 1 case");
  fs::create_directories(out_dir);

  nlohmann::ordered_json manifest;
  manifest["task"]["name"] =
      cfg.regime.kind == SynthRegime::Kind::Fragmented ? "synth-fragmented" : "synth-structured";
  manifest["task"]["num_classes"] = cfg.regime.num_classes;

  std::vector<SynthTask> tasks;
  std::vector<std::string> case_files;
  for (int c = 0; c < cfg.num_cases; ++c) {
    SynthTask task = generate_task(cfg.regime, cfg.shape, SplitMix64::mix(cfg.seed, 100 + c));
    std::string name = "labels_case" + std::to_string(c) + ".bin";
    write_i32_volume((fs::path(out_dir) / name).string(), task.shape, task.labels);
    case_files.push_back(name);
    tasks.push_back(std::move(task));
  }
  manifest["task"]["cases"] = case_files;

  manifest["models"] = nlohmann::ordered_json::array();
  for (int m = 0; m < cfg.num_models; ++m) {
    SynthModelSpec spec;
    char idbuf[24];
    std::snprintf(idbuf, sizeof idbuf, "model_%02d", m);
    spec.model_id = idbuf;
    spec.quality = static_cast<double>(m) / static_cast<double>(cfg.num_models - 1);
    spec.scramble_seed = SplitMix64::mix(cfg.seed, 9000 + m);

    nlohmann::ordered_json jm;
    jm["id"] = spec.model_id;
    jm["dice"] = 0.30 + 0.65 * spec.quality;
    jm["stages"] = nlohmann::ordered_json::array();
    for (StageRole role : {StageRole{StageRole::Kind::Decoder, 0},
                           StageRole{StageRole::Kind::Encoder, 0}}) {
      std::vector<std::string> paths;
      for (int c = 0; c < cfg.num_cases; ++c) {
        StageFeatureDump dump = generate_model_features(
            tasks[static_cast<std::size_t>(c)], spec, role, cfg.feature_dim,
            SplitMix64::mix(cfg.seed, static_cast<std::uint64_t>(
                                          (m * 64 + c) * 4 +
                                          (role.kind == StageRole::Kind::Decoder ? 0 : 1))));
        std::string name = spec.model_id + "_" + role.to_string() + "_case" +
                           std::to_string(c) + ".bin";
        write_f32_tensor((fs::path(out_dir) / name).string(), dump.tensor_shape, dump.tensor);
        paths.push_back(name);
      }
      nlohmann::ordered_json js;
      js["role"] = role.kind == StageRole::Kind::Decoder ? "decoder" : "encoder";
      js["index"] = role.index;
      js["paths"] = paths;
      jm["stages"].push_back(js);
    }
    manifest["models"].push_back(jm);
  }

  std::string manifest_path = (fs::path(out_dir) / "zoo.json").string();
  std::ofstream out(manifest_path, std::ios::trunc);
  if (!out) throw io_error("cannot write manifest: " + manifest_path);
  out << manifest.dump(2) << "\n";
  return manifest_path;
}

}  // namespace topo
