#include "topo/lbtc.hpp"

#include <algorithm>

#include "topo/error.hpp"
#include "topo/graph_mst.hpp"
#include "topo/rng.hpp"
#include "topo/sampling.hpp"

namespace topo {

namespace {

std::int32_t label_at(const std::vector<std::int32_t>& labels,
                      const std::array<std::int64_t, 3>& shape, std::int64_t x, std::int64_t y,
                      std::int64_t z) {
  return labels[static_cast<std::size_t>((x * shape[1] + y) * shape[2] + z)];
}

// Builds patches without the no-valid-patch check so the aggregator can
// tolerate individual dumps yielding nothing.
std::vector<LocalPatch> gather_patches(const std::vector<BoundaryAnchor>& anchors,
                                       const StageFeatureDump& dump, const LbtcConfig& cfg,
                                       std::uint64_t seed) {
  std::vector<std::size_t> order(anchors.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  SplitMix64 rng(seed);
  rng.shuffle(order);

  const auto& shape = dump.label_shape;
  const auto fgrid = dump.feature_grid();
  std::vector<LocalPatch> patches;
  for (std::size_t oi : order) {
    if (static_cast<int>(patches.size()) >= cfg.num_patches) break;
    const BoundaryAnchor& a = anchors[oi];
    LocalPatch patch;
    patch.anchor = a;
    patch.radius = cfg.radius;
    patch.points.feature_dim = dump.feature_dim();
    patch.points.num_classes = dump.num_classes;

    const std::int64_t r = cfg.radius;
    std::set<int> labels_seen;
    for (std::int64_t x = std::max<std::int64_t>(0, a.voxel[0] - r);
         x <= std::min(shape[0] - 1, a.voxel[0] + r); ++x) {
      for (std::int64_t y = std::max<std::int64_t>(0, a.voxel[1] - r);
           y <= std::min(shape[1] - 1, a.voxel[1] + r); ++y) {
        for (std::int64_t z = std::max<std::int64_t>(0, a.voxel[2] - r);
             z <= std::min(shape[2] - 1, a.voxel[2] + r); ++z) {
          LabeledPoint p;
          p.voxel = {x, y, z};
          p.label = label_at(dump.labels, shape, x, y, z);
          p.stage = dump.stage;
          p.features = dump.feature_at(map_to_grid(p.voxel, shape, fgrid));
          labels_seen.insert(p.label);
          patch.points.points.push_back(std::move(p));
        }
      }
    }
    // Single-class or degenerate windows carry no cross-class signal.
    if (patch.points.size() < 2 || labels_seen.size() < 2) continue;
    patches.push_back(std::move(patch));
  }
  std::sort(patches.begin(), patches.end(), [](const LocalPatch& a, const LocalPatch& b) {
    return a.anchor.voxel < b.anchor.voxel;
  });
  return patches;
}

}  // namespace

std::vector<BoundaryAnchor> extract_boundary_anchors(
    const std::vector<std::int32_t>& labels, const std::array<std::int64_t, 3>& shape,
    Connectivity connectivity) {
  if (labels.empty() || shape[0] * shape[1] * shape[2] != static_cast<std::int64_t>(labels.size()))
    throw data_error("label volume empty or shape inconsistent");

  std::vector<BoundaryAnchor> anchors;
  for (std::int64_t x = 0; x < shape[0]; ++x) {
    for (std::int64_t y = 0; y < shape[1]; ++y) {
      for (std::int64_t z = 0; z < shape[2]; ++z) {
        std::int32_t own = label_at(labels, shape, x, y, z);
        std::set<int> adjacent;
        auto probe = [&](std::int64_t nx, std::int64_t ny, std::int64_t nz) {
          if (nx < 0 || ny < 0 || nz < 0 || nx >= shape[0] || ny >= shape[1] || nz >= shape[2])
            return;
          std::int32_t nb = label_at(labels, shape, nx, ny, nz);
          if (nb != own) adjacent.insert(nb);
        };
        if (connectivity == Connectivity::Face6) {
          probe(x - 1, y, z);
          probe(x + 1, y, z);
          probe(x, y - 1, z);
          probe(x, y + 1, z);
          probe(x, y, z - 1);
          probe(x, y, z + 1);
        } else {
          for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
              for (std::int64_t dz = -1; dz <= 1; ++dz) {
                if (dx == 0 && dy == 0 && dz == 0) continue;
                probe(x + dx, y + dy, z + dz);
              }
        }
        if (!adjacent.empty()) {
          adjacent.insert(own);
          anchors.push_back({{x, y, z}, std::move(adjacent)});
        }
      }
    }
  }
  return anchors;  // scan order is already sorted by voxel index
}

std::vector<LocalPatch> sample_patches(const std::vector<BoundaryAnchor>& anchors,
                                       const StageFeatureDump& dump, const LbtcConfig& cfg) {
  if (anchors.empty()) throw data_error("no boundary anchors to sample from");
  if (cfg.num_patches < 1) throw usage_error("num_patches must be >= 1");
  if (cfg.radius < 1) throw usage_error("patch radius must be >= 1");
  auto patches = gather_patches(anchors, dump, cfg, cfg.seed);
  if (patches.empty()) throw data_error("no valid patch obtainable");
  return patches;
}

double leakage_rate(const LocalPatch& patch) {
  if (patch.points.size() < 2) throw data_error("patch has fewer than 2 points");
  DistanceMatrix m(patch.points);
  SpanningTree t = mst_dense_native(m);
  const auto& labels = m.labels();
  int cross = 0;
  for (const auto& e : t.edges) {
    if (labels[static_cast<std::size_t>(e.i)] != labels[static_cast<std::size_t>(e.j)]) ++cross;
  }
  return static_cast<double>(cross) / static_cast<double>(patch.points.size() - 1);
}

LbtcResult lbtc_score(const std::vector<StageFeatureDump>& dumps, const LbtcConfig& cfg) {
  if (dumps.empty()) throw data_error("lbtc: no encoder stage dumps provided");
  LbtcResult r;
  for (std::size_t di = 0; di < dumps.size(); ++di) {
    const auto& dump = dumps[di];
    auto anchors = extract_boundary_anchors(dump.labels, dump.label_shape, cfg.connectivity);
    if (anchors.empty()) continue;
    auto patches = gather_patches(anchors, dump, cfg, SplitMix64::mix(cfg.seed, di));
    for (const auto& p : patches) {
      r.per_patch.push_back({p.anchor.voxel, leakage_rate(p)});
    }
  }
  if (r.per_patch.empty()) throw data_error("lbtc: no valid patch across stages");
  double sum = 0.0;
  for (const auto& p : r.per_patch) sum += p.rho;
  r.score = 1.0 - sum / static_cast<double>(r.per_patch.size());
  return r;
}

}  // namespace topo
