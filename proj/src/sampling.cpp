#include "topo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "topo/error.hpp"
#include "topo/rng.hpp"

namespace topo {

VoxelIndex map_to_grid(const VoxelIndex& v, const std::array<std::int64_t, 3>& from,
                       const std::array<std::int64_t, 3>& to) {
  VoxelIndex out;
  for (int a = 0; a < 3; ++a) {
    if (from[a] == to[a]) {
      out[a] = v[a];
      continue;
    }
    // Center-aligned nearest neighbor; exact halves round toward the
    // lower index.
    double pos = (static_cast<double>(v[a]) + 0.5) * static_cast<double>(to[a]) /
                     static_cast<double>(from[a]) -
                 0.5;
    double f = std::floor(pos + 0.5);
    if (pos + 0.5 == f) f -= 1.0;
    out[a] = std::clamp(static_cast<std::int64_t>(f), std::int64_t{0}, to[a] - 1);
  }
  return out;
}

namespace {

// Partial Fisher-Yates: the first `take` entries of `pool` end up being a
// uniform without-replacement draw.
std::vector<std::int64_t> draw(std::vector<std::int64_t>& pool, std::size_t take,
                               SplitMix64& rng) {
  for (std::size_t k = 0; k < take; ++k) {
    std::size_t j = k + static_cast<std::size_t>(rng.bounded(pool.size() - k));
    std::swap(pool[k], pool[j]);
  }
  return {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take)};
}

}  // namespace

SampleSet stratified_sample(const StageFeatureDump& dump, const SamplingConfig& cfg) {
  if (cfg.budget < 2) throw usage_error("sampling budget must be >= 2");
  const std::int64_t total = dump.num_voxels();
  if (total == 0) throw data_error("empty volume");
  if (!(cfg.foreground_fraction > 0.0 && cfg.foreground_fraction < 1.0))
    throw usage_error("foreground fraction must lie in (0, 1)");

  const int num_classes = dump.num_classes;
  std::vector<std::vector<std::int64_t>> strata(static_cast<std::size_t>(num_classes));
  for (std::int64_t i = 0; i < total; ++i) {
    strata[static_cast<std::size_t>(dump.labels[static_cast<std::size_t>(i)])].push_back(i);
  }

  // Foreground classes present, rarest first (count, then class id).
  std::vector<int> fg;
  for (int c = 1; c < num_classes; ++c) {
    if (!strata[static_cast<std::size_t>(c)].empty()) fg.push_back(c);
  }
  std::sort(fg.begin(), fg.end(), [&](int a, int b) {
    auto ca = strata[static_cast<std::size_t>(a)].size();
    auto cb = strata[static_cast<std::size_t>(b)].size();
    return ca != cb ? ca < cb : a < b;
  });

  std::vector<std::size_t> take(static_cast<std::size_t>(num_classes), 0);
  std::size_t fg_quota =
      fg.empty() ? 0
                 : std::min(cfg.budget, static_cast<std::size_t>(std::llround(
                                            static_cast<double>(cfg.budget) *
                                            cfg.foreground_fraction)));
  if (!fg.empty()) {
    std::size_t base = fg_quota / fg.size();
    std::size_t rem = fg_quota % fg.size();
    for (std::size_t k = 0; k < fg.size(); ++k) {
      std::size_t quota = base + (k < rem ? 1 : 0);
      take[static_cast<std::size_t>(fg[k])] =
          std::min(quota, strata[static_cast<std::size_t>(fg[k])].size());
    }
  }
  std::size_t taken = std::accumulate(take.begin(), take.end(), std::size_t{0});
  std::size_t bg_count = strata[0].size();
  take[0] = std::min(cfg.budget - taken, bg_count);
  taken += take[0];

  // Background was short too: hand the remainder back to foreground,
  // rarest first, round robin over spare capacity.
  while (taken < std::min(cfg.budget, static_cast<std::size_t>(total))) {
    bool progressed = false;
    for (int c : fg) {
      auto cs = static_cast<std::size_t>(c);
      if (taken >= cfg.budget) break;
      if (take[cs] < strata[cs].size()) {
        ++take[cs];
        ++taken;
        progressed = true;
      }
    }
    if (!progressed) break;
  }

  std::vector<std::int64_t> selected;
  selected.reserve(taken);
  for (int c = 0; c < num_classes; ++c) {
    auto cs = static_cast<std::size_t>(c);
    if (take[cs] == 0) continue;
    SplitMix64 rng(SplitMix64::mix(cfg.seed, static_cast<std::uint64_t>(c) + 1));
    auto picked = draw(strata[cs], take[cs], rng);
    selected.insert(selected.end(), picked.begin(), picked.end());
  }
  std::sort(selected.begin(), selected.end());

  const auto fgrid = dump.feature_grid();
  SampleSet set;
  set.feature_dim = dump.feature_dim();
  set.num_classes = num_classes;
  set.points.reserve(selected.size());
  for (std::int64_t lin : selected) {
    VoxelIndex v{lin / (dump.label_shape[1] * dump.label_shape[2]),
                 (lin / dump.label_shape[2]) % dump.label_shape[1],
                 lin % dump.label_shape[2]};
    LabeledPoint p;
    p.voxel = v;
    p.label = dump.labels[static_cast<std::size_t>(lin)];
    p.stage = dump.stage;
    p.features = dump.feature_at(map_to_grid(v, dump.label_shape, fgrid));
    set.points.push_back(std::move(p));
  }

  if (cfg.zscore && !set.points.empty()) {
    const int d = set.feature_dim;
    std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
    std::vector<double> var(static_cast<std::size_t>(d), 0.0);
    for (const auto& p : set.points)
      for (int k = 0; k < d; ++k) mean[static_cast<std::size_t>(k)] += p.features[static_cast<std::size_t>(k)];
    for (auto& m : mean) m /= static_cast<double>(set.points.size());
    for (const auto& p : set.points)
      for (int k = 0; k < d; ++k) {
        double dv = p.features[static_cast<std::size_t>(k)] - mean[static_cast<std::size_t>(k)];
        var[static_cast<std::size_t>(k)] += dv * dv;
      }
    for (auto& p : set.points)
      for (int k = 0; k < d; ++k) {
        auto ks = static_cast<std::size_t>(k);
        double sd = std::sqrt(var[ks] / static_cast<double>(set.points.size()));
        p.features[ks] = sd > 0.0 ? (p.features[ks] - mean[ks]) / sd : 0.0;
      }
  }
  return set;
}

}  // namespace topo
