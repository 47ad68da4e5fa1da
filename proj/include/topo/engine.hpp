#pragma once

#include <optional>
#include <string>
#include <vector>

#include "topo/fusion.hpp"
#include "topo/grtd.hpp"
#include "topo/io_ingest.hpp"
#include "topo/lbtc.hpp"
#include "topo/sampling.hpp"

namespace topo {

struct EngineOptions {
  SamplingConfig sampling;
  LbtcConfig lbtc;
  LambdaMode lambda = LambdaMode::median_interclass();
  int threads = 1;
};

struct ModelMetrics {
  std::string model_id;
  double grtd = 0.0;
  double lbtc = 0.0;
  std::optional<double> dice;
};

// Computes GRTD (decoder stages, per case, averaged) and LBTC (encoder
// stages, patches pooled over stages and cases) for every model in the
// manifest. Results are deterministic for a fixed (manifest, options)
// regardless of thread count.
std::vector<ModelMetrics> score_zoo(const ZooManifest& manifest, const EngineOptions& opts);

}  // namespace topo
