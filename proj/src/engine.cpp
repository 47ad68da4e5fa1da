#include "topo/engine.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "topo/error.hpp"
#include "topo/rng.hpp"

namespace topo {

namespace {

std::uint64_t stage_case_seed(std::uint64_t base, const StageRole& stage, int case_index) {
  std::uint64_t code = static_cast<std::uint64_t>(stage.index) * 4 +
                       (stage.kind == StageRole::Kind::Decoder ? 1 : 2);
  return SplitMix64::mix(SplitMix64::mix(base, code), static_cast<std::uint64_t>(case_index));
}

ModelMetrics score_model(const ZooManifest& manifest, const ModelEntry& entry,
                         const EngineOptions& opts) {
  ModelMetrics m;
  m.model_id = entry.model_id;
  m.dice = entry.dice;

  std::vector<StageRole> decoder_stages, encoder_stages;
  for (const auto& s : entry.stages) {
    (s.role.kind == StageRole::Kind::Decoder ? decoder_stages : encoder_stages).push_back(s.role);
  }

  // GRTD: per case, sample each decoder stage and average divergences.
  double grtd_sum = 0.0;
  for (int c = 0; c < manifest.task.num_cases(); ++c) {
    std::vector<std::pair<StageRole, SampleSet>> sets;
    for (const auto& role : decoder_stages) {
      StageFeatureDump dump = load_stage_dump(manifest, entry, role, c);
      SamplingConfig cfg = opts.sampling;
      cfg.seed = stage_case_seed(opts.sampling.seed, role, c);
      sets.emplace_back(role, stratified_sample(dump, cfg));
    }
    GrtdConfig gcfg;
    gcfg.lambda = opts.lambda;
    grtd_sum += grtd_score(sets, gcfg).score;
  }
  m.grtd = grtd_sum / static_cast<double>(manifest.task.num_cases());

  // LBTC: pool patches over encoder stages and cases.
  std::vector<StageFeatureDump> dumps;
  for (const auto& role : encoder_stages) {
    for (int c = 0; c < manifest.task.num_cases(); ++c) {
      dumps.push_back(load_stage_dump(manifest, entry, role, c));
    }
  }
  m.lbtc = lbtc_score(dumps, opts.lbtc).score;
  return m;
}

}  // namespace

std::vector<ModelMetrics> score_zoo(const ZooManifest& manifest, const EngineOptions& opts) {
  if (manifest.models.empty()) throw data_error("manifest lists no models");
  const std::size_t n = manifest.models.size();
  std::vector<ModelMetrics> out(n);

  int threads = std::max(1, opts.threads);
  if (threads == 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = score_model(manifest, manifest.models[i], opts);
    return out;
  }

  // Models are independent; results land in index order, so the artifact is
  // identical for any thread count.
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = score_model(manifest, manifest.models[i], opts);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min<int>(threads, static_cast<int>(n)); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace topo
