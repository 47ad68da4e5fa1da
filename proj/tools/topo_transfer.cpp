// topo-transfer: training-free transferability scoring for segmentation
// model zoos. Subcommands: synth, score, rank, calibrate, eval.
//
// Standard output carries machine-readable JSON only; progress and
// human-readable tables go to standard error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "topo/engine.hpp"
#include "topo/error.hpp"
#include "topo/json_out.hpp"
#include "topo/rank_eval.hpp"
#include "topo/rng.hpp"
#include "topo/simd/dist_kernel.hpp"
#include "topo/synth_zoo.hpp"
#include "topo/version.hpp"

using nlohmann::ordered_json;

namespace {

struct ScoreFlags {
  std::string manifest;
  std::size_t budget = 1000;
  double fg_frac = 0.5;
  bool zscore = false;
  std::string lambda = "median";
  int patches = 64;
  int radius = 2;
  int connectivity = 6;
  double gamma = 1.0;
  double beta = 0.0;
  bool calibrate = false;
  std::string grid = "default";
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
};

void add_score_flags(CLI::App* cmd, ScoreFlags& f) {
  cmd->add_option("--manifest", f.manifest, "Path to zoo.json")->required();
  cmd->add_option("--budget", f.budget, "Samples per stage per case (default 1000)");
  cmd->add_option("--fg-frac", f.fg_frac, "Foreground sample fraction in (0,1) (default 0.5)");
  cmd->add_flag("--zscore", f.zscore, "Z-score sampled features per stage (default off)");
  cmd->add_option("--lambda", f.lambda,
                  "Semantic clip: 'median' (inter-class median distance) or a fixed value");
  cmd->add_option("--patches", f.patches, "Boundary patches per stage per case (default 64)");
  cmd->add_option("--radius", f.radius, "Patch Chebyshev radius in voxels (default 2)");
  cmd->add_option("--connectivity", f.connectivity, "Boundary connectivity: 6 or 26 (default 6)")
      ->check(CLI::IsMember({6, 26}));
  cmd->add_option("--gamma", f.gamma, "Gate scale on log(num_classes) (default 1)");
  cmd->add_option("--beta", f.beta, "Gate offset (default 0)");
  cmd->add_flag("--calibrate", f.calibrate,
                "Pick (gamma, beta) from the grid using manifest Dice values");
  cmd->add_option("--grid", f.grid, "Calibration grid: 'default' or a JSON file of [gamma,beta]");
  cmd->add_option("--seed", f.seed, "PRNG seed (splitmix64, default 0)");
  cmd->add_option("--threads", f.threads, "Worker threads; results are thread-count invariant");
  cmd->add_option("--out", f.out, "Write JSON here instead of stdout");
}

topo::EngineOptions engine_options(const ScoreFlags& f) {
  topo::EngineOptions opts;
  opts.sampling.budget = f.budget;
  opts.sampling.foreground_fraction = f.fg_frac;
  opts.sampling.seed = f.seed;
  opts.sampling.zscore = f.zscore;
  opts.lbtc.num_patches = f.patches;
  opts.lbtc.radius = f.radius;
  opts.lbtc.connectivity =
      f.connectivity == 6 ? topo::Connectivity::Face6 : topo::Connectivity::Full26;
  opts.lbtc.seed = topo::SplitMix64::mix(f.seed, 0x1b7c);
  if (f.lambda == "median") {
    opts.lambda = topo::LambdaMode::median_interclass();
  } else {
    double v = 0.0;
    try {
      v = std::stod(f.lambda);
    } catch (...) {
      throw topo::usage_error("--lambda must be 'median' or a number");
    }
    if (!(v > 0.0)) throw topo::usage_error("--lambda value must be > 0");
    opts.lambda = topo::LambdaMode::fixed(v);
  }
  opts.threads = f.threads;
  return opts;
}

ordered_json config_json(const ScoreFlags& f) {
  ordered_json c;
  c["manifest"] = f.manifest;
  c["budget"] = f.budget;
  c["fg_frac"] = f.fg_frac;
  c["zscore"] = f.zscore;
  c["lambda"] = f.lambda;
  c["patches"] = f.patches;
  c["radius"] = f.radius;
  c["connectivity"] = f.connectivity;
  c["gamma"] = f.gamma;
  c["beta"] = f.beta;
  c["calibrate"] = f.calibrate;
  c["seed"] = f.seed;
  c["prng"] = topo::SplitMix64::kAlgorithmId;
  return c;
}

std::vector<std::pair<double, double>> load_grid(const std::string& spec) {
  if (spec == "default") return topo::default_calibration_grid();
  std::ifstream in(spec);
  if (!in) throw topo::io_error("missing grid file: " + spec);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw topo::io_error("malformed grid file " + spec + ": " + e.what());
  }
  std::vector<std::pair<double, double>> grid;
  for (const auto& p : j) grid.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  if (grid.empty()) throw topo::usage_error("grid file lists no points");
  return grid;
}

void emit(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << topo::dump_stable_json(j);
  } else {
    topo::write_json_file(out_path, j);
  }
}

struct ZooRun {
  std::vector<topo::ModelMetrics> metrics;
  topo::ZooScores scores;
  topo::FusionConfig fusion;
};

ZooRun run_scoring(const ScoreFlags& f) {
  topo::ZooManifest manifest = topo::load_manifest(f.manifest);
  std::cerr << "scoring " << manifest.models.size() << " models on task '" << manifest.task.name
            << "' (distance kernel: " << topo::simd::kernel_name() << ")\n";
  ZooRun run;
  run.metrics = topo::score_zoo(manifest, engine_options(f));

  run.fusion = topo::FusionConfig{f.gamma, f.beta, manifest.task.num_classes};
  if (f.calibrate) {
    std::vector<topo::PilotModel> pilot;
    for (const auto& m : run.metrics) {
      if (!m.dice) throw topo::data_error("calibration requires Dice for model " + m.model_id);
      pilot.push_back({m.model_id, m.grtd, m.lbtc, *m.dice});
    }
    run.fusion = topo::calibrate_pilot(pilot, manifest.task.num_classes, load_grid(f.grid));
    std::cerr << "calibrated gamma=" << run.fusion.gamma << " beta=" << run.fusion.beta << "\n";
  }

  std::vector<topo::ZooEntry> zoo;
  for (const auto& m : run.metrics) zoo.push_back({m.model_id, m.grtd, m.lbtc});
  run.scores = topo::fuse(zoo, run.fusion);
  return run;
}

ordered_json scores_json(const ScoreFlags& f, const ZooRun& run, bool sorted) {
  ordered_json j;
  j["version"] = topo::kVersion;
  j["config"] = config_json(f);
  j["gamma"] = run.fusion.gamma;
  j["beta"] = run.fusion.beta;
  j["alpha"] = run.scores.alpha;
  std::vector<std::size_t> order(run.metrics.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  if (sorted) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      double fa = run.scores.fused[a].fused, fb = run.scores.fused[b].fused;
      return fa != fb ? fa > fb : run.metrics[a].model_id < run.metrics[b].model_id;
    });
  }
  j["models"] = ordered_json::array();
  for (std::size_t i : order) {
    ordered_json m;
    m["id"] = run.metrics[i].model_id;
    m["grtd"] = run.metrics[i].grtd;
    m["lbtc"] = run.metrics[i].lbtc;
    m["alpha"] = run.scores.alpha;
    m["fused"] = run.scores.fused[i].fused;
    j["models"].push_back(m);
  }
  return j;
}

int cmd_synth(const std::string& regime, int models, int classes, int cases, int size,
              int feature_dim, std::uint64_t seed, const std::string& out_dir) {
  topo::SynthZooConfig cfg;
  if (regime == "fragmented") {
    cfg.regime = topo::SynthRegime::fragmented(classes > 0 ? classes : 2);
  } else if (regime == "structured") {
    cfg.regime = topo::SynthRegime::structured(classes > 0 ? classes : 5);
  } else {
    throw topo::usage_error("--regime must be 'fragmented' or 'structured'");
  }
  cfg.num_models = models;
  cfg.num_cases = cases;
  cfg.shape = {size, size, size};
  cfg.feature_dim = feature_dim;
  cfg.seed = seed;
  std::string manifest = topo::write_synth_zoo(out_dir, cfg);
  ordered_json j;
  j["version"] = topo::kVersion;
  j["manifest"] = manifest;
  j["regime"] = regime;
  j["models"] = models;
  j["cases"] = cases;
  j["seed"] = seed;
  j["prng"] = topo::SplitMix64::kAlgorithmId;
  std::cout << topo::dump_stable_json(j);
  return 0;
}

int cmd_eval(const std::string& zoo_path, const std::string& scores_path,
             const std::string& out_path) {
  topo::ZooManifest manifest = topo::load_manifest(zoo_path);
  std::map<std::string, double> truths;
  for (const auto& m : manifest.models) {
    if (m.dice) truths[m.model_id] = *m.dice;
  }

  std::ifstream in(scores_path);
  if (!in) throw topo::io_error("missing scores file: " + scores_path);
  nlohmann::json js;
  try {
    in >> js;
  } catch (const nlohmann::json::exception& e) {
    throw topo::io_error("malformed scores file " + scores_path + ": " + e.what());
  }

  topo::ZooScores zoo;
  try {
    zoo.alpha = js.at("alpha").get<double>();
    for (const auto& m : js.at("models")) {
      zoo.entries.push_back({m.at("id").get<std::string>(), m.at("grtd").get<double>(),
                             m.at("lbtc").get<double>()});
      zoo.fused.push_back({m.at("id").get<std::string>(), m.at("fused").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw topo::io_error("malformed scores file " + scores_path + ": " + e.what());
  }

  topo::RankingReport report = topo::evaluate_zoo(zoo, truths);

  std::cerr << "model                score        truth\n";
  for (const auto& p : report.pairs) {
    char line[128];
    std::snprintf(line, sizeof line, "%-20s %.6f  %.6f\n", p.model_id.c_str(), p.score,
                  p.ground_truth);
    std::cerr << line;
  }
  std::cerr << "weighted tau: " << report.tau_weighted << "  plain tau: " << report.tau_plain
            << "\n";

  ordered_json j;
  j["version"] = topo::kVersion;
  j["tau_weighted"] = report.tau_weighted;
  j["tau_plain"] = report.tau_plain;
  j["pairs"] = ordered_json::array();
  for (const auto& p : report.pairs) {
    ordered_json pj;
    pj["id"] = p.model_id;
    pj["score"] = p.score;
    pj["truth"] = p.ground_truth;
    j["pairs"].push_back(pj);
  }
  emit(j, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topo-transfer: topology-driven transferability scoring for model zoos"};
  app.require_subcommand(1);

  ScoreFlags score_flags;
  ScoreFlags rank_flags;
  ScoreFlags cal_flags;

  auto* score_cmd = app.add_subcommand("score", "Per-model GRTD/LBTC/fused scores");
  add_score_flags(score_cmd, score_flags);
  auto* rank_cmd = app.add_subcommand("rank", "Models sorted by fused score");
  add_score_flags(rank_cmd, rank_flags);
  auto* cal_cmd = app.add_subcommand("calibrate", "Grid-search (gamma, beta) on manifest Dice");
  add_score_flags(cal_cmd, cal_flags);

  std::string eval_zoo, eval_scores, eval_out;
  auto* eval_cmd = app.add_subcommand("eval", "Weighted Kendall tau of scores vs Dice");
  eval_cmd->add_option("--zoo", eval_zoo, "Path to zoo.json with Dice values")->required();
  eval_cmd->add_option("--scores", eval_scores, "Scores JSON from 'score' or 'rank'")->required();
  eval_cmd->add_option("--out", eval_out, "Write report here instead of stdout");

  std::string synth_regime = "structured", synth_out;
  int synth_models = 7, synth_classes = 0, synth_cases = 1, synth_size = 32, synth_dim = 16;
  std::uint64_t synth_seed = 0;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic zoo with known ordering");
  synth_cmd->add_option("--regime", synth_regime, "fragmented | structured")->required();
  synth_cmd->add_option("--models", synth_models, "Zoo size (default 7)");
  synth_cmd->add_option("--classes", synth_classes,
                        "Class count incl. background (default 2 fragmented, 5 structured)");
  synth_cmd->add_option("--cases", synth_cases, "Cases per task (default 1)");
  synth_cmd->add_option("--size", synth_size, "Cubic volume edge length (default 32)");
  synth_cmd->add_option("--feature-dim", synth_dim, "Feature channels (default 16)");
  synth_cmd->add_option("--seed", synth_seed, "PRNG seed (splitmix64, default 0)");
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth_cmd) {
      return cmd_synth(synth_regime, synth_models, synth_classes, synth_cases, synth_size,
                       synth_dim, synth_seed, synth_out);
    }
    if (*eval_cmd) {
      return cmd_eval(eval_zoo, eval_scores, eval_out);
    }
    if (*score_cmd || *rank_cmd) {
      const ScoreFlags& f = *score_cmd ? score_flags : rank_flags;
      ZooRun run = run_scoring(f);
      emit(scores_json(f, run, /*sorted=*/rank_cmd->parsed()), f.out);
      return 0;
    }
    if (*cal_cmd) {
      ScoreFlags f = cal_flags;
      f.calibrate = true;
      ZooRun run = run_scoring(f);
      ordered_json j;
      j["version"] = topo::kVersion;
      j["config"] = config_json(f);
      j["gamma"] = run.fusion.gamma;
      j["beta"] = run.fusion.beta;
      j["alpha"] = run.scores.alpha;
      emit(j, f.out);
      return 0;
    }
  } catch (const topo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
