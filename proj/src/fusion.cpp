#include "topo/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "topo/error.hpp"
#include "topo/rank_eval.hpp"

namespace topo {

double gate(const FusionConfig& cfg) {
  if (cfg.num_classes < 1) throw usage_error("num_classes must be >= 1");
  if (!std::isfinite(cfg.gamma) || !std::isfinite(cfg.beta))
    throw usage_error("gamma and beta must be finite");
  double kappa = std::log(static_cast<double>(cfg.num_classes));
  return 1.0 / (1.0 + std::exp(-(cfg.gamma * kappa + cfg.beta)));
}

std::vector<double> minmax_normalize(const std::vector<double>& values) {
  if (values.size() < 2) throw data_error("min-max normalization needs at least 2 values");
  for (double v : values) {
    if (!std::isfinite(v)) throw data_error("non-finite value in normalization input");
  }
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  std::vector<double> out(values.size());
  if (*mn == *mx) {
    std::fill(out.begin(), out.end(), 0.5);
    return out;
  }
  double range = *mx - *mn;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *mn) / range;
  return out;
}

ZooScores fuse(const std::vector<ZooEntry>& zoo, const FusionConfig& cfg) {
  if (zoo.size() < 2) throw data_error("fusion needs at least 2 models");
  std::vector<double> grtd_col(zoo.size()), lbtc_col(zoo.size());
  for (std::size_t i = 0; i < zoo.size(); ++i) {
    grtd_col[i] = zoo[i].grtd;
    lbtc_col[i] = zoo[i].lbtc;
  }
  auto ng = minmax_normalize(grtd_col);
  auto nl = minmax_normalize(lbtc_col);

  ZooScores s;
  s.entries = zoo;
  s.alpha = gate(cfg);
  s.fused.reserve(zoo.size());
  for (std::size_t i = 0; i < zoo.size(); ++i) {
    s.fused.push_back({zoo[i].model_id, s.alpha * ng[i] + (1.0 - s.alpha) * nl[i]});
  }
  return s;
}

std::vector<std::pair<double, double>> default_calibration_grid() {
  std::vector<std::pair<double, double>> grid;
  for (double g = -2.0; g <= 2.0; g += 1.0)
    for (double b = -2.0; b <= 2.0; b += 1.0) grid.emplace_back(g, b);
  return grid;
}

FusionConfig calibrate_pilot(const std::vector<PilotModel>& pilot, int num_classes,
                             const std::vector<std::pair<double, double>>& grid) {
  if (pilot.size() < 2) throw data_error("pilot calibration needs at least 2 models");
  if (grid.empty()) throw usage_error("empty calibration grid");

  std::vector<ZooEntry> zoo;
  std::vector<double> truths;
  for (const auto& p : pilot) {
    if (!std::isfinite(p.ground_truth)) throw data_error("missing ground truth in pilot");
    zoo.push_back({p.model_id, p.grtd, p.lbtc});
    truths.push_back(p.ground_truth);
  }

  FusionConfig best;
  double best_tau = -2.0;
  double best_dist = 0.0;
  for (const auto& [g, b] : grid) {
    FusionConfig cfg{g, b, num_classes};
    ZooScores s = fuse(zoo, cfg);
    std::vector<double> scores;
    for (const auto& f : s.fused) scores.push_back(f.fused);
    double tau = weighted_kendall_tau(scores, truths);
    double dist = (g - 1.0) * (g - 1.0) + b * b;
    bool better = tau > best_tau;
    if (tau == best_tau) {
      if (dist < best_dist) better = true;
      if (dist == best_dist && std::tie(g, b) < std::tie(best.gamma, best.beta)) better = true;
    }
    if (better) {
      best = cfg;
      best_tau = tau;
      best_dist = dist;
    }
  }
  return best;
}

}  // namespace topo
