#include <doctest.h>

#include <algorithm>

#include "topo/error.hpp"
#include "topo/grtd.hpp"
#include "topo/graph_mst.hpp"
#include "topo/rng.hpp"

#include "oracles.hpp"

using namespace topo;

namespace {

GrtdResult score_single(const SampleSet& set, const GrtdConfig& cfg) {
  return grtd_score({{StageRole{StageRole::Kind::Decoder, 0}, set}}, cfg);
}

}  // namespace

TEST_CASE("closed-form instance: [0,1,10] labels [A,A,B] lambda 4 scores -6") {
  auto set = oracles::make_set({{0.0}, {1.0}, {10.0}}, {0, 0, 1}, 2);
  GrtdConfig cfg;
  cfg.lambda = LambdaMode::fixed(4.0);
  GrtdResult r = score_single(set, cfg);
  // Brute-force both K3 MSTs as the oracle.
  DistanceMatrix m(set);
  double feat = oracles::mst_bruteforce(3, [&m](int i, int j) { return m(i, j); });
  double sem = oracles::mst_bruteforce(3, [&](int i, int j) {
    int yi = i == 2 ? 1 : 0, yj = j == 2 ? 1 : 0;
    return yi == yj ? 0.0 : std::min(m(i, j), 4.0);
  });
  CHECK(feat == doctest::Approx(10.0));
  CHECK(sem == doctest::Approx(4.0));
  CHECK(r.score == doctest::Approx(-(std::abs(feat - sem))).epsilon(1e-12));
  CHECK(r.score == doctest::Approx(-6.0).epsilon(1e-12));
  CHECK(r.per_stage[0].feat_weight == doctest::Approx(10.0));
  CHECK(r.per_stage[0].sem_weight == doctest::Approx(4.0));
}

TEST_CASE("identical single-class features score exactly zero") {
  auto set = oracles::make_set({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}}, {0, 0, 0}, 1);
  GrtdConfig cfg;
  cfg.lambda = LambdaMode::fixed(2.0);
  GrtdResult r = score_single(set, cfg);
  CHECK(r.score == 0.0);
  CHECK(r.per_stage[0].feat_weight == 0.0);
  CHECK(r.per_stage[0].sem_weight == 0.0);
}

TEST_CASE("two stages average their divergences") {
  // Stage A diverges by 2, stage B by 4 -> mean -3.
  auto a = oracles::make_set({{0.0}, {2.0}}, {0, 1}, 2);   // feat 2, sem min(2, lambda)
  auto b = oracles::make_set({{0.0}, {4.0}}, {0, 1}, 2);   // feat 4, sem min(4, lambda)
  GrtdConfig cfg;
  cfg.lambda = LambdaMode::fixed(1e-9);
  // lambda tiny: sem weights ~0, divergences ~ -2 and -4.
  GrtdResult r = grtd_score({{StageRole{StageRole::Kind::Decoder, 0}, a},
                             {StageRole{StageRole::Kind::Decoder, 1}, b}},
                            cfg);
  CHECK(r.score == doctest::Approx(-3.0).epsilon(1e-6));
  REQUIRE(r.per_stage.size() == 2);
  CHECK(r.per_stage[0].stage.index == 0);
  CHECK(r.per_stage[1].stage.index == 1);
}

TEST_CASE("score is never positive and divergences are non-positive") {
  SplitMix64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 4 + static_cast<int>(rng.bounded(8));
    std::vector<std::vector<double>> feats;
    std::vector<int> labels;
    for (int i = 0; i < n; ++i) {
      feats.push_back({rng.normal(), rng.normal(), rng.normal()});
      labels.push_back(static_cast<int>(rng.bounded(2)));
    }
    if (std::count(labels.begin(), labels.end(), 1) == 0) labels[0] = 1;
    if (std::count(labels.begin(), labels.end(), 0) == 0) labels[1] = 0;
    auto set = oracles::make_set(feats, labels, 2);
    GrtdResult r = score_single(set, GrtdConfig{});
    CHECK(r.score <= 0.0);
    for (const auto& s : r.per_stage) CHECK(s.divergence <= 0.0);
  }
}

TEST_CASE("permutation invariance of the score") {
  SplitMix64 rng(77);
  std::vector<std::vector<double>> feats;
  std::vector<int> labels;
  for (int i = 0; i < 12; ++i) {
    feats.push_back({rng.normal(), rng.normal()});
    labels.push_back(i % 3);
  }
  auto set = oracles::make_set(feats, labels, 3);
  GrtdConfig cfg;
  cfg.lambda = LambdaMode::fixed(1.5);
  double ref = score_single(set, cfg).score;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::size_t> perm(feats.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<std::vector<double>> pf;
    std::vector<int> pl;
    for (std::size_t i : perm) {
      pf.push_back(feats[i]);
      pl.push_back(labels[i]);
    }
    auto pset = oracles::make_set(pf, pl, 3);
    CHECK(score_single(pset, cfg).score == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("collapsed per-class clusters: divergence has the closed form") {
  // Every within-class distance is 0, inter-class distance 10 >= lambda 3:
  // W_feat = (|C|-1) * 10, W_sem = (|C|-1) * lambda.
  std::vector<std::vector<double>> feats;
  std::vector<int> labels;
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 4; ++i) {
      feats.push_back({10.0 * c, 0.0});
      labels.push_back(c);
    }
  auto set = oracles::make_set(feats, labels, 3);
  GrtdConfig cfg;
  cfg.lambda = LambdaMode::fixed(3.0);
  GrtdResult r = score_single(set, cfg);
  CHECK(r.per_stage[0].feat_weight == doctest::Approx(20.0));
  CHECK(r.per_stage[0].sem_weight == doctest::Approx(6.0));
  CHECK(r.score == doctest::Approx(-(20.0 - 2 * 3.0)).epsilon(1e-12));
}

TEST_CASE("label shuffling does not improve the score of a clustered set") {
  SplitMix64 rng(3141);
  // Two tight, well-separated clusters.
  std::vector<std::vector<double>> feats;
  std::vector<int> labels;
  for (int i = 0; i < 10; ++i) {
    feats.push_back({0.05 * rng.normal(), 0.05 * rng.normal()});
    labels.push_back(0);
  }
  for (int i = 0; i < 10; ++i) {
    feats.push_back({8.0 + 0.05 * rng.normal(), 0.05 * rng.normal()});
    labels.push_back(1);
  }
  GrtdConfig cfg;
  cfg.lambda = LambdaMode::fixed(2.0);
  double aligned = score_single(oracles::make_set(feats, labels, 2), cfg).score;
  double shuffled_sum = 0.0;
  int trials = 50;
  for (int t = 0; t < trials; ++t) {
    auto sl = labels;
    rng.shuffle(sl);
    shuffled_sum += score_single(oracles::make_set(feats, sl, 2), cfg).score;
  }
  CHECK(aligned >= shuffled_sum / trials);
}

TEST_CASE("median lambda fails without any inter-class pair") {
  auto set = oracles::make_set({{0.0}, {1.0}, {2.0}}, {0, 0, 0}, 1);
  CHECK_THROWS_AS(score_single(set, GrtdConfig{}), Error);
}

TEST_CASE("empty stage list is rejected") {
  CHECK_THROWS_AS(grtd_score({}, GrtdConfig{}), Error);
}
