#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "topo/error.hpp"
#include "topo/rank_eval.hpp"
#include "topo/rng.hpp"

#include "oracles.hpp"

using namespace topo;

TEST_CASE("perfect and reversed orderings hit the bounds") {
  std::vector<double> truth{0.1, 0.4, 0.7, 0.9};
  CHECK(weighted_kendall_tau(truth, truth) == doctest::Approx(1.0).epsilon(1e-12));
  std::vector<double> rev{0.9, 0.7, 0.4, 0.1};
  CHECK(weighted_kendall_tau(rev, truth) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(kendall_tau(truth, truth) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kendall_tau(rev, truth) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("oracle equivalence over all permutations up to n = 6") {
  for (int n = 2; n <= 6; ++n) {
    std::vector<double> truth;
    for (int i = 0; i < n; ++i) truth.push_back(0.1 * (i + 1));
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
      std::vector<double> scores;
      for (int p : perm) scores.push_back(static_cast<double>(p));
      double got = weighted_kendall_tau(scores, truth);
      double want = oracles::weighted_tau_oracle(scores, truth);
      CHECK(got == doctest::Approx(want).epsilon(1e-12));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("a swap at the top costs more than a swap at the bottom") {
  std::vector<double> truth{0.9, 0.8, 0.7, 0.6, 0.5};
  std::vector<double> top_swap{0.8, 0.9, 0.7, 0.6, 0.5};     // ranks 0 and 1 swapped
  std::vector<double> bottom_swap{0.9, 0.8, 0.7, 0.5, 0.6};  // ranks 3 and 4 swapped
  double tau_top = weighted_kendall_tau(top_swap, truth);
  double tau_bottom = weighted_kendall_tau(bottom_swap, truth);
  CHECK(tau_top < tau_bottom);
  // Plain tau cannot tell them apart.
  CHECK(kendall_tau(top_swap, truth) == doctest::Approx(kendall_tau(bottom_swap, truth)));
}

TEST_CASE("antisymmetry under score negation") {
  SplitMix64 rng(321);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 3 + static_cast<int>(rng.bounded(6));
    std::vector<double> scores, truth;
    for (int i = 0; i < n; ++i) {
      scores.push_back(rng.normal());
      truth.push_back(rng.normal());
    }
    double tau = weighted_kendall_tau(scores, truth);
    auto neg = scores;
    for (auto& s : neg) s = -s;
    CHECK(weighted_kendall_tau(neg, truth) == doctest::Approx(-tau).epsilon(1e-12));
  }
}

TEST_CASE("invariance under strictly monotone score transforms") {
  SplitMix64 rng(17);
  std::vector<double> scores, truth;
  for (int i = 0; i < 8; ++i) {
    scores.push_back(rng.normal());
    truth.push_back(rng.normal());
  }
  double ref = weighted_kendall_tau(scores, truth);
  auto t1 = scores;
  for (auto& s : t1) s = std::exp(s);
  CHECK(weighted_kendall_tau(t1, truth) == doctest::Approx(ref).epsilon(1e-12));
  auto t2 = scores;
  for (auto& s : t2) s = 3.0 * s + 100.0;
  CHECK(weighted_kendall_tau(t2, truth) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("tied pairs are excluded from both sides of the ratio") {
  // Scores tie models 0 and 1; only pairs (0,2) and (1,2) count, and both
  // are concordant.
  std::vector<double> truth{0.3, 0.5, 0.9};
  std::vector<double> scores{1.0, 1.0, 2.0};
  CHECK(weighted_kendall_tau(scores, truth) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("all scores tied gives zero") {
  CHECK(weighted_kendall_tau({5.0, 5.0, 5.0}, {0.1, 0.2, 0.3}) == 0.0);
}

TEST_CASE("all truths equal is undefined") {
  CHECK_THROWS_AS(weighted_kendall_tau({1.0, 2.0, 3.0}, {0.5, 0.5, 0.5}), Error);
}

TEST_CASE("mismatched or degenerate inputs are rejected") {
  CHECK_THROWS_AS(weighted_kendall_tau({1.0}, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(weighted_kendall_tau({1.0}, {1.0}), Error);
}

TEST_CASE("evaluate_zoo joins scores with truths and reports both taus") {
  ZooScores zoo;
  zoo.fused = {{"a", 0.9}, {"b", 0.1}, {"c", 0.5}};
  std::map<std::string, double> truths{{"a", 0.8}, {"b", 0.2}, {"c", 0.5}};
  RankingReport rep = evaluate_zoo(zoo, truths);
  REQUIRE(rep.pairs.size() == 3);
  CHECK(rep.tau_weighted == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.tau_plain == doctest::Approx(1.0).epsilon(1e-12));

  truths.erase("c");
  CHECK_THROWS_WITH_AS(evaluate_zoo(zoo, truths), doctest::Contains("c"), Error);
}
