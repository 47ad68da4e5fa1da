#include <doctest.h>

#include <cmath>
#include <limits>

#include "topo/core_types.hpp"

#include "oracles.hpp"

using namespace topo;

TEST_CASE("valid sample set passes") {
  auto set = oracles::make_set({{1, 2, 3, 4}, {0, 0, 0, 0}, {5, 5, 5, 5}}, {0, 1, 1}, 2);
  CHECK(validate_sample_set(set).ok());
}

TEST_CASE("NaN feature is reported with point index") {
  auto set = oracles::make_set({{1, 2}, {3, std::nan("")}, {4, 5}}, {0, 0, 0}, 1);
  auto issue = validate_sample_set(set);
  CHECK(issue.kind == ValidationIssue::Kind::NonFiniteFeature);
  CHECK(issue.point_index == 1);
}

TEST_CASE("infinite feature is also non-finite") {
  auto set = oracles::make_set({{std::numeric_limits<double>::infinity()}}, {0}, 1);
  CHECK(validate_sample_set(set).kind == ValidationIssue::Kind::NonFiniteFeature);
}

TEST_CASE("label out of range") {
  auto set = oracles::make_set({{1.0}, {2.0}}, {0, 5}, 3);
  auto issue = validate_sample_set(set);
  CHECK(issue.kind == ValidationIssue::Kind::LabelOutOfRange);
  CHECK(issue.point_index == 1);
}

TEST_CASE("dimension mismatch") {
  auto set = oracles::make_set({{1.0, 2.0}}, {0}, 1);
  set.points[0].features.push_back(9.0);
  CHECK(validate_sample_set(set).kind == ValidationIssue::Kind::DimensionMismatch);
}

TEST_CASE("validation is total over odd but finite inputs") {
  SampleSet empty;
  empty.feature_dim = 3;
  CHECK(validate_sample_set(empty).ok());

  auto negative_label = oracles::make_set({{0.0}}, {0}, 1);
  negative_label.points[0].label = -1;
  CHECK(validate_sample_set(negative_label).kind == ValidationIssue::Kind::LabelOutOfRange);
}
