#pragma once

#include <ostream>
#include <vector>

#include "topo/core_types.hpp"

namespace topo {

struct Edge {
  int i = 0;  // i < j, canonical undirected form
  int j = 0;
  double w = 0.0;
};

struct EdgeList {
  enum class Kind { Native, Semantic };
  int n = 0;
  std::vector<Edge> edges;
  Kind kind = Kind::Native;
  double lambda = 0.0;  // only meaningful for Kind::Semantic
};

struct SpanningTree {
  std::vector<Edge> edges;  // exactly n - 1 entries
  double total_weight = 0.0;
};

// Complete graph, w_ij = Euclidean distance between feature vectors.
// Distances are accumulated in f64 in the fixed lane order documented in
// simd/dist_kernel.hpp.
EdgeList build_native_graph(const SampleSet& set);

// Complete graph, w_ij = 0 for same-class pairs, min(distance, lambda)
// otherwise.
EdgeList build_semantic_graph(const SampleSet& set, double lambda);

// Exact MST via Kruskal with union-find. Edges are totally ordered by
// (w, i, j) with bitwise weight comparison, so the returned edge set is the
// unique MST under that order: among equal-weight edges the smaller (i, j)
// pair wins.
SpanningTree minimum_spanning_tree(const EdgeList& g);

// Dense path for complete graphs: a precomputed distance matrix feeds an
// implicit-edge Prim, O(n) extra memory, no materialized edge list. Same
// (w, i, j) total order as the Kruskal path, so identical trees.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const SampleSet& set);
  int n() const { return n_; }
  double operator()(int i, int j) const {
    return d_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
              static_cast<std::size_t>(j)];
  }
  const std::vector<int>& labels() const { return labels_; }

 private:
  int n_;
  std::vector<double> d_;
  std::vector<int> labels_;
};

SpanningTree mst_dense_native(const DistanceMatrix& m);
SpanningTree mst_dense_semantic(const DistanceMatrix& m, double lambda);

// Median Euclidean distance over all inter-class pairs (even count:
// midpoint average). Throws when no inter-class pair exists.
double median_interclass_distance(const DistanceMatrix& m);

// Debug dump: one "i j w" triple per line.
void dump_tree(std::ostream& out, const SpanningTree& t);

}  // namespace topo
