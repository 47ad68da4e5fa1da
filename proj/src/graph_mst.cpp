#include "topo/graph_mst.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "topo/error.hpp"
#include "topo/simd/dist_kernel.hpp"

namespace topo {

namespace {

void require_points(const SampleSet& set) {
  if (set.size() < 2) throw data_error("graph construction needs at least 2 points");
  for (const auto& p : set.points) {
    if (static_cast<int>(p.features.size()) != set.feature_dim)
      throw data_error("inconsistent feature dimension in sample set");
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[static_cast<std::size_t>(ra)] = rb;
    return true;
  }
};

// Prim over an implicit complete graph. WeightFn(i, j) -> double.
template <class WeightFn>
SpanningTree prim_complete(int n, WeightFn weight) {
  SpanningTree t;
  if (n < 2) return t;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  std::vector<double> best_w(static_cast<std::size_t>(n), inf);
  std::vector<int> best_from(static_cast<std::size_t>(n), -1);
  in_tree[0] = 1;
  for (int v = 1; v < n; ++v) {
    best_w[static_cast<std::size_t>(v)] = weight(0, v);
    best_from[static_cast<std::size_t>(v)] = 0;
  }
  t.edges.reserve(static_cast<std::size_t>(n - 1));
  for (int step = 1; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (in_tree[static_cast<std::size_t>(v)]) continue;
      if (pick < 0) {
        pick = v;
        continue;
      }
      auto key = [&](int u) {
        int a = std::min(u, best_from[static_cast<std::size_t>(u)]);
        int b = std::max(u, best_from[static_cast<std::size_t>(u)]);
        return std::tuple<double, int, int>(best_w[static_cast<std::size_t>(u)], a, b);
      };
      if (key(v) < key(pick)) pick = v;
    }
    int from = best_from[static_cast<std::size_t>(pick)];
    Edge e{std::min(pick, from), std::max(pick, from), best_w[static_cast<std::size_t>(pick)]};
    t.edges.push_back(e);
    t.total_weight += e.w;
    in_tree[static_cast<std::size_t>(pick)] = 1;
    for (int v = 0; v < n; ++v) {
      if (in_tree[static_cast<std::size_t>(v)]) continue;
      double w = weight(pick, v);
      auto cand = std::tuple<double, int, int>(w, std::min(pick, v), std::max(pick, v));
      int bf = best_from[static_cast<std::size_t>(v)];
      auto cur = std::tuple<double, int, int>(best_w[static_cast<std::size_t>(v)],
                                              std::min(bf, v), std::max(bf, v));
      if (cand < cur) {
        best_w[static_cast<std::size_t>(v)] = w;
        best_from[static_cast<std::size_t>(v)] = pick;
      }
    }
  }
  std::sort(t.edges.begin(), t.edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  return t;
}

}  // namespace

EdgeList build_native_graph(const SampleSet& set) {
  require_points(set);
  const int n = static_cast<int>(set.size());
  const auto dim = static_cast<std::size_t>(set.feature_dim);
  EdgeList g;
  g.n = n;
  g.kind = EdgeList::Kind::Native;
  g.edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double w = std::sqrt(simd::squared_distance(
          set.points[static_cast<std::size_t>(i)].features.data(),
          set.points[static_cast<std::size_t>(j)].features.data(), dim));
      g.edges.push_back({i, j, w});
    }
  }
  return g;
}

EdgeList build_semantic_graph(const SampleSet& set, double lambda) {
  require_points(set);
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw usage_error("semantic graph lambda must be finite and > 0");
  const int n = static_cast<int>(set.size());
  const auto dim = static_cast<std::size_t>(set.feature_dim);
  EdgeList g;
  g.n = n;
  g.kind = EdgeList::Kind::Semantic;
  g.lambda = lambda;
  g.edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = set.points[static_cast<std::size_t>(i)];
      const auto& b = set.points[static_cast<std::size_t>(j)];
      double w = 0.0;
      if (a.label != b.label) {
        w = std::min(std::sqrt(simd::squared_distance(a.features.data(), b.features.data(), dim)),
                     lambda);
      }
      g.edges.push_back({i, j, w});
    }
  }
  return g;
}

SpanningTree minimum_spanning_tree(const EdgeList& g) {
  for (const auto& e : g.edges) {
    if (!(e.i < e.j) || e.i < 0 || e.j >= g.n)
      throw data_error("edge list not in canonical undirected form");
    if (!(e.w >= 0.0) || !std::isfinite(e.w)) throw data_error("edge weight must be finite and >= 0");
  }
  std::vector<Edge> sorted = g.edges;
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.w, a.i, a.j) < std::tie(b.w, b.i, b.j);
  });
  SpanningTree t;
  UnionFind uf(g.n);
  for (const auto& e : sorted) {
    if (uf.unite(e.i, e.j)) {
      t.edges.push_back(e);
      t.total_weight += e.w;
      if (static_cast<int>(t.edges.size()) == g.n - 1) break;
    }
  }
  if (static_cast<int>(t.edges.size()) != std::max(g.n - 1, 0))
    throw data_error("graph is disconnected: no spanning tree exists");
  std::sort(t.edges.begin(), t.edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  return t;
}

DistanceMatrix::DistanceMatrix(const SampleSet& set) : n_(static_cast<int>(set.size())) {
  require_points(set);
  const auto dim = static_cast<std::size_t>(set.feature_dim);
  const auto ns = static_cast<std::size_t>(n_);
  d_.assign(ns * ns, 0.0);
  labels_.resize(ns);
  // Points flattened once so the kernel reads contiguous rows.
  std::vector<double> flat(ns * dim);
  for (std::size_t i = 0; i < ns; ++i) {
    labels_[i] = set.points[i].label;
    std::copy(set.points[i].features.begin(), set.points[i].features.end(),
              flat.begin() + static_cast<std::ptrdiff_t>(i * dim));
  }
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = i + 1; j < ns; ++j) {
      double w = std::sqrt(
          simd::squared_distance(flat.data() + i * dim, flat.data() + j * dim, dim));
      d_[i * ns + j] = w;
      d_[j * ns + i] = w;
    }
  }
}

SpanningTree mst_dense_native(const DistanceMatrix& m) {
  if (m.n() < 2) throw data_error("MST needs at least 2 points");
  return prim_complete(m.n(), [&m](int i, int j) { return m(i, j); });
}

SpanningTree mst_dense_semantic(const DistanceMatrix& m, double lambda) {
  if (m.n() < 2) throw data_error("MST needs at least 2 points");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw usage_error("semantic graph lambda must be finite and > 0");
  const auto& labels = m.labels();
  return prim_complete(m.n(), [&](int i, int j) {
    if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)]) return 0.0;
    return std::min(m(i, j), lambda);
  });
}

double median_interclass_distance(const DistanceMatrix& m) {
  const auto& labels = m.labels();
  std::vector<double> dists;
  for (int i = 0; i < m.n(); ++i) {
    for (int j = i + 1; j < m.n(); ++j) {
      if (labels[static_cast<std::size_t>(i)] != labels[static_cast<std::size_t>(j)]) {
        dists.push_back(m(i, j));
      }
    }
  }
  if (dists.empty()) throw data_error("no inter-class pair exists: cannot resolve lambda");
  std::sort(dists.begin(), dists.end());
  std::size_t n = dists.size();
  if (n % 2 == 1) return dists[n / 2];
  return 0.5 * (dists[n / 2 - 1] + dists[n / 2]);
}

void dump_tree(std::ostream& out, const SpanningTree& t) {
  for (const auto& e : t.edges) {
    out << e.i << " " << e.j << " " << e.w << "\n";
  }
}

}  // namespace topo
