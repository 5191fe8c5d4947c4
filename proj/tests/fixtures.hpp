#pragma once

#include "oracles.hpp"

#include "polydraw/face_lattice.hpp"
#include "polydraw/rubber.hpp"
#include "polydraw/tightspan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

// Shared generators for the unit tests and the acceptance run.
namespace fixture {

using namespace polydraw;

inline Metric metric_of(std::vector<std::vector<int>> rows) {
  Metric m;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    m.labels.push_back("t" + std::to_string(i + 1));
    m.d.emplace_back();
    for (int x : rows[i]) m.d.back().push_back(Scalar(x));
  }
  m.validate();
  return m;
}

inline Positions regular_polygon(std::size_t k) {
  Positions out;
  for (std::size_t i = 0; i < k; ++i) {
    double t = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
    out.push_back({std::cos(t), std::sin(t)});
  }
  return out;
}

inline std::size_t crossings(const Graph& g, const Positions& pos) {
  std::size_t count = 0;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto& e = edges[i];
      const auto& f = edges[j];
      if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) continue;
      auto p = [&](std::size_t v) { return std::array<double, 2>{pos[v][0], pos[v][1]}; };
      count += oracle::segments_cross(p(e.u), p(e.v), p(f.u), p(f.v));
    }
  }
  return count;
}

// Hull of random integer points in 3D: its graph is planar and 3-connected.
inline Graph random_polytope_graph(std::mt19937_64& rng, std::size_t points) {
  std::uniform_int_distribution<int> coord(-20, 20);
  std::vector<Vector> pts;
  for (std::size_t i = 0; i < points; ++i) pts.push_back({Scalar(coord(rng)), Scalar(coord(rng)), Scalar(coord(rng))});
  return graph_of(convex_hull(pts));
}

struct WeightedTree {
  Graph graph;
  std::vector<int> weights;  // per edge
  std::vector<std::size_t> taxa;
};

// Random tree whose taxa are all leaves plus some internal nodes, at most 7.
inline WeightedTree random_tree(std::mt19937_64& rng) {
  while (true) {
    std::size_t n = 2 + rng() % 8;
    WeightedTree t{Graph(n), {}, {}};
    for (std::size_t v = 1; v < n; ++v) t.graph.add_edge(rng() % v, v);
    for (std::size_t i = 0; i < t.graph.num_edges(); ++i) t.weights.push_back(1 + static_cast<int>(rng() % 5));
    for (std::size_t v = 0; v < n; ++v) {
      if (t.graph.degree(v) == 1 || rng() % 2) t.taxa.push_back(v);
    }
    if (t.taxa.size() <= 7) return t;
  }
}

inline std::vector<std::vector<int>> tree_distances(const WeightedTree& t) {
  const std::size_t n = t.graph.num_nodes();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    d[s][s] = 0;
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (auto w : t.graph.neighbors(v)) {
        if (d[s][w] >= 0) continue;
        d[s][w] = d[s][v] + t.weights[*t.graph.edge_index(v, w)];
        stack.push_back(w);
      }
    }
  }
  return d;
}

inline Metric tree_metric(const WeightedTree& t) {
  auto all = tree_distances(t);
  std::vector<std::vector<int>> d;
  for (auto a : t.taxa) {
    d.emplace_back();
    for (auto b : t.taxa) d.back().push_back(all[a][b]);
  }
  return metric_of(d);
}

// The tree with non-taxon degree-2 nodes suppressed. Node colors are the
// taxon index + 1, or 0 for branch points that are not taxa.
struct Suppressed {
  Graph graph;
  std::vector<int> colors;
  std::vector<int> lengths;  // per edge
};

inline Suppressed suppress(const WeightedTree& t) {
  const Graph& g = t.graph;
  auto is_taxon = [&](std::size_t v) { return std::find(t.taxa.begin(), t.taxa.end(), v) != t.taxa.end(); };
  auto kept = [&](std::size_t v) { return is_taxon(v) || g.degree(v) != 2; };
  Suppressed out;
  std::map<std::size_t, std::size_t> index;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    if (!kept(v)) continue;
    index[v] = out.graph.add_node({std::to_string(v), NodeKind::generic});
    auto pos = std::find(t.taxa.begin(), t.taxa.end(), v);
    out.colors.push_back(pos == t.taxa.end() ? 0 : static_cast<int>(pos - t.taxa.begin()) + 1);
  }
  for (const auto& [s, is] : index) {
    for (auto first : g.neighbors(s)) {
      std::size_t prev = s, cur = first;
      int length = t.weights[*g.edge_index(s, first)];
      while (!kept(cur)) {
        std::size_t next = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1] : g.neighbors(cur)[0];
        length += t.weights[*g.edge_index(cur, next)];
        prev = cur;
        cur = next;
      }
      if (s < cur) {
        out.graph.add_edge(is, index[cur]);
        out.lengths.push_back(length);
      }
    }
  }
  return out;
}

}  // namespace fixture
