#pragma once

#include "polydraw/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polydraw {

enum class NodeKind { primal, dual, taxon, generic };

std::string to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& name);

struct Node {
  std::string label;
  NodeKind kind = NodeKind::generic;
};

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;  // u < v
  std::optional<double> length;
};

/// Simple undirected graph with labelled nodes and optional desired edge lengths.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n, NodeKind kind = NodeKind::generic);

  std::size_t add_node(Node node);
  /// Adds {u, v}; returns false if the edge already exists. Loops throw.
  bool add_edge(std::size_t u, std::size_t v, std::optional<double> length = std::nullopt);

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::vector<Node>& nodes() { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<Edge>& edges() { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }
  bool has_edge(std::size_t u, std::size_t v) const;
  std::optional<std::size_t> edge_index(std::size_t u, std::size_t v) const;

  bool is_connected() const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// True iff removing any k-1 nodes leaves the graph connected. Requires
/// more than k nodes. Uses unit-capacity max-flow between a pivot set of k
/// nodes and every non-adjacent node.
bool k_connected(const Graph& g, std::size_t k);

/// Number of internally node-disjoint paths between non-adjacent s and t.
std::size_t local_connectivity(const Graph& g, std::size_t s, std::size_t t, std::size_t cap);

/// An isomorphism mapping nodes of `a` onto nodes of `b`, if one exists.
/// `colors_a`/`colors_b` (optional) constrain which nodes may correspond.
std::optional<std::vector<std::size_t>> find_isomorphism(const Graph& a, const Graph& b,
                                                         const std::vector<int>* colors_a = nullptr,
                                                         const std::vector<int>* colors_b = nullptr);

bool isomorphic(const Graph& a, const Graph& b);

/// Longest path along which `objective` strictly increases at every step
/// (node sequence). Objectives are compared exactly.
std::vector<std::size_t> longest_ascending_path(const Graph& g, const std::vector<Scalar>& objective);

}  // namespace polydraw
